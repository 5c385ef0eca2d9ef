# Copyright 2026 The rationale-bench Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Grep and line-count oracle for the bundled mini-corpus.

Noun counts come from regular expressions over the raw text with the plural
forms spelled out by hand. Candidate boxes per record are listed by hand from
reading the triplets and the annotation file. Nothing here imports the
library under test.
"""

import json
import re
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[2] / "data" / "mini"

FORMS = {
    "beach": ["beach", "beaches"], "boy": ["boy", "boys"], "car": ["car", "cars"],
    "child": ["child", "children"], "clock": ["clock", "clocks"], "dog": ["dog", "dogs"],
    "field": ["field", "fields"], "frisbee": ["frisbee", "frisbees"],
    "girl": ["girl", "girls"], "grass": ["grass"], "horse": ["horse", "horses"],
    "kite": ["kite", "kites"], "man": ["man", "men"], "park": ["park", "parks"],
    "person": ["person", "persons", "people"], "pizza": ["pizza", "pizzas"],
    "rain": ["rain", "rains"], "sheep": ["sheep"], "sky": ["sky", "skies"],
    "street": ["street", "streets"], "suit": ["suit", "suits"],
    "surfboard": ["surfboard", "surfboards"], "table": ["table", "tables"],
    "tie": ["tie", "ties"], "umbrella": ["umbrella", "umbrellas"], "wave": ["wave", "waves"],
    "woman": ["woman", "women"],
}

# Annotation ids matched for each record with min count 2 (count > 2):
# frequent mapped nouns are clock dog frisbee horse kite man person pizza
# sheep table tie woman.
CANDIDATES = {
    "t01": [1, 2, 3], "t02": [2, 3], "t03": [5, 6, 7], "t04": [5, 6, 7],
    "t05": [9], "t06": [9], "t07": [12], "t08": [12], "t09": [14, 15],
    "t10": [15], "t11": [16, 17, 18, 19], "t12": [16, 17, 18, 19],
    "t13": [20, 21], "t14": [20], "t15": [22], "t16": [], "t17": [24],
    "t18": [24], "t20": [],
}


def noun_counts():
    text = []
    for line in (ROOT / "triplets.jsonl").read_text().splitlines():
        rec = json.loads(line)
        text.append(rec["question"])
        text.extend(a["text"] for a in rec["answers"])
        text.append(rec["explanation"])
    blob = "\n".join(text).lower()
    counts = {}
    for noun, forms in FORMS.items():
        n = sum(len(re.findall(r"(?<![a-z'-])" + f + r"(?![a-z'-])", blob)) for f in forms)
        if n:
            counts[noun] = n
    return counts


def final_stats():
    images = {}
    for line in (ROOT / "triplets.jsonl").read_text().splitlines():
        rec = json.loads(line)
        images[rec["id"]] = rec["image_id"]
    version = {k: 0 for k in CANDIDATES}
    final = {}
    for line in (ROOT / "decisions.jsonl").read_text().splitlines():
        d = json.loads(line)
        if d["id"] not in version or d["version"] != version[d["id"]]:
            continue
        if any(i >= len(CANDIDATES[d["id"]]) for i in d["removed"]):
            continue
        if any(b["x"] + b["w"] > 641 or b["y"] + b["h"] > 481 for b in d["added"]):
            continue
        version[d["id"]] += 1
        final[d["id"]] = d
    accepted = [k for k, d in final.items() if d["status"] == "accepted"]
    boxes = sum(len(CANDIDATES[k]) - len(set(final[k]["removed"])) + len(final[k]["added"])
                for k in accepted)
    return {
        "num_images": len({images[k] for k in accepted}),
        "num_qa_pairs": len(accepted),
        "num_textual_rationales": len(accepted),
        "num_visual_rationales": boxes,
        "queue_lines": len(CANDIDATES),
        "applied_decisions": sum(version.values()),
        "versions": version,
    }


if __name__ == "__main__":
    json.dump({"noun_counts": noun_counts(), "final": final_stats()}, sys.stdout, indent=1)
    print()
