// Copyright 2026 The rationale-bench Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RBENCH_TESTS_SUPPORT_TEXT_ORACLE_VALUES_H_
#define RBENCH_TESTS_SUPPORT_TEXT_ORACLE_VALUES_H_

#include <array>
#include <string_view>

namespace rbench::testing {

// Frozen output of tests/oracles/text_oracle.py for the mixed pairs of
// tests/fixtures/text/pairs50.jsonl.
struct MixedOracle {
  std::string_view id;
  double bleu4;
  double bleu4_smoothed;
  double rouge_l;
  double cider_in_corpus;
  double meteor;
};

inline constexpr std::array<MixedOracle, 15> kMixedOracle = {{
    {"m01", 0.0, 0.48549177170732344, 0.8333333333333334, 3.7900562395172166, 0.8066666666666668},
    {"m02", 0.0, 0.2310997417025822, 0.3034825870646766, 1.1864650808894608, 0.36231884057971014},
    {"m03", 0.0, 0.3078921402430011, 0.5366568914956013, 1.9134930638587069, 0.534957627118644},
    {"m04", 0.0, 0.5081327481546147, 0.8333333333333334, 4.555944685365424, 0.9375},
    {"m05", 0.0, 0.36614752383039256, 0.7155425219941348, 2.385742747833435, 0.8203389830508474},
    {"m06", 0.0, 0.0, 0.0, 0.0, 0.08620689655172413},
    {"m07", 0.0, 0.3308516361499261, 0.3577712609970674, 2.0527673470583494, 0.534957627118644},
    {"m08", 0.0, 0.0, 0.0, 0.0, 0.5324074074074074},
    {"m09", 0.0, 0.36787944117144233, 0.6288659793814433, 3.0836437612588674, 0.4934210526315789},
    {"m10", 0.0, 0.36614752383039256, 0.7155425219941348, 2.735941087489715, 0.635593220338983},
    {"m11", 0.0, 0.0, 0.0, 0.0, 0.5},
    {"m12", 0.0, 0.29642151188002913, 0.47843137254901963, 1.3338460463995496, 0.5324074074074074},
    {"m13", 0.36787944117144233, 0.36787944117144233, 0.6288659793814433, 6.08711456762139,
     0.522203947368421},
    {"m14", 0.0, 0.4854917717073234, 0.3333333333333333, 0.6328881839962723, 0.625},
    {"m15", 0.0, 0.23394743548827707, 0.3577712609970674, 0.9660820343883253,
     0.25423728813559315},
}};

inline constexpr double kMixedCorpusBleu = 0.14030941707885258;
inline constexpr double kMixedCorpusBleuSmoothed = 0.17487076831811854;
inline constexpr double kCiderMeanAll50 = 4.614479696913535;

// Two-item corpus: "a cat sits on the mat" / "a cat is on the mat" and
// "a dog runs" / "the dog runs fast".
inline constexpr std::array<double, 2> kCiderTwoItem = {4.125000000000001, 2.687287392826324};

}  // namespace rbench::testing

#endif  // RBENCH_TESTS_SUPPORT_TEXT_ORACLE_VALUES_H_
