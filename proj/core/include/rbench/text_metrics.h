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

#ifndef RBENCH_TEXT_METRICS_H_
#define RBENCH_TEXT_METRICS_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rbench {

// Lowercase tokens with no empty entries.
using TokenSequence = std::vector<std::string>;
using NGram = std::vector<std::string>;

struct NGramMultiset {
  int n = 1;
  std::map<NGram, int> counts;

  int Count(const NGram& gram) const;
  // Sum of all counts.
  std::size_t Total() const;
};

inline constexpr int kMaxNGramOrder = 4;

// Lowercases ASCII, splits on anything that is not a word character and drops
// the punctuation. Apostrophes and hyphens survive only between two word
// characters ("boy's", "t-shirt"). Bytes >= 0x80 count as word characters so
// UTF-8 text passes through unchanged.
TokenSequence Tokenize(std::string_view text);

// Sliding-window multiset of order n. Throws ConfigError unless 1 <= n <= 4.
NGramMultiset NGrams(const TokenSequence& seq, int n);

// A candidate together with all of its references.
struct TextPair {
  TokenSequence candidate;
  std::vector<TokenSequence> references;
};

struct BleuOptions {
  // Add-one smoothing of the modified precision for orders >= 2.
  bool smooth = false;
};

struct BleuStats {
  double score = 0.0;
  double brevity_penalty = 0.0;
  std::size_t candidate_length = 0;
  std::size_t reference_length = 0;
  // Aggregate clipped matches and candidate n-gram totals, index 0 is n = 1.
  std::size_t matches[kMaxNGramOrder] = {};
  std::size_t totals[kMaxNGramOrder] = {};

  double Precision(int n) const;
};

// Corpus-level BLEU-4 with clipped counts, uniform weights and the closest
// reference length per segment (shorter wins ties). Unsmoothed by default, so
// any zero aggregate precision gives 0. Throws InvalidArgument on an empty
// corpus or a pair without references.
BleuStats Bleu4(std::span<const TextPair> corpus, const BleuOptions& options = {});

inline constexpr double kRougeBeta = 1.2;

std::size_t LcsLength(const TokenSequence& a, const TokenSequence& b);

// LCS-based F-measure. 0 when either side is empty or nothing is shared.
double RougeL(const TokenSequence& candidate, const TokenSequence& reference,
              double beta = kRougeBeta);

// Best ROUGE-L over the references.
double RougeLMulti(const TextPair& pair, double beta = kRougeBeta);

struct CiderResult {
  // Scores on the x10 scale, one per corpus item.
  std::vector<double> per_item;
  double mean = 0.0;
  // Set when the corpus has a single item; every shared n-gram then has
  // zero idf.
  bool degenerate_corpus = false;
};

// Plain CIDEr (no length penalty, no count clipping). Document frequencies
// are taken over the reference sets of the whole corpus.
CiderResult Cider(std::span<const TextPair> corpus);

struct MeteorParams {
  double alpha = 0.9;
  double beta = 3.0;
  double gamma = 0.5;
};

struct MeteorAlignment {
  std::size_t matches = 0;
  std::size_t chunks = 0;
  // For each candidate position, the aligned reference position or -1.
  std::vector<int> candidate_to_reference;
};

// Two-stage unigram alignment: exact surface match, then Porter-stem match
// over whatever is still unaligned. Within a stage, each candidate token
// (left to right) takes the free reference token that continues the previous
// alignment when possible, otherwise the nearest free one to its right, then
// the leftmost free one.
MeteorAlignment AlignForMeteor(const TokenSequence& candidate,
                               const TokenSequence& reference);

double Meteor(const TokenSequence& candidate, const TokenSequence& reference,
              const MeteorParams& params = {});

// Best METEOR over the references.
double MeteorMulti(const TextPair& pair, const MeteorParams& params = {});

}  // namespace rbench

#endif  // RBENCH_TEXT_METRICS_H_
