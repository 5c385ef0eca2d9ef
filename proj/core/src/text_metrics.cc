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

#include "rbench/text_metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rbench/error.h"
#include "rbench/porter_stemmer.h"

namespace rbench {
namespace {

bool IsWordByte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

char Lower(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a')
                                : static_cast<char>(c);
}

void CheckOrder(int n) {
  if (n < 1 || n > kMaxNGramOrder) {
    throw ConfigError("n-gram order must be in [1, 4], got " +
                      std::to_string(n));
  }
}

// Largest count of each n-gram over a set of references.
std::map<NGram, int> MaxReferenceCounts(
    const std::vector<TokenSequence>& references, int n) {
  std::map<NGram, int> best;
  for (const auto& ref : references) {
    for (const auto& [gram, count] : NGrams(ref, n).counts) {
      int& slot = best[gram];
      slot = std::max(slot, count);
    }
  }
  return best;
}

std::size_t ClosestReferenceLength(const std::vector<TokenSequence>& refs,
                                   std::size_t candidate_length) {
  std::size_t best = refs.front().size();
  for (const auto& ref : refs) {
    const auto diff = [&](std::size_t len) {
      return len > candidate_length ? len - candidate_length
                                    : candidate_length - len;
    };
    const std::size_t d = diff(ref.size());
    const std::size_t best_d = diff(best);
    if (d < best_d || (d == best_d && ref.size() < best)) best = ref.size();
  }
  return best;
}

using SparseVector = std::map<NGram, double>;

double Dot(const SparseVector& a, const SparseVector& b) {
  double dot = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return dot;
}

double Norm(const SparseVector& v) {
  double sum = 0.0;
  for (const auto& [gram, value] : v) sum += value * value;
  return std::sqrt(sum);
}

}  // namespace

int NGramMultiset::Count(const NGram& gram) const {
  auto it = counts.find(gram);
  return it == counts.end() ? 0 : it->second;
}

std::size_t NGramMultiset::Total() const {
  std::size_t total = 0;
  for (const auto& [gram, count] : counts) total += count;
  return total;
}

TokenSequence Tokenize(std::string_view text) {
  TokenSequence tokens;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (IsWordByte(c)) {
      current.push_back(Lower(c));
      continue;
    }
    const bool joiner = c == '\'' || c == '-';
    if (joiner && !current.empty() && i + 1 < text.size() &&
        IsWordByte(static_cast<unsigned char>(text[i + 1]))) {
      current.push_back(static_cast<char>(c));
      continue;
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

NGramMultiset NGrams(const TokenSequence& seq, int n) {
  CheckOrder(n);
  NGramMultiset result;
  result.n = n;
  const auto order = static_cast<std::size_t>(n);
  if (seq.size() < order) return result;
  for (std::size_t i = 0; i + order <= seq.size(); ++i) {
    ++result.counts[NGram(seq.begin() + static_cast<std::ptrdiff_t>(i),
                          seq.begin() + static_cast<std::ptrdiff_t>(i + order))];
  }
  return result;
}

double BleuStats::Precision(int n) const {
  CheckOrder(n);
  const std::size_t total = totals[n - 1];
  return total == 0 ? 0.0
                    : static_cast<double>(matches[n - 1]) /
                          static_cast<double>(total);
}

BleuStats Bleu4(std::span<const TextPair> corpus, const BleuOptions& options) {
  if (corpus.empty()) throw InvalidArgument("BLEU needs a non-empty corpus");
  BleuStats stats;
  for (const auto& pair : corpus) {
    if (pair.references.empty()) {
      throw InvalidArgument("BLEU pair has no references");
    }
    stats.candidate_length += pair.candidate.size();
    stats.reference_length +=
        ClosestReferenceLength(pair.references, pair.candidate.size());
    for (int n = 1; n <= kMaxNGramOrder; ++n) {
      const auto max_ref = MaxReferenceCounts(pair.references, n);
      for (const auto& [gram, count] : NGrams(pair.candidate, n).counts) {
        auto it = max_ref.find(gram);
        const int clip = it == max_ref.end() ? 0 : it->second;
        stats.matches[n - 1] += static_cast<std::size_t>(std::min(count, clip));
        stats.totals[n - 1] += static_cast<std::size_t>(count);
      }
    }
  }
  if (stats.candidate_length == 0) return stats;
  const double c = static_cast<double>(stats.candidate_length);
  const double r = static_cast<double>(stats.reference_length);
  stats.brevity_penalty = c < r ? std::exp(1.0 - r / c) : 1.0;

  double log_sum = 0.0;
  for (int n = 1; n <= kMaxNGramOrder; ++n) {
    double m = static_cast<double>(stats.matches[n - 1]);
    double t = static_cast<double>(stats.totals[n - 1]);
    if (options.smooth && n >= 2) {
      m += 1.0;
      t += 1.0;
    }
    if (m == 0.0 || t == 0.0) return stats;
    log_sum += std::log(m / t);
  }
  stats.score = stats.brevity_penalty * std::exp(log_sum / kMaxNGramOrder);
  return stats;
}

std::size_t LcsLength(const TokenSequence& a, const TokenSequence& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double RougeL(const TokenSequence& candidate, const TokenSequence& reference,
              double beta) {
  if (!(beta > 0.0)) throw ConfigError("ROUGE-L beta must be positive");
  const std::size_t lcs = LcsLength(candidate, reference);
  if (lcs == 0) return 0.0;
  const double p = static_cast<double>(lcs) / candidate.size();
  const double r = static_cast<double>(lcs) / reference.size();
  const double b2 = beta * beta;
  return (1.0 + b2) * p * r / (r + b2 * p);
}

double RougeLMulti(const TextPair& pair, double beta) {
  double best = 0.0;
  for (const auto& ref : pair.references) {
    best = std::max(best, RougeL(pair.candidate, ref, beta));
  }
  return best;
}

CiderResult Cider(std::span<const TextPair> corpus) {
  CiderResult result;
  if (corpus.empty()) return result;
  result.degenerate_corpus = corpus.size() == 1;
  const double log_corpus = std::log(static_cast<double>(corpus.size()));

  // Document frequency of each n-gram over reference sets.
  std::map<NGram, int> doc_freq[kMaxNGramOrder];
  for (const auto& pair : corpus) {
    for (int n = 1; n <= kMaxNGramOrder; ++n) {
      std::map<NGram, int> seen;
      for (const auto& ref : pair.references) {
        for (const auto& [gram, count] : NGrams(ref, n).counts) seen[gram] = 1;
      }
      for (const auto& [gram, one] : seen) ++doc_freq[n - 1][gram];
    }
  }

  auto tfidf = [&](const TokenSequence& seq, int n) {
    SparseVector vec;
    for (const auto& [gram, count] : NGrams(seq, n).counts) {
      auto it = doc_freq[n - 1].find(gram);
      const int df = it == doc_freq[n - 1].end() ? 1 : std::max(1, it->second);
      vec.emplace(gram, count * (log_corpus - std::log(static_cast<double>(df))));
    }
    return vec;
  };

  result.per_item.reserve(corpus.size());
  for (const auto& pair : corpus) {
    double total = 0.0;
    for (int n = 1; n <= kMaxNGramOrder; ++n) {
      const SparseVector cand = tfidf(pair.candidate, n);
      const double cand_norm = Norm(cand);
      double sum = 0.0;
      for (const auto& ref : pair.references) {
        const SparseVector rvec = tfidf(ref, n);
        const double ref_norm = Norm(rvec);
        if (cand_norm > 0.0 && ref_norm > 0.0) {
          sum += Dot(cand, rvec) / (cand_norm * ref_norm);
        }
      }
      if (!pair.references.empty()) sum /= pair.references.size();
      total += sum;
    }
    result.per_item.push_back(10.0 * total / kMaxNGramOrder);
  }
  result.mean = std::accumulate(result.per_item.begin(), result.per_item.end(),
                                0.0) /
                static_cast<double>(result.per_item.size());
  return result;
}

MeteorAlignment AlignForMeteor(const TokenSequence& candidate,
                               const TokenSequence& reference) {
  MeteorAlignment align;
  align.candidate_to_reference.assign(candidate.size(), -1);
  std::vector<bool> ref_taken(reference.size(), false);

  auto run_stage = [&](const std::vector<std::string>& cand_forms,
                       const std::vector<std::string>& ref_forms) {
    for (std::size_t i = 0; i < cand_forms.size(); ++i) {
      if (align.candidate_to_reference[i] >= 0) continue;
      int anchor = -1;
      for (std::size_t k = i; k-- > 0;) {
        if (align.candidate_to_reference[k] >= 0) {
          anchor = align.candidate_to_reference[k];
          break;
        }
      }
      int pick = -1;
      int right = -1;
      int leftmost = -1;
      for (std::size_t j = 0; j < ref_forms.size(); ++j) {
        if (ref_taken[j] || ref_forms[j] != cand_forms[i]) continue;
        const int jj = static_cast<int>(j);
        if (jj == anchor + 1) {
          pick = jj;
          break;
        }
        if (jj > anchor && right < 0) right = jj;
        if (leftmost < 0) leftmost = jj;
      }
      if (pick < 0) pick = right >= 0 ? right : leftmost;
      if (pick >= 0) {
        align.candidate_to_reference[i] = pick;
        ref_taken[static_cast<std::size_t>(pick)] = true;
      }
    }
  };

  run_stage(candidate, reference);
  std::vector<std::string> cand_stems;
  std::vector<std::string> ref_stems;
  cand_stems.reserve(candidate.size());
  ref_stems.reserve(reference.size());
  for (const auto& t : candidate) cand_stems.push_back(PorterStem(t));
  for (const auto& t : reference) ref_stems.push_back(PorterStem(t));
  run_stage(cand_stems, ref_stems);

  int prev = -2;
  bool prev_matched = false;
  for (int target : align.candidate_to_reference) {
    if (target >= 0) {
      ++align.matches;
      if (!prev_matched || target != prev + 1) ++align.chunks;
      prev = target;
      prev_matched = true;
    } else {
      prev_matched = false;
    }
  }
  return align;
}

double Meteor(const TokenSequence& candidate, const TokenSequence& reference,
              const MeteorParams& params) {
  const MeteorAlignment align = AlignForMeteor(candidate, reference);
  if (align.matches == 0) return 0.0;
  const double m = static_cast<double>(align.matches);
  const double p = m / candidate.size();
  const double r = m / reference.size();
  const double f = p * r / (params.alpha * p + (1.0 - params.alpha) * r);
  const double frag = static_cast<double>(align.chunks) / m;
  const double penalty = params.gamma * std::pow(frag, params.beta);
  return f * (1.0 - penalty);
}

double MeteorMulti(const TextPair& pair, const MeteorParams& params) {
  double best = 0.0;
  for (const auto& ref : pair.references) {
    best = std::max(best, Meteor(pair.candidate, ref, params));
  }
  return best;
}

}  // namespace rbench
