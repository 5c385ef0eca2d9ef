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
#include <random>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "rbench/error.h"
#include "rbench/porter_stemmer.h"
#include "text_oracle_values.h"

namespace rbench {
namespace {

using testing::kMixedOracle;

TokenSequence T(std::string_view s) { return Tokenize(s); }

TEST(TokenizeTest, Examples) {
  EXPECT_EQ(T("A man, smiling."), (TokenSequence{"a", "man", "smiling"}));
  EXPECT_TRUE(T("").empty());
  EXPECT_EQ(T("the boy's bat!"), (TokenSequence{"the", "boy's", "bat"}));
}

TEST(TokenizeTest, EdgeCases) {
  EXPECT_EQ(T("a t-shirt - and 'quoted' words--"),
            (TokenSequence{"a", "t-shirt", "and", "quoted", "words"}));
  EXPECT_EQ(T("  MIXED\tCase\nLines "), (TokenSequence{"mixed", "case", "lines"}));
  EXPECT_EQ(T("caf\xc3\xa9 au lait"), (TokenSequence{"caf\xc3\xa9", "au", "lait"}));
  EXPECT_EQ(T("2 dogs"), (TokenSequence{"2", "dogs"}));
  EXPECT_TRUE(T("?!.,;").empty());
}

TEST(NGramsTest, Examples) {
  auto uni = NGrams({"a", "b", "a"}, 1);
  EXPECT_EQ(uni.Count({"a"}), 2);
  EXPECT_EQ(uni.Count({"b"}), 1);
  EXPECT_EQ(uni.Total(), 3u);
  EXPECT_TRUE(NGrams({"a", "b"}, 3).counts.empty());
  auto bi = NGrams({"a", "b", "a", "b"}, 2);
  EXPECT_EQ(bi.counts.size(), 2u);
  EXPECT_EQ(bi.Count({"a", "b"}), 2);
  EXPECT_EQ(bi.Count({"b", "a"}), 1);
}

TEST(NGramsTest, OrderOutOfRange) {
  EXPECT_THROW(NGrams({"a"}, 0), ConfigError);
  EXPECT_THROW(NGrams({"a"}, 5), ConfigError);
}

TEST(BleuTest, Examples) {
  std::vector<TextPair> same{{T("the quick brown fox jumps"), {T("the quick brown fox jumps")}}};
  EXPECT_DOUBLE_EQ(Bleu4(same).score, 1.0);
  std::vector<TextPair> none{{T("alpha beta gamma delta"), {T("one two three four")}}};
  EXPECT_EQ(Bleu4(none).score, 0.0);

  std::vector<TextPair> cat{{T("the cat sat on the mat"), {T("the cat is on the mat")}}};
  const BleuStats s = Bleu4(cat);
  EXPECT_EQ(s.score, 0.0);
  EXPECT_DOUBLE_EQ(s.Precision(1), 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(s.Precision(2), 3.0 / 5.0);
  EXPECT_DOUBLE_EQ(s.Precision(3), 1.0 / 4.0);
  EXPECT_DOUBLE_EQ(s.Precision(4), 0.0 / 3.0);
}

TEST(BleuTest, Errors) {
  EXPECT_THROW(Bleu4(std::vector<TextPair>{}), InvalidArgument);
  std::vector<TextPair> no_ref{{T("a b c d"), {}}};
  EXPECT_THROW(Bleu4(no_ref), InvalidArgument);
}

TEST(BleuTest, ClosestReferenceLengthAndBrevity) {
  // Candidate of length 4; references of lengths 3 and 5 tie, shorter wins.
  std::vector<TextPair> c{{T("a b c d"), {T("a b c d e"), T("a b c")}}};
  const BleuStats s = Bleu4(c);
  EXPECT_EQ(s.reference_length, 3u);
  EXPECT_DOUBLE_EQ(s.brevity_penalty, 1.0);

  std::vector<TextPair> short_c{{T("a b c d"), {T("a b c d e f g h")}}};
  EXPECT_NEAR(Bleu4(short_c).score, std::exp(1.0 - 8.0 / 4.0), 1e-12);
}

TEST(BleuTest, ClipsRepeatedCandidateTokens) {
  std::vector<TextPair> c{{T("the the the the"), {T("the cat")}}};
  EXPECT_DOUBLE_EQ(Bleu4(c).Precision(1), 0.25);
}

TEST(RougeLTest, Examples) {
  EXPECT_DOUBLE_EQ(RougeL(T("a b c"), T("a b c")), 1.0);
  EXPECT_EQ(RougeL(T("a b c"), T("x y z")), 0.0);
  EXPECT_NEAR(RougeL(T("the cat sat on the mat"), T("the cat is on the mat")), 5.0 / 6.0, 1e-12);
  EXPECT_EQ(RougeL({}, T("a")), 0.0);
  EXPECT_EQ(LcsLength(T("a b c d"), T("b d a c")), 2u);
}

TEST(RougeLTest, MultiTakesBest) {
  TextPair p{T("a b c d"), {T("x y"), T("a b c d")}};
  EXPECT_DOUBLE_EQ(RougeLMulti(p), 1.0);
}

TEST(CiderTest, IdenticalCorpusGivesTen) {
  std::vector<TextPair> c{{T("a dog runs in the park"), {T("a dog runs in the park")}},
                          {T("two cats sleep on a sofa"), {T("two cats sleep on a sofa")}}};
  const CiderResult r = Cider(c);
  for (double v : r.per_item) EXPECT_NEAR(v, 10.0, 1e-12);
  EXPECT_FALSE(r.degenerate_corpus);
}

TEST(CiderTest, DisjointGivesZero) {
  std::vector<TextPair> c{{T("alpha beta"), {T("gamma delta")}},
                          {T("one two"), {T("three four")}}};
  EXPECT_EQ(Cider(c).per_item[0], 0.0);
}

TEST(CiderTest, TwoItemHandOracle) {
  std::vector<TextPair> c{{T("a cat sits on the mat"), {T("a cat is on the mat")}},
                          {T("a dog runs"), {T("the dog runs fast")}}};
  const CiderResult r = Cider(c);
  ASSERT_EQ(r.per_item.size(), 2u);
  EXPECT_NEAR(r.per_item[0], testing::kCiderTwoItem[0], 1e-6);
  EXPECT_NEAR(r.per_item[1], testing::kCiderTwoItem[1], 1e-6);
  EXPECT_NEAR(r.mean, (testing::kCiderTwoItem[0] + testing::kCiderTwoItem[1]) / 2, 1e-6);
}

TEST(CiderTest, SingleItemCorpusIsDegenerate) {
  std::vector<TextPair> c{{T("a b c d"), {T("a b c d")}}};
  const CiderResult r = Cider(c);
  EXPECT_TRUE(r.degenerate_corpus);
  EXPECT_EQ(r.per_item[0], 0.0);
}

TEST(MeteorTest, Examples) {
  EXPECT_EQ(Meteor(T("a b c"), T("x y z")), 0.0);
  EXPECT_DOUBLE_EQ(Meteor(T("one two three four"), T("one two three four")), 0.9921875);
  EXPECT_DOUBLE_EQ(Meteor(T("the cat"), T("cat the")), 0.5);
}

TEST(MeteorTest, StemStage) {
  const MeteorAlignment a = AlignForMeteor(T("dogs running"), T("dog runs"));
  EXPECT_EQ(a.matches, 2u);
  EXPECT_EQ(a.chunks, 1u);
  EXPECT_EQ(a.candidate_to_reference, (std::vector<int>{0, 1}));
}

TEST(MeteorTest, RepeatedTokensContinueTheChunk) {
  const MeteorAlignment a = AlignForMeteor(T("the train leaves the station"),
                                           T("the train arrives at the station"));
  EXPECT_EQ(a.candidate_to_reference, (std::vector<int>{0, 1, -1, 4, 5}));
  EXPECT_EQ(a.chunks, 2u);
}

TEST(MeteorTest, MultiTakesBest) {
  TextPair p{T("a b"), {T("c d"), T("a b")}};
  EXPECT_DOUBLE_EQ(MeteorMulti(p), 1.0 - 0.5 * std::pow(0.5, 3));
}

TEST(PorterStemTest, ReferenceVocabulary) {
  const std::pair<const char*, const char*> cases[] = {
      {"caresses", "caress"}, {"ponies", "poni"}, {"ties", "ti"}, {"cats", "cat"},
      {"feed", "feed"}, {"agreed", "agre"}, {"plastered", "plaster"}, {"motoring", "motor"},
      {"sing", "sing"}, {"conflated", "conflat"}, {"troubled", "troubl"}, {"sized", "size"},
      {"hopping", "hop"}, {"tanned", "tan"}, {"falling", "fall"}, {"hissing", "hiss"},
      {"fizzed", "fizz"}, {"failing", "fail"}, {"filing", "file"}, {"happy", "happi"},
      {"relational", "relat"}, {"conditional", "condit"}, {"generalization", "gener"},
      {"electrical", "electr"}, {"adjustment", "adjust"}, {"running", "run"},
      {"is", "is"}, {"boy's", "boy's"},
  };
  for (const auto& [word, stem] : cases) EXPECT_EQ(PorterStem(word), stem) << word;
}

class TextFixtureTest : public ::testing::Test {
 protected:
  void SetUp() override { pairs_ = testing::LoadTextPairs(); }
  std::vector<testing::FixturePair> pairs_;
};

TEST_F(TextFixtureTest, FixtureShape) {
  ASSERT_EQ(pairs_.size(), 50u);
  EXPECT_EQ(std::count_if(pairs_.begin(), pairs_.end(), [](auto& p) { return p.kind == "identical"; }), 20);
  EXPECT_EQ(std::count_if(pairs_.begin(), pairs_.end(), [](auto& p) { return p.kind == "disjoint"; }), 15);
  EXPECT_EQ(std::count_if(pairs_.begin(), pairs_.end(), [](auto& p) { return p.kind == "mixed"; }), 15);
}

TEST_F(TextFixtureTest, MixedPairsMatchHandOracle) {
  std::vector<TextPair> corpus;
  for (const auto& p : pairs_) corpus.push_back({p.candidate, {p.reference}});
  const CiderResult cider = Cider(corpus);
  EXPECT_NEAR(cider.mean, testing::kCiderMeanAll50, 1e-6);

  std::vector<TextPair> mixed;
  std::size_t k = 0;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (pairs_[i].kind != "mixed") continue;
    const auto& o = kMixedOracle[k++];
    ASSERT_EQ(pairs_[i].id, o.id);
    const std::vector<TextPair> one{corpus[i]};
    EXPECT_NEAR(Bleu4(one).score, o.bleu4, 1e-6) << o.id;
    EXPECT_NEAR(Bleu4(one, {.smooth = true}).score, o.bleu4_smoothed, 1e-6) << o.id;
    EXPECT_NEAR(RougeL(pairs_[i].candidate, pairs_[i].reference), o.rouge_l, 1e-6) << o.id;
    EXPECT_NEAR(cider.per_item[i], o.cider_in_corpus, 1e-6) << o.id;
    EXPECT_NEAR(Meteor(pairs_[i].candidate, pairs_[i].reference), o.meteor, 1e-6) << o.id;
    mixed.push_back(corpus[i]);
  }
  EXPECT_NEAR(Bleu4(mixed).score, testing::kMixedCorpusBleu, 1e-6);
  EXPECT_NEAR(Bleu4(mixed, {.smooth = true}).score, testing::kMixedCorpusBleuSmoothed, 1e-6);
}

TEST(TextProperty, ReferenceOrderInvariance) {
  std::mt19937_64 rng(3);
  const std::vector<std::string> vocab{"a", "b", "c", "d", "e", "f", "g"};
  std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1);
  std::uniform_int_distribution<int> len(1, 8);
  auto sentence = [&] {
    TokenSequence s;
    for (int i = len(rng); i > 0; --i) s.push_back(vocab[word(rng)]);
    return s;
  };
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<TextPair> corpus;
    for (int i = 0; i < 4; ++i) corpus.push_back({sentence(), {sentence(), sentence(), sentence()}});
    auto shuffled = corpus;
    for (auto& p : shuffled) std::reverse(p.references.begin(), p.references.end());
    ASSERT_EQ(Bleu4(corpus).score, Bleu4(shuffled).score);
    const auto c1 = Cider(corpus);
    const auto c2 = Cider(shuffled);
    for (std::size_t i = 0; i < c1.per_item.size(); ++i) {
      ASSERT_NEAR(c1.per_item[i], c2.per_item[i], 1e-12);
      ASSERT_EQ(RougeLMulti(corpus[i]), RougeLMulti(shuffled[i]));
      ASSERT_EQ(MeteorMulti(corpus[i]), MeteorMulti(shuffled[i]));
    }
    const BleuStats s = Bleu4(corpus);
    for (int n = 1; n <= 4; ++n) ASSERT_LE(s.Precision(n), 1.0);
  }
}

TEST(TextProperty, RangesAndLcsMonotonicity) {
  std::mt19937_64 rng(4);
  const std::vector<std::string> vocab{"a", "b", "c", "d", "e"};
  std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1);
  std::uniform_int_distribution<int> len(1, 10);
  for (int trial = 0; trial < 1000; ++trial) {
    TokenSequence c;
    TokenSequence r;
    for (int i = len(rng); i > 0; --i) c.push_back(vocab[word(rng)]);
    for (int i = len(rng); i > 0; --i) r.push_back(vocab[word(rng)]);
    const double rouge = RougeL(c, r);
    const double meteor = Meteor(c, r);
    ASSERT_GE(rouge, 0.0);
    ASSERT_LE(rouge, 1.0);
    ASSERT_GE(meteor, 0.0);
    ASSERT_LE(meteor, 1.0);
    auto replaced = c;
    replaced[trial % replaced.size()] = "zzz-oov";
    ASSERT_LE(RougeL(replaced, r), rouge);
  }
}

}  // namespace
}  // namespace rbench
