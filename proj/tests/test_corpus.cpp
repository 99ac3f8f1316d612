// Copyright 2026 The adgstego Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"

namespace {

using namespace adgstego;
using corpus::PreprocessConfig;

PreprocessConfig loose() {
  PreprocessConfig c;
  c.min_tokens = 1;
  return c;
}

std::string repeat(const std::string& word, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += (i ? " " : "") + word;
  return s;
}

TEST(Preprocess, TagsCaseAndTerminals) {
  const auto out = corpus::preprocess("Great movie. <br/>BAD!!", loose());
  EXPECT_EQ(out, (std::vector<std::string>{"great movie", "bad"}));
}

TEST(Preprocess, EmptyInputIsAnError) { EXPECT_THROW(corpus::preprocess(""), EmptyCorpusError); }

TEST(Preprocess, ShortSentenceFiltered) { EXPECT_TRUE(corpus::preprocess("a b c d").empty()); }

TEST(Preprocess, LengthBounds) {
  EXPECT_EQ(corpus::preprocess(repeat("w", 5) + ".").size(), 1u);
  EXPECT_EQ(corpus::preprocess(repeat("w", 200) + ".").size(), 1u);
  EXPECT_TRUE(corpus::preprocess(repeat("w", 201) + ".").empty());
}

TEST(Preprocess, PunctuationAndApostrophes) {
  const auto out = corpus::preprocess("I've seen it, (twice) -- don't \"ask\"; it's 'fine' ok?", loose());
  EXPECT_EQ(out, (std::vector<std::string>{"i've seen it twice don't ask it's fine ok"}));
}

TEST(Preprocess, TerminalWithoutWhitespaceDoesNotSplit) {
  const auto out = corpus::preprocess("Version 2.0 is out. Yes", loose());
  EXPECT_EQ(out, (std::vector<std::string>{"version 20 is out", "yes"}));
}

TEST(Preprocess, InvalidUtf8) {
  const std::string bad = "good film \xC3\x28 here.";
  EXPECT_THROW(corpus::preprocess(bad, loose()), DecodeError);
}

TEST(Preprocess, LineModeBreaksAtNewlines) {
  PreprocessConfig c = loose();
  c.line_mode = true;
  EXPECT_EQ(corpus::preprocess("one two\nthree four", c), (std::vector<std::string>{"one two", "three four"}));
  c.line_mode = false;
  EXPECT_EQ(corpus::preprocess("one two\nthree four", c), (std::vector<std::string>{"one two three four"}));
}

TEST(Preprocess, Idempotent) {
  PreprocessConfig c;
  c.line_mode = true;
  const auto raw = testing_support::slurp(testing_support::data_path("toy_reviews.txt")).substr(0, 200000);
  const auto once = corpus::preprocess(raw, c);
  std::ostringstream joined;
  for (const auto& s : once) joined << s << '\n';
  EXPECT_EQ(corpus::preprocess(joined.str(), c), once);
}

TEST(Vocabulary, ThresholdAndReservedIds) {
  std::vector<std::string> sentences;
  for (int i = 0; i < 9; ++i) sentences.push_back("zebra");
  for (int i = 0; i < 10; ++i) sentences.push_back("the");
  const auto v = corpus::build_vocab(sentences, 10);
  EXPECT_EQ(v.id("zebra"), kUnkId);
  EXPECT_GE(v.id("the"), kFirstWordId);
  EXPECT_EQ(v.surface(kPadId), "_PAD");
  EXPECT_EQ(v.surface(kUnkId), "_UNK");
  EXPECT_EQ(v.surface(kBosId), "_BOS");
  EXPECT_EQ(v.surface(kEosId), "_EOS");
  EXPECT_EQ(v.count(kUnkId), 9u);
}

TEST(Vocabulary, HighFrequencyWordGetsId) {
  std::vector<std::string> sentences(10000, "the");
  const auto v = corpus::build_vocab(sentences);
  EXPECT_EQ(v.id("the"), kFirstWordId);
}

TEST(Vocabulary, EveryKeptWordMeetsMinCount) {
  const auto& b = testing_support::bundled();
  const auto& v = b.model->vocabulary();
  for (TokenId id = kFirstWordId; id < v.size(); ++id) EXPECT_GE(v.count(id), 5u) << v.surface(id);
}

TEST(Vocabulary, FileRoundTripAndBijection) {
  const auto v = corpus::build_vocab({"b a a c", "a b d", "a"}, 1);
  std::stringstream ss;
  v.write(ss);
  const auto back = corpus::Vocabulary::read(ss);
  EXPECT_EQ(back, v);
  EXPECT_EQ(back.hash(), v.hash());
  for (TokenId id = 0; id < v.size(); ++id) EXPECT_EQ(v.id(v.surface(id)), id);
  EXPECT_EQ(v.surface(kFirstWordId), "a");  // most frequent first
}

TEST(Vocabulary, RejectsRemappedReservedId) {
  std::stringstream ss("0\t_PAD\t0\n1\t_BOS\t0\n2\t_UNK\t0\n3\t_EOS\t0\n");
  EXPECT_THROW(corpus::Vocabulary::read(ss), FormatError);
}

TEST(Vocabulary, EncodeBracketsSentence) {
  const auto v = corpus::build_vocab({"a b", "a"}, 1);
  const auto s = v.encode("a b zzz");
  ASSERT_EQ(s.tokens.size(), 5u);
  EXPECT_EQ(s.tokens.front(), kBosId);
  EXPECT_EQ(s.tokens.back(), kEosId);
  EXPECT_EQ(s.tokens[3], kUnkId);
  EXPECT_EQ(s.content_length(), 3u);
}

TEST(Split, TenSentencesNineToOne) {
  std::vector<std::string> s;
  for (int i = 0; i < 10; ++i) s.push_back("s" + std::to_string(i));
  const auto [train, test] = corpus::split(s, {9, 1}, 42);
  EXPECT_EQ(train.size(), 9u);
  EXPECT_EQ(test.size(), 1u);
}

TEST(Split, DeterministicAndWithinOneSentence) {
  std::vector<std::string> s;
  for (int i = 0; i < 1237; ++i) s.push_back("s" + std::to_string(i));
  const auto a = corpus::split(s, {9, 1}, 7);
  const auto b = corpus::split(s, {9, 1}, 7);
  EXPECT_EQ(a, b);
  EXPECT_LE(std::abs(static_cast<double>(a.first.size()) - 1237.0 * 0.9), 1.0);
  const auto c = corpus::split(s, {9, 1}, 8);
  EXPECT_NE(a.first, c.first);
}

TEST(Split, NeedsTwoSentences) { EXPECT_THROW(corpus::split({"only"}, {9, 1}, 1), PreconditionError); }

}  // namespace
