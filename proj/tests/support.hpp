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

// Helpers shared by the test binaries.

#ifndef ADGSTEGO_TESTS_SUPPORT_HPP
#define ADGSTEGO_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "adgstego/adgstego.hpp"

namespace testing_support {

using namespace adgstego;

/// Deterministic toy model over ids [0, vocab): the distribution depends on
/// the last token only and is a skewed, context-permuted power law. EOS gets
/// a noticeable share so sentences end.
class ToyModel final : public lm::LanguageModel {
 public:
  explicit ToyModel(std::size_t vocab, double skew = 1.2) : vocab_(vocab), skew_(skew) {}

  lm::ConditionalDistribution next_distribution(std::span<const TokenId> context) override {
    std::vector<TokenId> ids;
    for (TokenId id = 0; id < vocab_; ++id) {
      if (id != kPadId && id != kBosId) ids.push_back(id);
    }
    Rng rng(0x5EEDULL ^ (static_cast<std::uint64_t>(context.back()) * 0x9E3779B97F4A7C15ULL));
    portable_shuffle(std::span<TokenId>(ids), rng);
    std::vector<double> p(ids.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = 1.0 / std::pow(static_cast<double>(i + 1), skew_);
      if (ids[i] == kEosId) p[i] += 0.15 * (context.size() > 6 ? 1.0 : 0.1);
      sum += p[i];
    }
    for (double& x : p) x /= sum;
    return lm::ConditionalDistribution::from_probabilities(ids, p);
  }

 private:
  std::size_t vocab_;
  double skew_;
};

inline std::string data_path(const std::string& name) { return std::string(ADGSTEGO_DATA_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Bundled {
  std::vector<std::string> train;
  std::vector<std::string> test;
  std::unique_ptr<lm::NGramLM> model;
};

/// The bundled review corpus, preprocessed, split 9:1 and modeled with the
/// settings of data/toy.json.
inline const Bundled& bundled() {
  static const Bundled b = [] {
    Bundled out;
    corpus::PreprocessConfig pc;
    pc.line_mode = true;
    const auto sentences = corpus::preprocess(slurp(data_path("toy_reviews.txt")), pc);
    auto [train, test] = corpus::split(sentences, {9, 1}, 42);
    const auto vocab = corpus::build_vocab(train, 5);
    std::vector<corpus::Sentence> enc;
    for (const auto& s : train) enc.push_back(vocab.encode(s));
    out.model = std::make_unique<lm::NGramLM>(lm::train_ngram(enc, vocab, 3, 0.1));
    out.train = std::move(train);
    out.test = std::move(test);
    return out;
  }();
  return b;
}

inline bitio::Bits random_bits(Rng& rng, std::size_t n) {
  bitio::Bits b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = random_bit(rng);
  return b;
}

/// Random quantized distribution over `n` ids with a mix of shapes.
inline lm::ConditionalDistribution random_distribution(Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  const auto shape = uniform_below(rng, 3);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (static_cast<double>(rng() >> 11) + 0.5) / 9007199254740992.0;
    p[i] = shape == 0 ? u : shape == 1 ? std::pow(u, 6.0) : -std::log(u) * (i == 0 ? 20.0 : 1.0);
    sum += p[i];
  }
  for (double& x : p) x /= sum;
  std::vector<TokenId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<TokenId>(i + kFirstWordId);
  return lm::ConditionalDistribution::from_probabilities(ids, p);
}

}  // namespace testing_support

#endif  // ADGSTEGO_TESTS_SUPPORT_HPP
