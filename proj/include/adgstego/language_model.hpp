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

#ifndef ADGSTEGO_LANGUAGE_MODEL_HPP
#define ADGSTEGO_LANGUAGE_MODEL_HPP

#include <cinttypes>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "adgstego/common.hpp"
#include "adgstego/corpus.hpp"
#include "adgstego/distribution.hpp"

namespace adgstego::lm {

/// Source of next-token distributions. One instance serves one stream.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  /// Distribution of the token following `context`, which starts with BOS.
  virtual ConditionalDistribution next_distribution(std::span<const TokenId> context) = 0;

  /// next_distribution with `token` lowered to the minimum mass.
  virtual ConditionalDistribution next_distribution_masked(std::span<const TokenId> context, TokenId token) {
    return suppress_token(next_distribution(context), token);
  }
};

/// Word n-gram model with stupid backoff over an add-k smoothed unigram.
///
/// For a context of effective length L = min(order-1, |context|) the score
/// of w is c(h_j w)/c(h_j) · 0.4^(L-j), where h_j is the longest suffix of
/// the context (j ≤ L) followed by w in training, and
/// 0.4^L · (c(w)+k)/(N + k|V|) when no such suffix exists. Scores are
/// normalized over every token except _PAD and _BOS and then quantized.
/// The model is immutable after training.
class NGramLM {
 public:
  static constexpr double kBackoff = 0.4;
  static constexpr std::string_view kMagic = "adgstego-ngram";
  static constexpr int kFormatVersion = 1;

  static NGramLM train(const std::vector<corpus::Sentence>& sentences, corpus::Vocabulary vocab, unsigned order,
                       double k) {
    if (order < 2) throw PreconditionError("train_ngram: order must be at least 2");
    if (!(k > 0.0) || !std::isfinite(k)) throw PreconditionError("train_ngram: smoothing constant must be positive");
    if (sentences.empty()) throw EmptyCorpusError("train_ngram: empty training corpus");
    NGramLM model(std::move(vocab), order, k);
    std::map<std::vector<TokenId>, std::map<TokenId, std::uint64_t>> counts;
    for (const auto& s : sentences) {
      const auto& t = s.tokens;
      for (TokenId id : t) {
        if (id >= model.vocab_.size()) throw PreconditionError("train_ngram: token id outside the vocabulary");
      }
      for (std::size_t i = 1; i < t.size(); ++i) {
        ++model.unigram_[t[i]];
        ++model.unigram_total_;
        for (std::size_t len = 1; len < order && len <= i; ++len) {
          ++counts[std::vector<TokenId>(t.begin() + static_cast<std::ptrdiff_t>(i - len),
                                        t.begin() + static_cast<std::ptrdiff_t>(i))][t[i]];
        }
      }
    }
    if (model.unigram_total_ == 0) throw EmptyCorpusError("train_ngram: no tokens to count");
    for (auto& [ctx, next] : counts) {
      Continuations c;
      for (auto [id, n] : next) {
        c.next.emplace_back(id, n);
        c.total += n;
      }
      model.contexts_.emplace(ctx, std::move(c));
    }
    return model;
  }

  unsigned order() const noexcept { return order_; }
  double smoothing() const noexcept { return k_; }
  const corpus::Vocabulary& vocabulary() const noexcept { return vocab_; }

  /// Ids that receive probability mass, ascending.
  const std::vector<TokenId>& support() const noexcept { return support_; }

  /// Number of trailing context tokens the model looks at.
  std::size_t effective_length(std::span<const TokenId> context) const noexcept {
    return std::min<std::size_t>(order_ - 1, context.size());
  }

  /// Normalized probabilities aligned with support().
  std::vector<double> probabilities(std::span<const TokenId> context) const {
    if (context.empty() || context.front() != kBosId) {
      throw PreconditionError("next_distribution: context must start with BOS");
    }
    const std::size_t eff = effective_length(context);
    const double vocab_n = static_cast<double>(support_.size());
    const double denom = static_cast<double>(unigram_total_) + k_ * vocab_n;
    double base = 1.0;
    for (std::size_t i = 0; i < eff; ++i) base *= kBackoff;

    std::vector<double> scores(support_.size());
    for (std::size_t i = 0; i < support_.size(); ++i) {
      scores[i] = base * ((static_cast<double>(unigram_[support_[i]]) + k_) / denom);
    }
    std::vector<TokenId> key;
    for (std::size_t len = 1; len <= eff; ++len) {
      key.assign(context.end() - static_cast<std::ptrdiff_t>(len), context.end());
      const auto it = contexts_.find(key);
      if (it == contexts_.end()) continue;
      double weight = 1.0;
      for (std::size_t i = len; i < eff; ++i) weight *= kBackoff;
      const auto total = static_cast<double>(it->second.total);
      for (auto [id, n] : it->second.next) {
        const auto pos = position_[id];
        if (pos >= 0) scores[static_cast<std::size_t>(pos)] = weight * static_cast<double>(n) / total;
      }
    }
    double sum = 0.0;
    for (double s : scores) sum += s;
    for (double& s : scores) s /= sum;
    return scores;
  }

  ConditionalDistribution distribution(std::span<const TokenId> context) const {
    const auto probs = probabilities(context);
    return ConditionalDistribution::from_probabilities(support_, probs);
  }

  /// Text model file: header, embedded vocabulary with its hash, unigram
  /// counts and context continuation counts.
  void save(std::ostream& out) const {
    char kbuf[64];
    std::snprintf(kbuf, sizeof kbuf, "%.17g", k_);
    out << kMagic << ' ' << kFormatVersion << '\n';
    out << "order " << order_ << '\n';
    out << "k " << kbuf << '\n';
    out << "vocab_hash " << hex64(vocab_.hash()) << '\n';
    out << "vocab " << vocab_.size() << '\n';
    vocab_.write(out);
    out << "unigrams " << unigram_total_ << '\n';
    for (std::size_t id = 0; id < unigram_.size(); ++id) {
      if (unigram_[id] != 0) out << id << ' ' << unigram_[id] << '\n';
    }
    out << "contexts " << contexts_.size() << '\n';
    for (const auto& [ctx, c] : contexts_) {
      for (std::size_t i = 0; i < ctx.size(); ++i) out << (i ? " " : "") << ctx[i];
      out << " |";
      for (auto [id, n] : c.next) out << ' ' << id << ':' << n;
      out << '\n';
    }
    out << "end\n";
  }

  void save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write model file " + path);
    save(out);
    if (!out) throw FormatError("failed writing model file " + path);
  }

  /// Reads a model file. The embedded vocabulary must match its recorded
  /// hash and, when given, `expected`.
  static NGramLM load(std::istream& in, const corpus::Vocabulary* expected = nullptr) {
    try {
      return parse(in, expected);
    } catch (const std::logic_error& e) {
      throw FormatError(std::string("model file: malformed number (") + e.what() + ")");
    }
  }

  static NGramLM load(const std::string& path, const corpus::Vocabulary* expected = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open model file " + path);
    return load(in, expected);
  }

 private:
  static NGramLM parse(std::istream& in, const corpus::Vocabulary* expected) {
    std::string line;
    const auto next_line = [&](const char* what) -> std::string& {
      if (!std::getline(in, line)) throw FormatError(std::string("model file truncated before ") + what);
      return line;
    };
    {
      std::istringstream head(next_line("header"));
      std::string magic;
      int version = 0;
      head >> magic >> version;
      if (magic != kMagic) throw FormatError("not a model file (bad magic)");
      if (version != kFormatVersion) throw FormatError("unsupported model file version " + std::to_string(version));
    }
    const auto field = [&](const char* name) {
      std::istringstream ls(next_line(name));
      std::string key, value;
      ls >> key >> value;
      if (key != name) throw FormatError(std::string("model file: expected '") + name + "'");
      return value;
    };
    const unsigned order = static_cast<unsigned>(std::stoul(field("order")));
    const double k = std::strtod(field("k").c_str(), nullptr);
    const std::string hash = field("vocab_hash");
    const std::size_t vocab_n = std::stoull(field("vocab"));
    std::string vocab_text;
    for (std::size_t i = 0; i < vocab_n; ++i) vocab_text += next_line("vocabulary") + '\n';
    std::istringstream vocab_in(vocab_text);
    corpus::Vocabulary vocab = corpus::Vocabulary::read(vocab_in);
    if (hex64(vocab.hash()) != hash) throw FormatError("model file: vocabulary does not match its recorded hash");
    if (expected && expected->hash() != vocab.hash()) {
      throw FormatError("model file: vocabulary hash " + hash + " differs from the supplied vocabulary " +
                        hex64(expected->hash()));
    }
    if (order < 2) throw FormatError("model file: order must be at least 2");
    if (!(k > 0.0) || !std::isfinite(k)) throw FormatError("model file: smoothing constant must be positive");

    NGramLM model(std::move(vocab), order, k);
    const std::size_t n_unigram_total = std::stoull(field("unigrams"));
    model.unigram_total_ = n_unigram_total;
    std::uint64_t seen = 0;
    for (;;) {
      next_line("contexts");
      if (line.starts_with("contexts ")) break;
      std::istringstream ls(line);
      std::uint64_t id = 0, n = 0;
      if (!(ls >> id >> n) || id >= model.unigram_.size()) throw FormatError("model file: bad unigram line");
      model.unigram_[id] = n;
      seen += n;
    }
    if (seen != n_unigram_total) throw FormatError("model file: unigram counts do not add up");
    const std::size_t n_contexts = std::stoull(line.substr(9));
    for (std::size_t c = 0; c < n_contexts; ++c) {
      std::istringstream ls(next_line("context counts"));
      std::vector<TokenId> ctx;
      std::string tok;
      while (ls >> tok && tok != "|") ctx.push_back(static_cast<TokenId>(std::stoul(tok)));
      Continuations cont;
      while (ls >> tok) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) throw FormatError("model file: bad continuation '" + tok + "'");
        const auto id = static_cast<TokenId>(std::stoul(tok.substr(0, colon)));
        const auto n = std::stoull(tok.substr(colon + 1));
        if (id >= model.vocab_.size()) throw FormatError("model file: continuation id outside the vocabulary");
        cont.next.emplace_back(id, n);
        cont.total += n;
      }
      if (ctx.empty() || ctx.size() >= order) throw FormatError("model file: bad context length");
      model.contexts_.emplace(std::move(ctx), std::move(cont));
    }
    if (next_line("end") != "end") throw FormatError("model file: missing end marker");
    return model;
  }

  struct Continuations {
    std::uint64_t total = 0;
    std::vector<std::pair<TokenId, std::uint64_t>> next;  // ascending id
  };

  NGramLM(corpus::Vocabulary vocab, unsigned order, double k)
      : vocab_(std::move(vocab)), order_(order), k_(k), unigram_(vocab_.size(), 0), position_(vocab_.size(), -1) {
    for (TokenId id = 0; id < vocab_.size(); ++id) {
      if (id == kPadId || id == kBosId) continue;
      position_[id] = static_cast<std::int64_t>(support_.size());
      support_.push_back(id);
    }
  }

  static std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
  }

  corpus::Vocabulary vocab_;
  unsigned order_ = 2;
  double k_ = 1.0;
  std::vector<std::uint64_t> unigram_;
  std::uint64_t unigram_total_ = 0;
  std::map<std::vector<TokenId>, Continuations> contexts_;
  std::vector<TokenId> support_;
  std::vector<std::int64_t> position_;
};

inline NGramLM train_ngram(const std::vector<corpus::Sentence>& sentences, corpus::Vocabulary vocab, unsigned order,
                           double k) {
  return NGramLM::train(sentences, std::move(vocab), order, k);
}

/// Per-stream view of a shared NGramLM that memoizes distributions by
/// effective context. The cache is dropped wholesale when full.
class NGramSource final : public LanguageModel {
 public:
  explicit NGramSource(const NGramLM& model, std::size_t cache_capacity = 256)
      : model_(model), capacity_(cache_capacity) {}

  ConditionalDistribution next_distribution(std::span<const TokenId> context) override {
    auto key = cache_key(context);
    if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto dist = model_.distribution(context);
    remember(std::move(key), dist);
    return dist;
  }

  ConditionalDistribution next_distribution_masked(std::span<const TokenId> context, TokenId token) override {
    auto key = cache_key(context);
    key.push_back('\0');
    key.append(reinterpret_cast<const char*>(&token), sizeof token);
    if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto dist = suppress_token(next_distribution(context), token);
    remember(std::move(key), dist);
    return dist;
  }

  const NGramLM& model() const noexcept { return model_; }

 private:
  // Effective context bytes; masked variants append a separator and the
  // masked id, so the two kinds of entry never collide (plain keys are a
  // whole number of ids long).
  std::string cache_key(std::span<const TokenId> context) const {
    if (context.empty() || context.front() != kBosId) {
      throw PreconditionError("next_distribution: context must start with BOS");
    }
    const std::size_t eff = model_.effective_length(context);
    return std::string(reinterpret_cast<const char*>(context.data() + (context.size() - eff)), eff * sizeof(TokenId));
  }

  void remember(std::string key, const ConditionalDistribution& dist) {
    if (capacity_ == 0) return;
    if (cache_.size() >= capacity_) cache_.clear();
    cache_.emplace(std::move(key), dist);
  }

  const NGramLM& model_;
  std::size_t capacity_;
  std::unordered_map<std::string, ConditionalDistribution> cache_;
};

}  // namespace adgstego::lm

#endif  // ADGSTEGO_LANGUAGE_MODEL_HPP
