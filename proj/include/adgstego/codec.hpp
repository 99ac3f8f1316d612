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

// Codec interface shared by ADG and the baselines, and the sentence-level
// generation loop that drives a codec over a language model.
//
// Sentence shape is part of the codec contract and is applied identically
// on both ends: before content position `min_length` the EOS mass is
// lowered to 1, and at position `max_length` the sentence ends without a
// codec step (the EOS there is forced and carries nothing).

#ifndef ADGSTEGO_CODEC_HPP
#define ADGSTEGO_CODEC_HPP

#include <cstdint>
#include <istream>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "adgstego/adg.hpp"
#include "adgstego/bitio.hpp"
#include "adgstego/common.hpp"
#include "adgstego/distribution.hpp"
#include "adgstego/divergence.hpp"
#include "adgstego/language_model.hpp"

namespace adgstego::stego {

/// What a codec did at one generation step.
struct StepRecord {
  TokenId token = 0;
  /// Message bits fixed by this step (padding included).
  std::uint32_t bits = 0;
  /// Information content in bits; differs from `bits` only for codecs
  /// that account fractionally (arithmetic coding).
  double information = 0.0;
  /// False when the step sampled freely without carrying anything.
  bool embedded = false;
  std::vector<adg::LevelChoice> levels;
};

class StepEncoder {
 public:
  virtual ~StepEncoder() = default;
  virtual StepRecord step(const lm::ConditionalDistribution& dist) = 0;
  /// True once every bit of the frame has been committed to the text.
  virtual bool message_consumed() const = 0;
};

class StepDecoder {
 public:
  virtual ~StepDecoder() = default;
  /// Accounts for `token` having been generated from `dist`. Returns the
  /// number of bits recovered.
  virtual std::uint32_t step(const lm::ConditionalDistribution& dist, TokenId token) = 0;
  virtual const bitio::Bits& bits() const = 0;
};

struct Seeds {
  std::uint64_t sample = 1;
  std::uint64_t pad = 2;
};

class Codec {
 public:
  virtual ~Codec() = default;
  virtual std::string method() const = 0;
  /// Parameters in `key=value` form, e.g. "b=3".
  virtual std::string params() const = 0;
  virtual std::unique_ptr<StepEncoder> encoder(bitio::BitMessage message, Seeds seeds) const = 0;
  virtual std::unique_ptr<StepDecoder> decoder() const = 0;
  /// Token distribution the codec induces at `dist` when fed uniform
  /// bits, aligned with dist.entries().
  virtual std::vector<double> implicit_q(const lm::ConditionalDistribution& dist) const = 0;
};

// ---------------------------------------------------------------------------
// ADG as a Codec.

class AdgEncoder final : public StepEncoder {
 public:
  AdgEncoder(bitio::BitMessage message, Seeds seeds)
      : message_(std::move(message)), sample_rng_(seeds.sample), pad_rng_(seeds.pad) {}

  StepRecord step(const lm::ConditionalDistribution& dist) override {
    auto s = adg::embed_step(dist, message_, sample_rng_, pad_rng_);
    StepRecord r;
    r.token = s.token;
    r.bits = s.bits;
    r.information = s.bits;
    r.embedded = s.bits > 0;
    r.levels = std::move(s.levels);
    return r;
  }

  bool message_consumed() const override { return message_.exhausted(); }

 private:
  bitio::BitMessage message_;
  Rng sample_rng_;
  Rng pad_rng_;
};

class AdgDecoder final : public StepDecoder {
 public:
  std::uint32_t step(const lm::ConditionalDistribution& dist, TokenId token) override {
    const auto chunk = adg::extract_step(dist, token);
    bits_.insert(bits_.end(), chunk.begin(), chunk.end());
    return static_cast<std::uint32_t>(chunk.size());
  }
  const bitio::Bits& bits() const override { return bits_; }

 private:
  bitio::Bits bits_;
};

class AdgCodec final : public Codec {
 public:
  std::string method() const override { return "adg"; }
  std::string params() const override { return "-"; }
  std::unique_ptr<StepEncoder> encoder(bitio::BitMessage message, Seeds seeds) const override {
    return std::make_unique<AdgEncoder>(std::move(message), seeds);
  }
  std::unique_ptr<StepDecoder> decoder() const override { return std::make_unique<AdgDecoder>(); }
  std::vector<double> implicit_q(const lm::ConditionalDistribution& dist) const override {
    return adg::implicit_q(dist);
  }
};

// ---------------------------------------------------------------------------
// Generation loop.

struct Limits {
  std::size_t min_length = 5;
  std::size_t max_length = 200;
  std::size_t max_tokens = 1'000'000;
  std::size_t max_sentences = 100'000;
};

/// Per-step distortion figures, in bits.
struct StepMetrics {
  double entropy = 0.0;
  double kl_qp = 0.0;  // D(q‖p)
  double kl_pq = 0.0;  // D(p‖q), +inf for truncating codecs
};

struct TraceRecord {
  std::size_t sentence = 0;
  std::size_t position = 0;
  StepRecord step;
  std::optional<StepMetrics> metrics;
};

struct StegoText {
  /// Content tokens only; BOS and EOS are implicit.
  std::vector<std::vector<TokenId>> sentences;
  std::vector<TraceRecord> trace;
};

/// Model distribution at content position `position`, with the sentence
/// length constraints applied.
inline lm::ConditionalDistribution constrained_distribution(lm::LanguageModel& model,
                                                            std::span<const TokenId> context,
                                                            std::size_t position, const Limits& limits) {
  if (position < limits.min_length) return model.next_distribution_masked(context, kEosId);
  return model.next_distribution(context);
}

inline StepMetrics measure_step(const Codec& codec, const lm::ConditionalDistribution& dist) {
  const auto p = dist.probabilities();
  const auto q = codec.implicit_q(dist);
  return {metrics::entropy_bits(p), metrics::kl_bits(q, p), metrics::kl_bits(p, q)};
}

/// Generates sentences until the encoder has committed the whole frame and
/// the current sentence has ended. `measure`, when set, also records each
/// step's entropy and divergences against `measure`'s implicit q.
inline StegoText generate(lm::LanguageModel& model, StepEncoder& encoder, const Limits& limits,
                          const Codec* measure = nullptr) {
  StegoText out;
  std::size_t steps = 0;
  std::vector<TokenId> context;
  for (;;) {
    if (out.sentences.size() >= limits.max_sentences) {
      throw CapacityError("embed: sentence budget of " + std::to_string(limits.max_sentences) +
                          " exhausted before the message was embedded");
    }
    const std::size_t sentence_index = out.sentences.size();
    context.assign(1, kBosId);
    std::vector<TokenId> tokens;
    for (std::size_t pos = 0; pos < limits.max_length; ++pos) {
      if (steps >= limits.max_tokens && !encoder.message_consumed()) {
        throw CapacityError("embed: token budget of " + std::to_string(limits.max_tokens) +
                            " exhausted before the message was embedded");
      }
      const auto dist = constrained_distribution(model, context, pos, limits);
      TraceRecord rec{sentence_index, pos, encoder.step(dist), std::nullopt};
      if (measure) rec.metrics = measure_step(*measure, dist);
      ++steps;
      const TokenId token = rec.step.token;
      out.trace.push_back(std::move(rec));
      if (token == kEosId) break;
      tokens.push_back(token);
      context.push_back(token);
    }
    out.sentences.push_back(std::move(tokens));
    if (encoder.message_consumed()) break;
  }
  return out;
}

/// Replays generation over received sentences and returns every bit the
/// decoder recovered, padding included.
inline bitio::Bits recover(lm::LanguageModel& model, StepDecoder& decoder,
                           const std::vector<std::vector<TokenId>>& sentences, const Limits& limits) {
  std::vector<TokenId> context;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    const auto& tokens = sentences[s];
    if (tokens.size() > limits.max_length) {
      throw DesyncError("extract: sentence " + std::to_string(s) + " is longer than " +
                        std::to_string(limits.max_length) + " tokens");
    }
    context.assign(1, kBosId);
    for (std::size_t pos = 0; pos <= tokens.size(); ++pos) {
      if (pos == limits.max_length) break;
      const TokenId token = pos < tokens.size() ? tokens[pos] : kEosId;
      if (pos < tokens.size() && token == kEosId) {
        throw DesyncError("extract: end-of-sentence token inside sentence " + std::to_string(s));
      }
      const auto dist = constrained_distribution(model, context, pos, limits);
      try {
        decoder.step(dist, token);
      } catch (const DesyncError& e) {
        throw DesyncError("extract: sentence " + std::to_string(s) + ", position " + std::to_string(pos) + ": " +
                          e.what());
      }
      context.push_back(token);
    }
  }
  return decoder.bits();
}

/// Frames and whitens `payload`, generates stegotext with `codec`.
inline StegoText embed(const Codec& codec, const bitio::Bits& payload, lm::LanguageModel& model, Seeds seeds,
                       const Limits& limits = {}, bool with_metrics = false) {
  auto encoder = codec.encoder(bitio::BitMessage(bitio::whiten(bitio::frame(payload).bits())), seeds);
  return generate(model, *encoder, limits, with_metrics ? &codec : nullptr);
}

/// Recovers, unwhitens and deframes the payload carried by `sentences`.
inline bitio::Bits extract(const Codec& codec, const std::vector<std::vector<TokenId>>& sentences,
                           lm::LanguageModel& model, const Limits& limits = {}) {
  auto decoder = codec.decoder();
  return bitio::deframe(bitio::whiten(recover(model, *decoder, sentences, limits)));
}

// ---------------------------------------------------------------------------
// Trace files: a header object, then one object per step.

inline nlohmann::json to_json(const TraceRecord& r) {
  nlohmann::json j;
  j["s"] = r.sentence;
  j["t"] = r.position;
  j["token"] = r.step.token;
  j["bits"] = r.step.bits;
  j["info"] = r.step.information;
  j["embedded"] = r.step.embedded;
  std::vector<std::uint64_t> u, index, group_mass, level_mass;
  for (const auto& l : r.step.levels) {
    u.push_back(l.groups);
    index.push_back(l.index);
    group_mass.push_back(l.group_mass);
    level_mass.push_back(l.level_mass);
  }
  j["u"] = u;
  j["index"] = index;
  j["group_mass"] = group_mass;
  j["level_mass"] = level_mass;
  if (r.metrics) {
    const auto finite_or_null = [](double v) -> nlohmann::json {
      if (std::isfinite(v)) return v;
      return nullptr;
    };
    j["entropy"] = r.metrics->entropy;
    j["kl_qp"] = finite_or_null(r.metrics->kl_qp);
    j["kl_pq"] = finite_or_null(r.metrics->kl_pq);
  }
  return j;
}

inline TraceRecord trace_record_from_json(const nlohmann::json& j) {
  TraceRecord r;
  r.sentence = j.at("s").get<std::size_t>();
  r.position = j.at("t").get<std::size_t>();
  r.step.token = j.at("token").get<TokenId>();
  r.step.bits = j.at("bits").get<std::uint32_t>();
  r.step.information = j.at("info").get<double>();
  r.step.embedded = j.at("embedded").get<bool>();
  const auto u = j.at("u").get<std::vector<std::uint64_t>>();
  const auto index = j.at("index").get<std::vector<std::uint64_t>>();
  const auto group_mass = j.at("group_mass").get<std::vector<std::uint64_t>>();
  const auto level_mass = j.at("level_mass").get<std::vector<std::uint64_t>>();
  for (std::size_t i = 0; i < u.size(); ++i) r.step.levels.push_back({u[i], index.at(i), group_mass.at(i), level_mass.at(i)});
  if (j.contains("entropy")) {
    const auto value_or_inf = [](const nlohmann::json& v) {
      return v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
    };
    r.metrics = StepMetrics{j.at("entropy").get<double>(), value_or_inf(j.at("kl_qp")), value_or_inf(j.at("kl_pq"))};
  }
  return r;
}

inline void write_trace(std::ostream& out, const nlohmann::json& header, const std::vector<TraceRecord>& trace) {
  out << header.dump() << '\n';
  for (const auto& r : trace) out << to_json(r).dump() << '\n';
}

struct TraceFile {
  nlohmann::json header;
  std::vector<TraceRecord> records;
};

inline TraceFile read_trace(std::istream& in) {
  TraceFile f;
  std::string line;
  bool first = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      if (first) {
        f.header = std::move(j);
        first = false;
      } else {
        f.records.push_back(trace_record_from_json(j));
      }
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("trace line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (first) throw FormatError("trace file is empty");
  return f;
}

}  // namespace adgstego::stego

#endif  // ADGSTEGO_CODEC_HPP
