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

// Reference stego codecs: block bins, Huffman, patient Huffman and
// arithmetic coding. Each works on the same quantized distributions as ADG
// and plugs into the generation loop in codec.hpp.

#ifndef ADGSTEGO_BASELINES_HPP
#define ADGSTEGO_BASELINES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <queue>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "adgstego/bitio.hpp"
#include "adgstego/codec.hpp"
#include "adgstego/common.hpp"
#include "adgstego/distribution.hpp"
#include "adgstego/random.hpp"

namespace adgstego::stego {

namespace detail {

inline std::string format_real(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bins: the vocabulary is split once into 2^b bins; each step emits the most
// likely token of the bin named by the next b bits.

class BinsCodec final : public Codec {
 public:
  /// Partitions every id in [0, vocab_size) except PAD and BOS into 2^b bins
  /// of equal size (±1) after a seeded shuffle.
  BinsCodec(unsigned b, std::size_t vocab_size, std::uint64_t partition_seed) : b_(b), seed_(partition_seed) {
    if (b < 1 || b > 20) throw PreconditionError("bins: b must lie in [1, 20]");
    std::vector<TokenId> ids;
    for (std::size_t id = 0; id < vocab_size; ++id) {
      if (id != kPadId && id != kBosId) ids.push_back(static_cast<TokenId>(id));
    }
    const std::size_t bins = std::size_t{1} << b;
    if (ids.size() < bins) throw PreconditionError("bins: vocabulary smaller than the number of bins");
    Rng rng(partition_seed);
    portable_shuffle(std::span<TokenId>(ids), rng);
    bin_of_.assign(vocab_size, kNoBin);
    for (std::size_t i = 0; i < ids.size(); ++i) bin_of_[ids[i]] = static_cast<std::uint32_t>(i % bins);
  }

  std::string method() const override { return "bins"; }
  std::string params() const override { return "b=" + std::to_string(b_); }
  unsigned b() const noexcept { return b_; }
  std::uint64_t partition_seed() const noexcept { return seed_; }

  /// Bin of `id`, or nullopt for ids outside the partition.
  std::optional<std::uint32_t> bin_of(TokenId id) const {
    if (id >= bin_of_.size() || bin_of_[id] == kNoBin) return std::nullopt;
    return bin_of_[id];
  }

  /// Most likely member of `bin` in `dist`, or nullopt if the bin has none.
  std::optional<std::size_t> best_in_bin(const lm::ConditionalDistribution& dist, std::uint32_t bin) const {
    for (std::size_t i = 0; i < dist.size(); ++i) {
      if (bin_of(dist[i].id) == bin) return i;
    }
    return std::nullopt;
  }

  std::unique_ptr<StepEncoder> encoder(bitio::BitMessage message, Seeds seeds) const override;
  std::unique_ptr<StepDecoder> decoder() const override;

  std::vector<double> implicit_q(const lm::ConditionalDistribution& dist) const override {
    std::vector<double> q(dist.size(), 0.0);
    std::vector<std::size_t> winners;
    for (std::uint32_t bin = 0; bin < (1U << b_); ++bin) {
      if (auto i = best_in_bin(dist, bin)) winners.push_back(*i);
    }
    for (std::size_t i : winners) q[i] = 1.0 / static_cast<double>(winners.size());
    return q;
  }

 private:
  static constexpr std::uint32_t kNoBin = std::numeric_limits<std::uint32_t>::max();
  unsigned b_;
  std::uint64_t seed_;
  std::vector<std::uint32_t> bin_of_;
};

class BinsEncoder final : public StepEncoder {
 public:
  BinsEncoder(const BinsCodec& codec, bitio::BitMessage message, Seeds seeds)
      : codec_(codec), message_(std::move(message)), pad_rng_(seeds.pad) {}

  StepRecord step(const lm::ConditionalDistribution& dist) override {
    const auto bin = static_cast<std::uint32_t>(bitio::next_index(message_, codec_.b(), pad_rng_));
    const auto at = codec_.best_in_bin(dist, bin);
    if (!at) throw PreconditionError("bins: bin " + std::to_string(bin) + " has no token in the distribution");
    StepRecord r;
    r.token = dist[*at].id;
    r.bits = codec_.b();
    r.information = codec_.b();
    r.embedded = true;
    return r;
  }

  bool message_consumed() const override { return message_.exhausted(); }

 private:
  const BinsCodec& codec_;
  bitio::BitMessage message_;
  Rng pad_rng_;
};

class BinsDecoder final : public StepDecoder {
 public:
  explicit BinsDecoder(const BinsCodec& codec) : codec_(codec) {}

  std::uint32_t step(const lm::ConditionalDistribution& dist, TokenId token) override {
    const auto bin = codec_.bin_of(token);
    if (!bin) throw DesyncError("bins: token " + std::to_string(token) + " is outside the partition");
    const auto at = codec_.best_in_bin(dist, *bin);
    if (!at || dist[*at].id != token) {
      throw DesyncError("bins: token " + std::to_string(token) + " is not the most likely member of its bin");
    }
    const auto chunk = bitio::index_to_bits(*bin, codec_.b());
    bits_.insert(bits_.end(), chunk.begin(), chunk.end());
    return codec_.b();
  }
  const bitio::Bits& bits() const override { return bits_; }

 private:
  const BinsCodec& codec_;
  bitio::Bits bits_;
};

inline std::unique_ptr<StepEncoder> BinsCodec::encoder(bitio::BitMessage message, Seeds seeds) const {
  return std::make_unique<BinsEncoder>(*this, std::move(message), seeds);
}
inline std::unique_ptr<StepDecoder> BinsCodec::decoder() const { return std::make_unique<BinsDecoder>(*this); }

// ---------------------------------------------------------------------------
// Huffman coding over the top 2^k tokens.

/// Prefix code over a set of weighted tokens. Construction repeatedly merges
/// the two lightest nodes (ties: the node holding the smallest id); the
/// first one taken becomes the 0 branch.
class HuffmanTree {
 public:
  explicit HuffmanTree(std::span<const lm::TokenMass> leaves) {
    if (leaves.empty()) throw PreconditionError("huffman: no leaves");
    struct Key {
      std::uint64_t mass;
      TokenId min_id;
      std::size_t node;
    };
    const auto later = [](const Key& a, const Key& b) {
      if (a.mass != b.mass) return a.mass > b.mass;
      return a.min_id > b.min_id;
    };
    std::priority_queue<Key, std::vector<Key>, decltype(later)> queue(later);
    for (const auto& leaf : leaves) {
      nodes_.push_back({leaf.id, kLeaf, kLeaf});
      queue.push({leaf.mass, leaf.id, nodes_.size() - 1});
    }
    while (queue.size() > 1) {
      const Key zero = queue.top();
      queue.pop();
      const Key one = queue.top();
      queue.pop();
      nodes_.push_back({0, zero.node, one.node});
      queue.push({zero.mass + one.mass, std::min(zero.min_id, one.min_id), nodes_.size() - 1});
    }
    root_ = queue.top().node;
    assign_codes(root_, {});
  }

  std::size_t root() const noexcept { return root_; }
  bool is_leaf(std::size_t node) const { return nodes_[node].zero == kLeaf; }
  TokenId token(std::size_t node) const { return nodes_[node].id; }
  std::size_t child(std::size_t node, bool bit) const { return bit ? nodes_[node].one : nodes_[node].zero; }

  /// Codeword of `id`, or nullptr when it is not a leaf.
  const bitio::Bits* code(TokenId id) const {
    const auto it = codes_.find(id);
    return it == codes_.end() ? nullptr : &it->second;
  }

 private:
  static constexpr std::size_t kLeaf = std::numeric_limits<std::size_t>::max();
  struct Node {
    TokenId id;
    std::size_t zero;
    std::size_t one;
  };

  void assign_codes(std::size_t node, bitio::Bits prefix) {
    // Iterative to stay safe on degenerate (chain-shaped) trees.
    std::vector<std::pair<std::size_t, bitio::Bits>> stack{{node, std::move(prefix)}};
    while (!stack.empty()) {
      auto [n, bits] = std::move(stack.back());
      stack.pop_back();
      if (is_leaf(n)) {
        codes_[nodes_[n].id] = std::move(bits);
        continue;
      }
      auto one = bits;
      one.push_back(true);
      bits.push_back(false);
      stack.push_back({nodes_[n].one, std::move(one)});
      stack.push_back({nodes_[n].zero, std::move(bits)});
    }
  }

  std::vector<Node> nodes_;
  std::size_t root_ = 0;
  std::unordered_map<TokenId, bitio::Bits> codes_;
};

inline std::span<const lm::TokenMass> top_entries(const lm::ConditionalDistribution& dist, std::size_t n) {
  return dist.entries().first(std::min(n, dist.size()));
}

/// D(q_huffman ‖ p_top) in bits, with p_top the top entries renormalized.
inline double huffman_distortion(std::span<const lm::TokenMass> top, const HuffmanTree& tree) {
  const auto total = static_cast<double>(lm::total_mass(top));
  double d = 0.0;
  for (const auto& e : top) {
    const double q = std::ldexp(1.0, -static_cast<int>(tree.code(e.id)->size()));
    d += q * std::log2(q * total / static_cast<double>(e.mass));
  }
  return d;
}

/// Huffman over the top 2^k tokens; with a finite `delta` a step embeds only
/// when the code's distortion against the renormalized top tokens is below
/// delta bits, and otherwise samples the full distribution freely.
class HuffmanCodec final : public Codec {
 public:
  explicit HuffmanCodec(unsigned k, double delta = std::numeric_limits<double>::infinity())
      : k_(k), delta_(delta) {
    if (k < 1 || k > 20) throw PreconditionError("huffman: k must lie in [1, 20]");
    if (!(delta >= 0.0)) throw PreconditionError("huffman: delta must be nonnegative");
  }

  bool patient() const noexcept { return std::isfinite(delta_); }
  unsigned k() const noexcept { return k_; }
  double delta() const noexcept { return delta_; }

  std::string method() const override { return patient() ? "patient_huffman" : "huffman"; }
  std::string params() const override {
    if (patient()) return "k=" + std::to_string(k_) + ";delta=" + detail::format_real(delta_);
    return "k=" + std::to_string(k_);
  }

  struct Plan {
    std::span<const lm::TokenMass> top;
    HuffmanTree tree;
    bool embed;
  };

  /// Shared by both ends: the tree for `dist` and whether the step embeds.
  Plan plan(const lm::ConditionalDistribution& dist) const {
    const auto top = top_entries(dist, std::size_t{1} << k_);
    HuffmanTree tree(top);
    bool embed = true;
    if (patient()) embed = huffman_distortion(top, tree) < delta_;
    return {top, std::move(tree), embed};
  }

  std::unique_ptr<StepEncoder> encoder(bitio::BitMessage message, Seeds seeds) const override;
  std::unique_ptr<StepDecoder> decoder() const override;

  std::vector<double> implicit_q(const lm::ConditionalDistribution& dist) const override {
    const auto p = plan(dist);
    if (!p.embed) return dist.probabilities();
    std::vector<double> q(dist.size(), 0.0);
    for (std::size_t i = 0; i < p.top.size(); ++i) {
      q[i] = std::ldexp(1.0, -static_cast<int>(p.tree.code(p.top[i].id)->size()));
    }
    return q;
  }

 private:
  unsigned k_;
  double delta_;
};

class HuffmanEncoder final : public StepEncoder {
 public:
  HuffmanEncoder(const HuffmanCodec& codec, bitio::BitMessage message, Seeds seeds)
      : codec_(codec), message_(std::move(message)), sample_rng_(seeds.sample), pad_rng_(seeds.pad) {}

  StepRecord step(const lm::ConditionalDistribution& dist) override {
    const auto p = codec_.plan(dist);
    StepRecord r;
    if (!p.embed) {
      r.token = adg::sample_token(dist.entries(), sample_rng_);
      return r;
    }
    std::size_t node = p.tree.root();
    while (!p.tree.is_leaf(node)) {
      node = p.tree.child(node, bitio::next_index(message_, 1, pad_rng_) != 0);
      ++r.bits;
    }
    r.token = p.tree.token(node);
    r.information = r.bits;
    r.embedded = true;
    return r;
  }

  bool message_consumed() const override { return message_.exhausted(); }

 private:
  const HuffmanCodec& codec_;
  bitio::BitMessage message_;
  Rng sample_rng_;
  Rng pad_rng_;
};

class HuffmanDecoder final : public StepDecoder {
 public:
  explicit HuffmanDecoder(const HuffmanCodec& codec) : codec_(codec) {}

  std::uint32_t step(const lm::ConditionalDistribution& dist, TokenId token) override {
    const auto p = codec_.plan(dist);
    if (!p.embed) {
      if (!dist.index_of(token)) throw DesyncError("huffman: token " + std::to_string(token) + " is not in the distribution");
      return 0;
    }
    const auto* code = p.tree.code(token);
    if (!code) throw DesyncError("huffman: token " + std::to_string(token) + " is outside the coded top tokens");
    bits_.insert(bits_.end(), code->begin(), code->end());
    return static_cast<std::uint32_t>(code->size());
  }
  const bitio::Bits& bits() const override { return bits_; }

 private:
  const HuffmanCodec& codec_;
  bitio::Bits bits_;
};

inline std::unique_ptr<StepEncoder> HuffmanCodec::encoder(bitio::BitMessage message, Seeds seeds) const {
  return std::make_unique<HuffmanEncoder>(*this, std::move(message), seeds);
}
inline std::unique_ptr<StepDecoder> HuffmanCodec::decoder() const { return std::make_unique<HuffmanDecoder>(*this); }

// ---------------------------------------------------------------------------
// Arithmetic coding over the top h tokens.
//
// The sender runs an arithmetic *decoder* over the message bits, so the
// emitted token sequence is the one whose arithmetic encoding starts with the
// message; the receiver runs the matching encoder. Both share the interval
// state [low, high] of `precision` bits and the count of pending
// (straddling) bits, so the sender knows exactly how many leading stream bits
// the receiver can already resolve.

struct ArithmeticState {
  unsigned precision;
  std::uint64_t low = 0;
  std::uint64_t high;
  std::uint64_t pending = 0;  // bits awaiting the opposite of the next resolved bit
  std::uint64_t shifts = 0;   // stream bits shifted out so far

  explicit ArithmeticState(unsigned p) : precision(p), high((std::uint64_t{1} << p) - 1) {}

  std::uint64_t half() const { return std::uint64_t{1} << (precision - 1); }
  std::uint64_t quarter() const { return std::uint64_t{1} << (precision - 2); }
  /// Stream bits the receiver has fixed.
  std::uint64_t resolved() const { return shifts - pending; }

  /// Lower edge of the sub-interval that starts at cumulative mass `cum`.
  std::uint64_t edge(std::uint64_t cum, std::uint64_t total) const {
    const auto range = static_cast<unsigned __int128>(high - low) + 1;
    return low + static_cast<std::uint64_t>(range * cum / total);
  }
};

/// Cumulative masses of the top entries; cum[i] is the mass before entry i.
inline std::vector<std::uint64_t> cumulative(std::span<const lm::TokenMass> top) {
  std::vector<std::uint64_t> cum(top.size() + 1, 0);
  for (std::size_t i = 0; i < top.size(); ++i) cum[i + 1] = cum[i] + top[i].mass;
  return cum;
}

class ArithmeticCodec final : public Codec {
 public:
  static constexpr unsigned kDefaultPrecision = 52;

  explicit ArithmeticCodec(std::size_t h, unsigned precision = kDefaultPrecision) : h_(h), precision_(precision) {
    if (h < 1) throw PreconditionError("arithmetic: h must be at least 1");
    if (precision < 33 || precision > 62) throw PreconditionError("arithmetic: precision must lie in [33, 62]");
  }

  std::size_t h() const noexcept { return h_; }
  unsigned precision() const noexcept { return precision_; }
  std::string method() const override { return "arithmetic"; }
  std::string params() const override { return "h=" + std::to_string(h_); }

  std::unique_ptr<StepEncoder> encoder(bitio::BitMessage message, Seeds seeds) const override;
  std::unique_ptr<StepDecoder> decoder() const override;

  std::vector<double> implicit_q(const lm::ConditionalDistribution& dist) const override {
    const auto top = top_entries(dist, h_);
    const auto total = static_cast<double>(lm::total_mass(top));
    std::vector<double> q(dist.size(), 0.0);
    for (std::size_t i = 0; i < top.size(); ++i) q[i] = static_cast<double>(top[i].mass) / total;
    return q;
  }

 private:
  std::size_t h_;
  unsigned precision_;
};

class ArithmeticEncoder final : public StepEncoder {
 public:
  ArithmeticEncoder(const ArithmeticCodec& codec, bitio::BitMessage message, Seeds seeds)
      : codec_(codec), message_(std::move(message)), pad_rng_(seeds.pad), state_(codec.precision()) {
    for (unsigned i = 0; i < codec.precision(); ++i) value_ = (value_ << 1) | next_stream_bit();
  }

  StepRecord step(const lm::ConditionalDistribution& dist) override {
    const auto top = top_entries(dist, codec_.h());
    const auto cum = cumulative(top);
    const std::uint64_t total = cum.back();
    // Last entry whose lower edge is at or below the code value.
    std::size_t lo = 0;
    std::size_t hi = top.size();
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (state_.edge(cum[mid], total) <= value_) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const std::uint64_t before = state_.resolved();
    const std::uint64_t width = state_.edge(cum[lo + 1], total) - state_.edge(cum[lo], total);
    const double range = static_cast<double>(state_.high - state_.low) + 1.0;
    const std::uint64_t new_high = state_.edge(cum[lo + 1], total) - 1;
    state_.low = state_.edge(cum[lo], total);
    state_.high = new_high;
    renormalize();

    StepRecord r;
    r.token = top[lo].id;
    r.bits = static_cast<std::uint32_t>(state_.resolved() - before);
    r.information = std::log2(range / static_cast<double>(width));
    r.embedded = true;
    return r;
  }

  bool message_consumed() const override { return state_.resolved() >= message_.size(); }

 private:
  std::uint64_t next_stream_bit() {
    const bool bit = message_.peek(stream_pos_++, pad_rng_);
    return bit ? 1 : 0;
  }

  void renormalize() {
    const std::uint64_t half = state_.half();
    const std::uint64_t quarter = state_.quarter();
    for (;;) {
      if (state_.high < half) {
        state_.pending = 0;
      } else if (state_.low >= half) {
        state_.low -= half;
        state_.high -= half;
        value_ -= half;
        state_.pending = 0;
      } else if (state_.low >= quarter && state_.high < half + quarter) {
        state_.low -= quarter;
        state_.high -= quarter;
        value_ -= quarter;
        ++state_.pending;
      } else {
        break;
      }
      state_.low <<= 1;
      state_.high = (state_.high << 1) | 1;
      value_ = (value_ << 1) | next_stream_bit();
      ++state_.shifts;
    }
  }

  const ArithmeticCodec& codec_;
  bitio::BitMessage message_;
  Rng pad_rng_;
  ArithmeticState state_;
  std::uint64_t value_ = 0;
  std::size_t stream_pos_ = 0;
};

class ArithmeticDecoder final : public StepDecoder {
 public:
  explicit ArithmeticDecoder(const ArithmeticCodec& codec) : codec_(codec), state_(codec.precision()) {}

  std::uint32_t step(const lm::ConditionalDistribution& dist, TokenId token) override {
    const auto top = top_entries(dist, codec_.h());
    std::size_t at = top.size();
    for (std::size_t i = 0; i < top.size(); ++i) {
      if (top[i].id == token) {
        at = i;
        break;
      }
    }
    if (at == top.size()) {
      throw DesyncError("arithmetic: token " + std::to_string(token) + " is outside the top " +
                        std::to_string(codec_.h()) + " tokens");
    }
    const auto cum = cumulative(top);
    const std::uint64_t total = cum.back();
    const std::size_t before = bits_.size();
    const std::uint64_t new_high = state_.edge(cum[at + 1], total) - 1;
    state_.low = state_.edge(cum[at], total);
    state_.high = new_high;
    renormalize();
    return static_cast<std::uint32_t>(bits_.size() - before);
  }

  const bitio::Bits& bits() const override { return bits_; }

 private:
  void emit(bool bit) {
    bits_.push_back(bit);
    bits_.insert(bits_.end(), state_.pending, !bit);
    state_.pending = 0;
  }

  void renormalize() {
    const std::uint64_t half = state_.half();
    const std::uint64_t quarter = state_.quarter();
    for (;;) {
      if (state_.high < half) {
        emit(false);
      } else if (state_.low >= half) {
        state_.low -= half;
        state_.high -= half;
        emit(true);
      } else if (state_.low >= quarter && state_.high < half + quarter) {
        state_.low -= quarter;
        state_.high -= quarter;
        ++state_.pending;
      } else {
        break;
      }
      state_.low <<= 1;
      state_.high = (state_.high << 1) | 1;
      ++state_.shifts;
    }
  }

  const ArithmeticCodec& codec_;
  ArithmeticState state_;
  bitio::Bits bits_;
};

inline std::unique_ptr<StepEncoder> ArithmeticCodec::encoder(bitio::BitMessage message, Seeds seeds) const {
  return std::make_unique<ArithmeticEncoder>(*this, std::move(message), seeds);
}
inline std::unique_ptr<StepDecoder> ArithmeticCodec::decoder() const {
  return std::make_unique<ArithmeticDecoder>(*this);
}

// ---------------------------------------------------------------------------
// Construction from a textual description.

struct CodecSpec {
  std::string method = "adg";
  unsigned b = 3;
  unsigned k = 3;
  double delta = 1.5;
  std::size_t h = 300;
  unsigned precision = ArithmeticCodec::kDefaultPrecision;
};

/// Parses "adg", "bins:b=3", "huffman:k=2", "patient_huffman:k=3,delta=1.5"
/// or "arithmetic:h=300" (also accepts ';' between parameters). Parameters
/// not named in `text` keep their values from `base`.
inline CodecSpec parse_codec_spec(const std::string& text, CodecSpec base = {}) {
  CodecSpec spec = std::move(base);
  const auto colon = text.find(':');
  spec.method = text.substr(0, colon);
  if (spec.method != "adg" && spec.method != "bins" && spec.method != "huffman" && spec.method != "patient_huffman" &&
      spec.method != "arithmetic") {
    throw PreconditionError("unknown method '" + spec.method + "'");
  }
  if (colon == std::string::npos) return spec;
  std::string rest = text.substr(colon + 1);
  std::replace(rest.begin(), rest.end(), ';', ',');
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw PreconditionError("codec parameter '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (key == "b") {
        spec.b = static_cast<unsigned>(std::stoul(value));
      } else if (key == "k") {
        spec.k = static_cast<unsigned>(std::stoul(value));
      } else if (key == "delta") {
        spec.delta = value == "inf" ? std::numeric_limits<double>::infinity() : std::stod(value);
      } else if (key == "h") {
        spec.h = std::stoul(value);
      } else if (key == "precision") {
        spec.precision = static_cast<unsigned>(std::stoul(value));
      } else {
        throw PreconditionError("unknown codec parameter '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw PreconditionError("bad value for codec parameter '" + key + "': " + value);
    }
  }
  return spec;
}

inline std::unique_ptr<Codec> make_codec(const CodecSpec& spec, std::size_t vocab_size, std::uint64_t partition_seed) {
  if (spec.method == "adg") return std::make_unique<AdgCodec>();
  if (spec.method == "bins") return std::make_unique<BinsCodec>(spec.b, vocab_size, partition_seed);
  if (spec.method == "huffman") return std::make_unique<HuffmanCodec>(spec.k);
  if (spec.method == "patient_huffman") return std::make_unique<HuffmanCodec>(spec.k, spec.delta);
  if (spec.method == "arithmetic") return std::make_unique<ArithmeticCodec>(spec.h, spec.precision);
  throw PreconditionError("unknown method '" + spec.method + "'");
}

}  // namespace adgstego::stego

#endif  // ADGSTEGO_BASELINES_HPP
