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

// Fixed-point next-token distributions.
//
// Sender and receiver must group tokens identically, so every codec works
// on integer masses over the denominator 2^31. Floating point appears only
// once, when a model's probabilities are quantized; from then on all
// comparisons are exact.

#ifndef ADGSTEGO_DISTRIBUTION_HPP
#define ADGSTEGO_DISTRIBUTION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "adgstego/common.hpp"

namespace adgstego::lm {

inline constexpr std::uint64_t kMassDenominator = std::uint64_t{1} << 31;
inline constexpr double kQuantizeTolerance = 1e-6;

struct TokenMass {
  TokenId id = 0;
  std::uint64_t mass = 0;

  friend bool operator==(const TokenMass&, const TokenMass&) = default;
};

/// Descending mass, ascending id among equal masses. A function object so
/// that sorting inlines it.
struct Heavier {
  bool operator()(const TokenMass& a, const TokenMass& b) const noexcept {
    return a.mass != b.mass ? a.mass > b.mass : a.id < b.id;
  }
};
inline constexpr Heavier heavier{};

inline std::uint64_t total_mass(std::span<const TokenMass> entries) noexcept {
  std::uint64_t total = 0;
  for (const auto& e : entries) total += e.mass;
  return total;
}

namespace detail {

// Adds `deficit` units to the entries with the largest remainders; ties go
// to the lower index.
template <class RemainderGreater>
void distribute_deficit(std::vector<std::uint64_t>& counts, std::uint64_t deficit,
                        RemainderGreater remainder_greater) {
  if (deficit == 0) return;
  const std::size_t n = counts.size();
  for (; deficit >= n; deficit -= n) {
    for (auto& c : counts) ++c;
  }
  if (deficit == 0) return;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Only membership of the top `deficit` matters, so a selection suffices.
  const auto before = [&](std::size_t a, std::size_t b) {
    if (remainder_greater(a, b)) return true;
    if (remainder_greater(b, a)) return false;
    return a < b;
  };
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(deficit) - 1, order.end(), before);
  for (std::size_t i = 0; i < deficit; ++i) ++counts[order[i]];
}

// Raises zero counts to one, paying for all of them from the largest entry.
inline void floor_at_one(std::vector<std::uint64_t>& counts) {
  const auto zeros = static_cast<std::uint64_t>(std::count(counts.begin(), counts.end(), std::uint64_t{0}));
  if (zeros == 0) return;
  const auto largest = static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
  if (counts[largest] <= zeros) throw QuantizeError("quantize: too many entries for the denominator");
  counts[largest] -= zeros;
  for (auto& c : counts) {
    if (c == 0) c = 1;
  }
}

}  // namespace detail

/// Largest-remainder apportionment of 2^31 to `probs`.
///
/// Inputs must be finite, non-negative and sum to 1 within 1e-6; they are
/// renormalized before apportioning. Entries that would receive nothing
/// are raised to 1, the difference taken from the largest entry, so every
/// token stays reachable. The result always sums to exactly 2^31.
inline std::vector<std::uint64_t> quantize(std::span<const double> probs) {
  if (probs.empty()) throw QuantizeError("quantize: empty distribution");
  if (probs.size() > kMassDenominator) throw QuantizeError("quantize: too many entries");
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) throw QuantizeError("quantize: probabilities must be finite and non-negative");
    sum += p;
  }
  if (!(std::fabs(sum - 1.0) <= kQuantizeTolerance)) {
    throw QuantizeError("quantize: probabilities sum to " + std::to_string(sum) + ", not 1");
  }

  const auto denom = static_cast<double>(kMassDenominator);
  std::vector<std::uint64_t> counts(probs.size());
  std::vector<double> remainders(probs.size());
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double scaled = probs[i] / sum * denom;
    const double whole = std::floor(scaled);
    counts[i] = static_cast<std::uint64_t>(whole);
    remainders[i] = scaled - whole;
    assigned += counts[i];
  }
  if (assigned > kMassDenominator) throw InternalError("quantize: floors exceed the denominator");
  detail::distribute_deficit(counts, kMassDenominator - assigned, [&](std::size_t a, std::size_t b) {
    return remainders[a] > remainders[b];
  });
  detail::floor_at_one(counts);
  return counts;
}

/// Exact integer rescale of `masses` to sum to `target`, largest remainder
/// first. Every input mass must be positive and target ≥ their sum, so no
/// entry can drop to zero.
inline std::vector<std::uint64_t> rescale_masses(std::span<const std::uint64_t> masses,
                                                 std::uint64_t target) {
  const std::uint64_t sum = std::accumulate(masses.begin(), masses.end(), std::uint64_t{0});
  if (sum == 0) throw PreconditionError("rescale_masses: zero total mass");
  std::vector<std::uint64_t> counts(masses.size());
  std::vector<std::uint64_t> remainders(masses.size());
  std::uint64_t assigned = 0;
  const bool narrow = target <= 0xFFFFFFFFULL && std::all_of(masses.begin(), masses.end(),
                                                             [](std::uint64_t m) { return m <= 0xFFFFFFFFULL; });
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (narrow) {
      const std::uint64_t product = masses[i] * target;
      counts[i] = product / sum;
      remainders[i] = product % sum;
    } else {
      const auto product = static_cast<unsigned __int128>(masses[i]) * target;
      counts[i] = static_cast<std::uint64_t>(product / sum);
      remainders[i] = static_cast<std::uint64_t>(product % sum);
    }
    assigned += counts[i];
  }
  detail::distribute_deficit(counts, target - assigned, [&](std::size_t a, std::size_t b) {
    return remainders[a] > remainders[b];
  });
  detail::floor_at_one(counts);
  return counts;
}

/// Quantized next-token distribution: strictly positive integer masses
/// summing to 2^31, ordered heaviest first with ties broken by lower id.
class ConditionalDistribution {
 public:
  ConditionalDistribution() = default;

  /// Validates and sorts. Throws PreconditionError on duplicate ids, zero
  /// masses or a total other than 2^31.
  static ConditionalDistribution from_masses(std::vector<TokenMass> entries) {
    if (entries.empty()) throw PreconditionError("distribution: no entries");
    TokenId max_id = 0;
    for (const auto& e : entries) max_id = std::max(max_id, e.id);
    std::vector<char> seen;
    std::unordered_set<TokenId> seen_sparse;
    const bool dense = max_id < 4 * entries.size() + 4096;
    if (dense) seen.resize(static_cast<std::size_t>(max_id) + 1);
    std::uint64_t total = 0;
    for (const auto& e : entries) {
      if (e.mass == 0) throw PreconditionError("distribution: zero mass for token " + std::to_string(e.id));
      const bool fresh = dense ? !seen[e.id] : seen_sparse.insert(e.id).second;
      if (!fresh) throw PreconditionError("distribution: duplicate token " + std::to_string(e.id));
      if (dense) seen[e.id] = 1;
      total += e.mass;
    }
    if (total != kMassDenominator) {
      throw PreconditionError("distribution: masses sum to " + std::to_string(total) + ", not 2^31");
    }
    if (!std::is_sorted(entries.begin(), entries.end(), heavier)) sort_heaviest_first(entries);
    ConditionalDistribution d;
    d.entries_ = std::move(entries);
    return d;
  }

  /// Quantizes `probs` (aligned with `ids`) and sorts.
  static ConditionalDistribution from_probabilities(std::span<const TokenId> ids,
                                                    std::span<const double> probs) {
    if (ids.size() != probs.size()) throw PreconditionError("distribution: ids and probs differ in length");
    const auto masses = quantize(probs);
    std::vector<TokenMass> entries(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) entries[i] = {ids[i], masses[i]};
    return from_masses(std::move(entries));
  }

  /// All mass on one token.
  static ConditionalDistribution point(TokenId id) { return from_masses({{id, kMassDenominator}}); }

  std::span<const TokenMass> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const TokenMass& operator[](std::size_t i) const { return entries_[i]; }
  std::uint64_t max_mass() const { return entries_.front().mass; }
  double max_probability() const { return static_cast<double>(max_mass()) / static_cast<double>(kMassDenominator); }

  std::optional<std::size_t> index_of(TokenId id) const noexcept {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].id == id) return i;
    }
    return std::nullopt;
  }

  /// Probabilities mass / 2^31 in entry order.
  std::vector<double> probabilities() const {
    std::vector<double> p(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      p[i] = static_cast<double>(entries_[i].mass) / static_cast<double>(kMassDenominator);
    }
    return p;
  }

  friend bool operator==(const ConditionalDistribution&, const ConditionalDistribution&) = default;

 private:
  // Sorts packed (D - mass, id) keys, which orders exactly like heavier.
  static void sort_heaviest_first(std::vector<TokenMass>& entries) {
    std::vector<std::uint64_t> keys(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      keys[i] = ((kMassDenominator - entries[i].mass) << 32) | entries[i].id;
    }
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      entries[i] = {static_cast<TokenId>(keys[i] & 0xFFFFFFFFULL), kMassDenominator - (keys[i] >> 32)};
    }
  }

  std::vector<TokenMass> entries_;
};

/// Lowers `token` to the minimum mass 1 and rescales everything else to
/// fill the freed mass exactly. Used to keep sentences from ending early.
/// A distribution whose only entry is `token` is returned unchanged.
inline ConditionalDistribution suppress_token(const ConditionalDistribution& dist, TokenId token) {
  const auto at = dist.index_of(token);
  if (!at || dist[*at].mass == 1 || dist.size() == 1) return dist;
  std::vector<std::uint64_t> others;
  others.reserve(dist.size() - 1);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (i != *at) others.push_back(dist[i].mass);
  }
  const auto rescaled = rescale_masses(others, kMassDenominator - 1);
  std::vector<TokenMass> entries;
  entries.reserve(dist.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (i != *at) entries.push_back({dist[i].id, rescaled[k++]});
  }
  // Rescaling keeps the order up to swaps among near-equal masses, so an
  // insertion pass restores it cheaply.
  for (std::size_t i = 1; i < entries.size(); ++i) {
    for (std::size_t j = i; j > 0 && heavier(entries[j], entries[j - 1]); --j) std::swap(entries[j], entries[j - 1]);
  }
  const TokenMass lowered{token, 1};
  entries.insert(std::lower_bound(entries.begin(), entries.end(), lowered, heavier), lowered);
  return ConditionalDistribution::from_masses(std::move(entries));
}

}  // namespace adgstego::lm

#endif  // ADGSTEGO_DISTRIBUTION_HPP
