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

// Adaptive dynamic grouping (ADG).
//
// At every generation step the next-token distribution is split into
// u = 2^r groups of (nearly) equal total mass and r secret bits pick one
// group. Only the selected group is grouped again, recursively, until its
// heaviest member holds more than half of its mass; a token is then drawn
// from that final group in proportion to its mass. When every group holds
// exactly 1/u, the induced token distribution equals the model's.
//
// All grouping decisions use exact integer arithmetic on quantized masses,
// so the receiver rebuilds the same groups and reads the indices back.

#ifndef ADGSTEGO_ADG_HPP
#define ADGSTEGO_ADG_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "adgstego/bitio.hpp"
#include "adgstego/common.hpp"
#include "adgstego/distribution.hpp"
#include "adgstego/random.hpp"

namespace adgstego::adg {

using lm::TokenMass;

struct Group {
  std::vector<TokenMass> members;  // heaviest first
  std::uint64_t total_mass = 0;
};

struct Grouping {
  std::vector<Group> groups;
  std::uint64_t level_mass = 0;

  /// r = log2(u).
  unsigned bits() const noexcept { return static_cast<unsigned>(std::countr_zero(groups.size())); }
};

/// Largest power of two u with u * max_mass ≤ level_mass, i.e.
/// 2^floor(-log2 p_max) computed without floating point.
inline std::uint64_t group_count(std::uint64_t max_mass, std::uint64_t level_mass) {
  if (level_mass == 0) throw PreconditionError("group_count: zero level mass");
  if (max_mass == 0 || max_mass > level_mass) {
    throw PreconditionError("group_count: max mass must lie in [1, level mass]");
  }
  std::uint64_t u = 1;
  while (u < (std::uint64_t{1} << 62) && 2 * u <= level_mass / max_mass) u *= 2;
  return u;
}

/// Recursion continues while the heaviest entry holds at most half of the
/// level's mass.
inline bool divisible(std::span<const TokenMass> level) {
  return level.size() > 1 && 2 * level.front().mass <= lm::total_mass(level);
}

namespace detail {

// Entries of a heaviest-first level that have not been placed in a group
// yet. Taken entries are skipped through path-compressed "next alive"
// links in both directions, so every lookup stays close to O(log n).
class Pool {
 public:
  explicit Pool(std::span<const TokenMass> level)
      : entries_(level), right_(level.size() + 1), left_(level.size() + 1) {
    for (std::size_t i = 0; i <= level.size(); ++i) right_[i] = left_[i] = i;
  }

  std::size_t size() const noexcept { return alive_; }
  const TokenMass& operator[](std::size_t i) const { return entries_[i]; }

  /// First alive index ≥ i, or n.
  std::size_t next(std::size_t i) { return find(right_, i); }
  /// Last alive index ≤ i, or npos. Indices are shifted by one internally.
  std::size_t prev(std::size_t i) {
    const std::size_t j = find(left_, i + 1);
    return j == 0 ? npos : j - 1;
  }

  void take(std::size_t i) {
    right_[i] = i + 1;
    left_[i + 1] = i;
    --alive_;
  }

  /// Alive entry whose mass is nearest deficit / den. Equidistant
  /// candidates resolve to the lighter one, equal masses to the lowest id.
  std::size_t nearest(std::uint64_t deficit, std::uint64_t den) {
    const std::size_t n = entries_.size();
    // First position strictly lighter than the target, alive or not.
    const auto split = static_cast<std::size_t>(
        std::partition_point(entries_.begin(), entries_.end(),
                             [&](const TokenMass& e) { return e.mass * den >= deficit; }) -
        entries_.begin());
    const std::size_t lighter = next(split);
    const std::size_t heavier_last = split == 0 ? npos : prev(split - 1);
    if (heavier_last == npos) return lighter;
    // Lowest id among alive entries of the heavier candidate's mass.
    const std::uint64_t m = entries_[heavier_last].mass;
    const auto run = static_cast<std::size_t>(
        std::partition_point(entries_.begin(), entries_.end(), [&](const TokenMass& e) { return e.mass > m; }) -
        entries_.begin());
    const std::size_t heavier = next(run);
    if (lighter == n) return heavier;
    const std::uint64_t above = m * den - deficit;
    const std::uint64_t below = deficit - entries_[lighter].mass * den;
    return below <= above ? lighter : heavier;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  static std::size_t find(std::vector<std::size_t>& link, std::size_t i) {
    std::size_t root = i;
    while (link[root] != root) root = link[root];
    while (link[i] != root) {
      const std::size_t up = link[i];
      link[i] = root;
      i = up;
    }
    return root;
  }

  std::span<const TokenMass> entries_;
  std::vector<std::size_t> right_;
  std::vector<std::size_t> left_;
  std::size_t alive_ = entries_.size();
};

}  // namespace detail

/// Splits a heaviest-first level into u = group_count(...) groups of nearly
/// equal mass.
///
/// For each of the first u-1 groups: seed it with the heaviest remaining
/// entry, then, while the group is lighter than the running mean, take the
/// remaining entry whose mass is nearest the shortfall ε, provided its mass
/// is below 2ε. The mean is then reset to (remaining mass) / (groups left).
/// Whatever remains forms the last group. The mean is kept as an exact
/// fraction. Members of each group are returned heaviest first.
inline Grouping equal_group(std::span<const TokenMass> level) {
  if (level.empty()) throw PreconditionError("equal_group: empty level");
  if (!std::is_sorted(level.begin(), level.end(), lm::heavier)) {
    throw PreconditionError("equal_group: entries must be sorted heaviest first");
  }
  Grouping out;
  out.level_mass = lm::total_mass(level);
  const std::uint64_t u = group_count(level.front().mass, out.level_mass);
  if (!std::has_single_bit(u)) throw InternalError("equal_group: group count is not a power of two");
  out.groups.reserve(u);

  detail::Pool pool(level);
  std::uint64_t remaining = out.level_mass;
  // mean = mean_num / mean_den
  std::uint64_t mean_num = out.level_mass;
  std::uint64_t mean_den = u;

  for (std::uint64_t i = 1; i < u; ++i) {
    if (pool.size() == 0) throw InternalError("equal_group: ran out of tokens before the last group");
    const std::size_t seed = pool.next(0);
    Group g;
    g.members.push_back(pool[seed]);
    g.total_mass = pool[seed].mass;
    pool.take(seed);
    while (g.total_mass * mean_den < mean_num && pool.size() > 0) {
      const std::uint64_t deficit = mean_num - g.total_mass * mean_den;  // ε * mean_den
      const std::size_t pick = pool.nearest(deficit, mean_den);
      if (!(pool[pick].mass * mean_den < 2 * deficit)) break;
      g.members.push_back(pool[pick]);
      g.total_mass += pool[pick].mass;
      pool.take(pick);
    }
    if (!std::is_sorted(g.members.begin(), g.members.end(), lm::heavier)) {
      std::sort(g.members.begin(), g.members.end(), lm::heavier);
    }
    remaining -= g.total_mass;
    mean_num = remaining;
    mean_den = u - i;
    out.groups.push_back(std::move(g));
  }

  Group last;
  last.members.reserve(pool.size());
  for (std::size_t j = pool.next(0); j < level.size(); j = pool.next(j + 1)) last.members.push_back(pool[j]);
  last.total_mass = remaining;
  if (last.members.empty()) throw InternalError("equal_group: last group is empty");
  out.groups.push_back(std::move(last));
  return out;
}

inline Grouping equal_group(const lm::ConditionalDistribution& dist) { return equal_group(dist.entries()); }

/// One recursion level of an embedding or extraction step.
struct LevelChoice {
  std::uint64_t groups = 1;      // u at this level
  std::uint64_t index = 0;       // selected group
  std::uint64_t group_mass = 0;  // mass of the selected group
  std::uint64_t level_mass = 0;  // mass being grouped
};

struct EmbedStep {
  TokenId token = 0;
  unsigned bits = 0;
  std::vector<LevelChoice> levels;
};

/// Draws a member of `level` in proportion to its mass.
template <Word64Generator G>
TokenId sample_token(std::span<const TokenMass> level, G& rng) {
  const std::uint64_t total = lm::total_mass(level);
  std::uint64_t x = uniform_below(rng, total);
  for (const auto& e : level) {
    if (x < e.mass) return e.id;
    x -= e.mass;
  }
  throw InternalError("sample_token: cumulative walk overran the level");
}

/// Embeds bits from `msg` into one token. Each recursion level consumes
/// log2(u) bits; at the first level where the heaviest entry holds more
/// than half of the mass, a token is sampled with `sample_rng`.
template <Word64Generator S, Word64Generator P>
EmbedStep embed_step(std::span<const TokenMass> dist, bitio::BitMessage& msg, S& sample_rng, P& pad_rng) {
  if (dist.empty()) throw PreconditionError("embed_step: empty distribution");
  EmbedStep step;
  std::vector<TokenMass> level(dist.begin(), dist.end());
  while (divisible(level)) {
    Grouping grouping = equal_group(level);
    const unsigned r = grouping.bits();
    const std::uint64_t index = bitio::next_index(msg, r, pad_rng);
    Group& chosen = grouping.groups[index];
    step.levels.push_back({grouping.groups.size(), index, chosen.total_mass, grouping.level_mass});
    step.bits += r;
    level = std::move(chosen.members);
  }
  step.token = sample_token(std::span<const TokenMass>(level), sample_rng);
  return step;
}

template <Word64Generator S, Word64Generator P>
EmbedStep embed_step(const lm::ConditionalDistribution& dist, bitio::BitMessage& msg, S& sample_rng,
                     P& pad_rng) {
  return embed_step(dist.entries(), msg, sample_rng, pad_rng);
}

/// Replays the recursion of embed_step and returns the bits that select
/// the groups containing `token`. Throws DesyncError if the token is not
/// in the distribution.
inline bitio::Bits extract_step(std::span<const TokenMass> dist, TokenId token,
                                std::vector<LevelChoice>* levels = nullptr) {
  const auto present = std::any_of(dist.begin(), dist.end(), [&](const TokenMass& e) { return e.id == token; });
  if (!present) throw DesyncError("extract_step: token " + std::to_string(token) + " is not in the distribution");
  bitio::Bits bits;
  std::vector<TokenMass> level(dist.begin(), dist.end());
  while (divisible(level)) {
    Grouping grouping = equal_group(level);
    const unsigned r = grouping.bits();
    std::size_t index = 0;
    for (; index < grouping.groups.size(); ++index) {
      const auto& m = grouping.groups[index].members;
      if (std::any_of(m.begin(), m.end(), [&](const TokenMass& e) { return e.id == token; })) break;
    }
    if (index == grouping.groups.size()) throw InternalError("extract_step: token vanished from the grouping");
    const auto chunk = bitio::index_to_bits(index, r);
    bits.insert(bits.end(), chunk.begin(), chunk.end());
    if (levels) {
      levels->push_back({grouping.groups.size(), index, grouping.groups[index].total_mass, grouping.level_mass});
    }
    level = std::move(grouping.groups[index].members);
  }
  return bits;
}

inline bitio::Bits extract_step(const lm::ConditionalDistribution& dist, TokenId token) {
  return extract_step(dist.entries(), token);
}

/// Token distribution induced by embedding uniformly random bits, in entry
/// order: the product of 1/u over the recursion levels leading to a final
/// group, times the token's share of that final group.
inline std::vector<double> implicit_q(std::span<const TokenMass> dist) {
  std::unordered_map<TokenId, std::size_t> position;
  position.reserve(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) position.emplace(dist[i].id, i);

  std::vector<double> q(dist.size(), 0.0);
  struct Pending {
    std::vector<TokenMass> level;
    double weight;
  };
  std::vector<Pending> stack;
  stack.push_back({std::vector<TokenMass>(dist.begin(), dist.end()), 1.0});
  while (!stack.empty()) {
    Pending item = std::move(stack.back());
    stack.pop_back();
    if (!divisible(item.level)) {
      const auto total = static_cast<double>(lm::total_mass(item.level));
      for (const auto& e : item.level) {
        q[position.at(e.id)] = item.weight * static_cast<double>(e.mass) / total;
      }
      continue;
    }
    Grouping grouping = equal_group(item.level);
    const double share = item.weight / static_cast<double>(grouping.groups.size());
    for (auto& g : grouping.groups) stack.push_back({std::move(g.members), share});
  }
  return q;
}

inline std::vector<double> implicit_q(const lm::ConditionalDistribution& dist) {
  return implicit_q(dist.entries());
}

/// Single-level induced distribution p_ij / (u η_i), aligned with `level`.
inline std::vector<double> single_level_q(std::span<const TokenMass> level, const Grouping& grouping) {
  std::unordered_map<TokenId, double> q_by_id;
  const auto u = static_cast<double>(grouping.groups.size());
  for (const auto& g : grouping.groups) {
    for (const auto& e : g.members) {
      q_by_id[e.id] = static_cast<double>(e.mass) / (u * static_cast<double>(g.total_mass));
    }
  }
  std::vector<double> q(level.size());
  for (std::size_t i = 0; i < level.size(); ++i) q[i] = q_by_id.at(level[i].id);
  return q;
}

/// Σ η_i log2(u η_i): KL(p‖q) of one grouping level expressed through the
/// group masses alone, in bits. Zero iff all η_i are equal.
inline double group_divergence(std::span<const double> eta) {
  const auto u = static_cast<double>(eta.size());
  double sum = 0.0;
  for (double e : eta) {
    if (e > 0.0) sum += e * std::log2(u * e);
  }
  return sum;
}

inline std::vector<double> group_shares(const Grouping& grouping) {
  std::vector<double> eta;
  eta.reserve(grouping.groups.size());
  for (const auto& g : grouping.groups) {
    eta.push_back(static_cast<double>(g.total_mass) / static_cast<double>(grouping.level_mass));
  }
  return eta;
}

}  // namespace adgstego::adg

#endif  // ADGSTEGO_ADG_HPP
