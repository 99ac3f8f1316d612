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

// Portable randomness helpers.
//
// std::mt19937_64 is fully specified by the standard, but the standard
// distributions and std::shuffle are not. Everything that must reproduce
// bit-for-bit across standard libraries goes through the helpers here.

#ifndef ADGSTEGO_RANDOM_HPP
#define ADGSTEGO_RANDOM_HPP

#include <concepts>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string_view>
#include <utility>

#include "adgstego/common.hpp"

namespace adgstego {

using Rng = std::mt19937_64;

/// A generator producing uniformly distributed full-range 64-bit words.
template <class G>
concept Word64Generator = std::uniform_random_bit_generator<G> &&
                          (G::min() == 0) &&
                          (G::max() == std::numeric_limits<std::uint64_t>::max());

/// Uniform integer in [0, bound) by rejection sampling.
template <Word64Generator G>
std::uint64_t uniform_below(G& rng, std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("uniform_below: bound must be positive");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

template <Word64Generator G>
bool random_bit(G& rng) {
  return (rng() >> 63) != 0;
}

/// Fisher-Yates shuffle driven by uniform_below.
template <class T, Word64Generator G>
void portable_shuffle(std::span<T> items, G& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;

inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t hash = kFnvOffset) {
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace adgstego

#endif  // ADGSTEGO_RANDOM_HPP
