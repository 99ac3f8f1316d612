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

#include <algorithm>

#include "support.hpp"

namespace {

using namespace adgstego;
using bitio::Bits;
using testing_support::random_bits;

// Fixed generator that always yields the same word.
struct ConstantGenerator {
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type value;
  result_type operator()() { return value; }
};

TEST(Frame, EmptyPayloadIsThirtyTwoZeroBits) {
  const auto m = bitio::frame(Bits{});
  EXPECT_EQ(m.size(), 32u);
  EXPECT_EQ(bitio::to_string(m.bits()), std::string(32, '0'));
  EXPECT_EQ(m.cursor(), 0u);
}

TEST(Frame, ByteA5) {
  const std::vector<std::uint8_t> payload{0xA5};
  const auto m = bitio::frame(std::span<const std::uint8_t>(payload));
  EXPECT_EQ(bitio::to_string(m.bits()), "00000000000000000000000000001000" "10100101");
}

TEST(Deframe, ZeroHeaderIgnoresGarbage) {
  Bits b(32, false);
  b.push_back(true);
  b.push_back(false);
  EXPECT_TRUE(bitio::deframe(b).empty());
}

TEST(Deframe, DropsPadding) {
  const auto b = bitio::parse_bits("00000000000000000000000000001000" "10100101" "0101");
  EXPECT_EQ(bitio::to_hex(bitio::bits_to_bytes(bitio::deframe(b))), "a5");
}

TEST(Deframe, TruncatedPayload) {
  const auto b = bitio::parse_bits("00000000000000000000000000010000" "10100101");
  EXPECT_THROW(bitio::deframe(b), TruncationError);
}

TEST(Deframe, ShortHeader) { EXPECT_THROW(bitio::deframe(Bits(31, false)), TruncationError); }

TEST(Whiten, InvolutionAndBalancedHeader) {
  Rng rng(5);
  for (std::size_t n : {0, 1, 63, 64, 65, 1000}) {
    Bits b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = random_bit(rng);
    ASSERT_EQ(bitio::whiten(bitio::whiten(b)), b);
  }
  // A zero header comes out with both bit values well represented.
  const auto w = bitio::whiten(Bits(32, false));
  const auto ones = std::count(w.begin(), w.end(), true);
  EXPECT_GE(ones, 8);
  EXPECT_LE(ones, 24);
  // Prefixes agree, so the receiver can whiten whatever length it recovered.
  const auto longer = bitio::whiten(Bits(100, false));
  EXPECT_TRUE(std::equal(w.begin(), w.end(), longer.begin()));
}

TEST(Frame, ExhaustiveRoundTripUpTo16Bits) {
  for (unsigned len = 0; len <= 16; ++len) {
    for (std::uint32_t v = 0; v < (1U << len); ++v) {
      Bits payload(len);
      for (unsigned i = 0; i < len; ++i) payload[i] = ((v >> (len - 1 - i)) & 1U) != 0;
      ASSERT_EQ(bitio::deframe(bitio::frame(payload).bits()), payload);
    }
  }
}

TEST(Frame, RandomRoundTrip) {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const auto payload = random_bits(rng, uniform_below(rng, 2049));
    ASSERT_EQ(bitio::deframe(bitio::frame(payload).bits()), payload);
  }
}

TEST(NextIndex, BigEndian) {
  bitio::BitMessage m(bitio::parse_bits("110"));
  Rng pad(1);
  EXPECT_EQ(bitio::next_index(m, 2, pad), 3u);
  EXPECT_EQ(m.cursor(), 2u);
}

TEST(NextIndex, PadsFromGeneratorWhenExhausted) {
  bitio::BitMessage m;
  ConstantGenerator zero{0};
  EXPECT_EQ(bitio::next_index(m, 1, zero), 0u);
  EXPECT_EQ(m.cursor(), 0u);
  ConstantGenerator ones{~std::uint64_t{0}};
  bitio::BitMessage m2(bitio::parse_bits("0"));
  EXPECT_EQ(bitio::next_index(m2, 3, ones), 3u);  // 0 then two padding ones
  EXPECT_TRUE(m2.exhausted());
  EXPECT_EQ(m2.cursor(), 1u);
}

TEST(NextIndex, PaddingIsFreshAfterExhaustion) {
  // Padding drawn past the end keeps advancing instead of re-reading.
  bitio::BitMessage m;
  Rng pad(99);
  Rng ref(99);
  for (int i = 0; i < 64; ++i) {
    ASSERT_EQ(bitio::next_index(m, 1, pad), random_bit(ref) ? 1u : 0u);
  }
}

TEST(NextIndex, RejectsWideIndex) {
  bitio::BitMessage m;
  Rng pad(1);
  EXPECT_THROW(bitio::next_index(m, 33, pad), PreconditionError);
}

TEST(IndexToBits, Examples) {
  EXPECT_EQ(bitio::to_string(bitio::index_to_bits(3, 2)), "11");
  EXPECT_EQ(bitio::to_string(bitio::index_to_bits(0, 4)), "0000");
  EXPECT_THROW(bitio::index_to_bits(4, 2), PreconditionError);
}

TEST(IndexToBits, InverseOfNextIndex) {
  Rng rng(3);
  Rng pad(4);
  for (int i = 0; i < 100000; ++i) {
    const auto bits = random_bits(rng, 1 + uniform_below(rng, 40));
    bitio::BitMessage m(bits);
    Bits restored;
    while (!m.exhausted()) {
      const unsigned r = static_cast<unsigned>(1 + uniform_below(rng, 32));
      const std::size_t before = m.cursor();
      const auto chunk = bitio::index_to_bits(bitio::next_index(m, r, pad), r);
      const std::size_t real = m.cursor() - before;
      ASSERT_TRUE(std::equal(chunk.begin(), chunk.begin() + static_cast<std::ptrdiff_t>(real),
                             bits.begin() + static_cast<std::ptrdiff_t>(before)));
      restored.insert(restored.end(), chunk.begin(), chunk.begin() + static_cast<std::ptrdiff_t>(real));
    }
    ASSERT_EQ(restored, bits);
  }
}

TEST(Hex, RoundTripAndErrors) {
  EXPECT_EQ(bitio::to_hex(bitio::parse_hex("0xDEADbeef")), "deadbeef");
  EXPECT_THROW(bitio::parse_hex("abc"), PreconditionError);
  EXPECT_THROW(bitio::parse_hex("zz"), PreconditionError);
  EXPECT_THROW(bitio::bits_to_bytes(Bits(7)), PreconditionError);
}

}  // namespace
