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

// Secret messages as framed bitstreams.
//
// A frame is a 32-bit big-endian payload length followed by the payload.
// Once the frame is used up, readers keep receiving uniformly random
// padding bits, so the tail of a stegotext is statistically no different
// from its body. The receiver reads the header and ignores the padding.
// Codecs see the frame whitened with a public keystream so that the header
// looks like any other bits.

#ifndef ADGSTEGO_BITIO_HPP
#define ADGSTEGO_BITIO_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adgstego/common.hpp"
#include "adgstego/random.hpp"

namespace adgstego::bitio {

using Bits = std::vector<bool>;

inline constexpr unsigned kHeaderBits = 32;
inline constexpr unsigned kMaxIndexBits = 32;

/// Bit sequence with a read cursor.
class BitMessage {
 public:
  BitMessage() = default;
  explicit BitMessage(Bits bits) : bits_(std::move(bits)) {}

  const Bits& bits() const noexcept { return bits_; }
  std::size_t size() const noexcept { return bits_.size(); }
  /// Read position within the message, in [0, size()].
  std::size_t cursor() const noexcept { return position_ < bits_.size() ? position_ : bits_.size(); }
  /// Bits read so far, padding included.
  std::size_t position() const noexcept { return position_; }
  std::size_t remaining() const noexcept { return bits_.size() - cursor(); }
  bool exhausted() const noexcept { return position_ >= bits_.size(); }

  /// Bit at absolute position `pos`. Positions past the end are padding,
  /// drawn from `pad_rng` the first time they are requested and then
  /// remembered, so repeated peeks agree.
  template <Word64Generator G>
  bool peek(std::size_t pos, G& pad_rng) {
    if (pos < bits_.size()) return bits_[pos];
    const std::size_t pad_pos = pos - bits_.size();
    while (padding_.size() <= pad_pos) padding_.push_back(random_bit(pad_rng));
    return padding_[pad_pos];
  }

  /// Moves the read position forward by `n` bits. The cursor stops at the
  /// end of the message; the position keeps counting into the padding.
  void advance(std::size_t n) noexcept { position_ += n; }

 private:
  Bits bits_;
  Bits padding_;
  std::size_t position_ = 0;
};

inline Bits bytes_to_bits(std::span<const std::uint8_t> bytes) {
  Bits out;
  out.reserve(bytes.size() * 8);
  for (std::uint8_t byte : bytes) {
    for (int shift = 7; shift >= 0; --shift) out.push_back(((byte >> shift) & 1U) != 0);
  }
  return out;
}

/// Packs bits MSB-first. The bit count must be a whole number of bytes.
inline std::vector<std::uint8_t> bits_to_bytes(const Bits& bits) {
  if (bits.size() % 8 != 0) {
    throw PreconditionError("bits_to_bytes: " + std::to_string(bits.size()) +
                            " bits is not a whole number of bytes");
  }
  std::vector<std::uint8_t> out(bits.size() / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out[i / 8] = static_cast<std::uint8_t>(out[i / 8] | (0x80U >> (i % 8)));
  }
  return out;
}

/// "0101" style rendering.
inline std::string to_string(const Bits& bits) {
  std::string s;
  s.reserve(bits.size());
  for (bool b : bits) s.push_back(b ? '1' : '0');
  return s;
}

inline Bits parse_bits(std::string_view text) {
  Bits out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw PreconditionError("parse_bits: unexpected character");
    out.push_back(c == '1');
  }
  return out;
}

inline std::vector<std::uint8_t> parse_hex(std::string_view text) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
  if (text.size() % 2 != 0) throw PreconditionError("hex payload has an odd number of digits");
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 2);
  for (std::size_t i = 0; i < text.size(); i += 2) {
    const int hi = nibble(text[i]);
    const int lo = nibble(text[i + 1]);
    if (hi < 0 || lo < 0) throw PreconditionError("hex payload contains a non-hex digit");
    out.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
  }
  return out;
}

inline std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xF]);
  }
  return s;
}

/// Header ∥ payload, cursor at 0.
inline BitMessage frame(const Bits& payload) {
  if (payload.size() > 0xFFFFFFFFULL) {
    throw PreconditionError("frame: payload of " + std::to_string(payload.size()) +
                            " bits does not fit a 32-bit length header");
  }
  Bits bits;
  bits.reserve(kHeaderBits + payload.size());
  const auto n = static_cast<std::uint32_t>(payload.size());
  for (int shift = 31; shift >= 0; --shift) bits.push_back(((n >> shift) & 1U) != 0);
  bits.insert(bits.end(), payload.begin(), payload.end());
  return BitMessage(std::move(bits));
}

inline BitMessage frame(std::span<const std::uint8_t> payload) {
  return frame(bytes_to_bits(payload));
}

/// Reads the length header and returns exactly that many payload bits.
/// Anything after the payload is padding and is ignored.
inline Bits deframe(const Bits& bits) {
  if (bits.size() < kHeaderBits) {
    throw TruncationError("deframe: " + std::to_string(bits.size()) +
                          " bits is shorter than the 32-bit header");
  }
  std::uint64_t n = 0;
  for (unsigned i = 0; i < kHeaderBits; ++i) n = (n << 1) | (bits[i] ? 1U : 0U);
  if (bits.size() - kHeaderBits < n) {
    throw TruncationError("deframe: header announces " + std::to_string(n) +
                          " payload bits but only " +
                          std::to_string(bits.size() - kHeaderBits) + " follow");
  }
  return Bits(bits.begin() + kHeaderBits, bits.begin() + static_cast<std::ptrdiff_t>(kHeaderBits + n));
}

inline constexpr std::uint64_t kWhiteningSeed = 0x6164677374656730ULL;

/// XORs `bits` with a fixed public keystream. Applying it twice restores
/// the input. This is not encryption: it only keeps structured bits such
/// as a mostly-zero length header from steering every stegotext toward the
/// same groups.
inline Bits whiten(Bits bits) {
  std::uint64_t state = kWhiteningSeed;
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (i % 64 == 0) word = splitmix64(state);
    if ((word >> (i % 64)) & 1U) bits[i] = !bits[i];
  }
  return bits;
}

/// Consumes `r` bits MSB-first and returns them as a group index. When
/// fewer than `r` payload bits remain, the missing low bits are padding.
template <Word64Generator G>
std::uint64_t next_index(BitMessage& msg, unsigned r, G& pad_rng) {
  if (r > kMaxIndexBits) throw PreconditionError("next_index: r must be at most 32");
  std::uint64_t index = 0;
  const std::size_t start = msg.position();
  for (unsigned i = 0; i < r; ++i) index = (index << 1) | (msg.peek(start + i, pad_rng) ? 1U : 0U);
  msg.advance(r);
  return index;
}

/// Big-endian `r`-bit representation of `index`.
inline Bits index_to_bits(std::uint64_t index, unsigned r) {
  if (r > kMaxIndexBits || (r < 64 && index >= (std::uint64_t{1} << r))) {
    throw PreconditionError("index_to_bits: index " + std::to_string(index) +
                            " does not fit in " + std::to_string(r) + " bits");
  }
  Bits out(r);
  for (unsigned i = 0; i < r; ++i) out[i] = ((index >> (r - 1 - i)) & 1U) != 0;
  return out;
}

}  // namespace adgstego::bitio

#endif  // ADGSTEGO_BITIO_HPP
