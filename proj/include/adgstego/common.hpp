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

#ifndef ADGSTEGO_COMMON_HPP
#define ADGSTEGO_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace adgstego {

using TokenId = std::uint32_t;

// Reserved vocabulary ids. Every vocabulary and every external provider
// must agree on these.
inline constexpr TokenId kPadId = 0;
inline constexpr TokenId kUnkId = 1;
inline constexpr TokenId kBosId = 2;
inline constexpr TokenId kEosId = 3;
inline constexpr TokenId kFirstWordId = 4;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Input text is not valid UTF-8.
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Preprocessing or loading produced no usable sentences.
class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

/// Probabilities could not be turned into fixed-point masses.
class QuantizeError : public Error {
 public:
  using Error::Error;
};

/// An external language-model provider failed, timed out or replied badly.
class ProviderError : public Error {
 public:
  using Error::Error;
};

/// A framed bitstream ended before the length its header announced.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// The receiver observed a token its model cannot account for. Almost
/// always a model, vocabulary or configuration mismatch between the ends.
class DesyncError : public Error {
 public:
  using Error::Error;
};

/// The generation budget ran out before the whole frame was embedded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Model or vocabulary files are malformed or do not match each other.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A configuration value failed validation. `what()` starts with the key path.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& key, const std::string& message)
      : Error(key + ": " + message), key_(key) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Broken internal invariant. Seeing one is a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace adgstego

#endif  // ADGSTEGO_COMMON_HPP
