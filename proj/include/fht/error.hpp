// Copyright 2026 The fhtool Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FHT_ERROR_HPP
#define FHT_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fht {

enum class ErrorCode {
  kInvalidArgument,
  kZeroDenominator,
  kInvalidModulus,
  kModulusMismatch,
  // A denominator is a multiple of p. Retriable: the caller may re-key or
  // pick another modulus.
  kNonInvertible,
  kInvalidKey,
  kSingularProjection,
  kPointAtInfinity,
  kCorruptCiphertext,
  kMalformedCiphertext,
  kMalformedBundle,
  kSchemeMismatch,
  kInvalidRandomness,
  kZeroPlaintext,
  kPaddingError,
  kInsufficientData,
  kNeedsMorePairs,
  kRefused,
  kSessionReplay,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }

  /// Position of the offending symbol, when the failure is tied to one.
  std::optional<std::size_t> index() const noexcept { return index_; }

  bool retriable() const noexcept { return code_ == ErrorCode::kNonInvertible; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace fht

#endif  // FHT_ERROR_HPP
