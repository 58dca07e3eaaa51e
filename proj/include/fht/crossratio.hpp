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

// Cross-ratios and the homomorphic feature value (HFV).
//
// Plaintext groups of four symbols use the one-dimensional cross-ratio
//   (x1 - x3)(x2 - x4) / ((x1 - x4)(x2 - x3)),
// ciphertext groups of four planar points use the same ratio built from
// squared Euclidean distances. The projective schemes compare squared values
// so that no square root is ever taken. A vanishing denominator (or one that
// is 0 mod p) gives the value 1; the same rule applies on both sides.
//
// The HFV is SHA-256 over the canonical decimal serialization of the
// cross-ratio sequence.

#ifndef FHT_CROSSRATIO_HPP
#define FHT_CROSSRATIO_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fht/numerics.hpp"
#include "fht/projective.hpp"

namespace fht::crossratio {

inline constexpr std::size_t kGroupSize = 4;

using Digest = std::array<std::uint8_t, 32>;

template <typename T>
using Quad = std::array<T, kGroupSize>;

Rational cr_line(const Integer& x1, const Integer& x2, const Integer& x3, const Integer& x4);

/// Squared cross-ratio of four planar points from squared distances.
Rational cr_planar_sq(const Quad<projective::Point>& pts);

/// Unsquared cross-ratio of four residues.
FieldElement cr_ratio_mod(const Quad<FieldElement>& xs);

/// Squared cross-ratio mod p of four integers.
FieldElement cr_line_mod(const Integer& x1, const Integer& x2, const Integer& x3,
                         const Integer& x4, const Field& field);

FieldElement cr_planar_sq_mod(const Quad<projective::ModPoint>& pts);

/// Squared cross-ratio with the first symbol scaled by rv.
FieldElement cr_line_mod_noised(const Integer& x1, const Integer& x2, const Integer& x3,
                                const Integer& x4, const FieldElement& rv);

/// Squared-distance cross-ratio of a group whose first point carries noise.
FieldElement cr_cipher_noised(const Quad<projective::ModPoint>& pts);

class CrossRatioSeq {
 public:
  enum class Mode { kRationalSquared, kField };

  explicit CrossRatioSeq(Mode mode) : mode_(mode) {}

  Mode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept {
    return mode_ == Mode::kField ? residues_.size() : rationals_.size();
  }
  bool empty() const noexcept { return size() == 0; }

  void push(const Rational& r);
  void push(const FieldElement& v);

  const std::vector<Rational>& rationals() const noexcept { return rationals_; }
  const std::vector<FieldElement>& residues() const noexcept { return residues_; }

  friend bool operator==(const CrossRatioSeq& a, const CrossRatioSeq& b) {
    return a.mode_ == b.mode_ && a.rationals_ == b.rationals_ && a.residues_ == b.residues_;
  }

 private:
  Mode mode_;
  std::vector<Rational> rationals_;
  std::vector<FieldElement> residues_;
};

/// Decimal values separated by single spaces; rationals flatten to "num den".
std::string serialize_crs(const CrossRatioSeq& seq);

Digest sha256(std::string_view data);

Digest hfv(const CrossRatioSeq& seq);

/// "0x" followed by 64 lowercase hex digits.
std::string to_hex(const Digest& digest);
Digest parse_hex(std::string_view text);

/// Number of 4-groups (the last one possibly partial) in n symbols.
constexpr std::size_t group_count(std::size_t n) { return (n + kGroupSize - 1) / kGroupSize; }

/// Consecutive non-overlapping groups of `group_size`; the tail group may be
/// shorter and contributes a cross-ratio of 1.
template <typename T>
std::vector<std::span<const T>> group_plaintext(std::span<const T> symbols,
                                                std::size_t group_size = kGroupSize) {
  std::vector<std::span<const T>> groups;
  for (std::size_t at = 0; at < symbols.size(); at += group_size) {
    groups.push_back(symbols.subspan(at, std::min(group_size, symbols.size() - at)));
  }
  return groups;
}

}  // namespace fht::crossratio

#endif  // FHT_CROSSRATIO_HPP
