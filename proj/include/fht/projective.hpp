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

// Central-projection encryption.
//
// A plaintext byte s becomes the point (s, 0) on the X-axis and is projected
// through the center O(x0, y0) onto the line a*x + b*y + c = 0. The exact
// rational scheme serializes the projected point as two reduced fractions;
// the mod-p scheme replaces each fraction by its residue num * den^-1 mod p.
// Decryption projects back through O and needs only (x0, y0).

#ifndef FHT_PROJECTIVE_HPP
#define FHT_PROJECTIVE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fht/numerics.hpp"

namespace fht::projective {

inline constexpr unsigned kSymbolBits = 8;
inline constexpr unsigned kSymbolCount = 1U << kSymbolBits;

struct Params {
  Integer x0, y0, a, b, c;
};

/// The decryption key.
struct Center {
  Integer x0, y0;
};

struct Point {
  Rational x, y;
  friend bool operator==(const Point&, const Point&) = default;
};

struct ModPoint {
  FieldElement x, y;
  friend bool operator==(const ModPoint&, const ModPoint&) = default;
};

using CiphertextA = std::vector<Point>;
using CiphertextMod = std::vector<ModPoint>;

/// With p <= 255 the alphabet shrinks to [0, p). Throws kInvalidArgument
/// for a byte outside it.
void check_alphabet(std::uint8_t byte, const Field& field, std::size_t index);

/// Every violated key constraint, one human-readable entry each. When
/// `field` is set the mod-p constraints are checked as well.
std::vector<std::string> key_violations(const Params& params,
                                        const std::optional<Field>& field = std::nullopt);

class Key {
 public:
  /// Throws kInvalidKey listing each violated constraint.
  static Key validate(const Params& params, std::optional<Field> field = std::nullopt);

  const Params& params() const noexcept { return params_; }
  const std::optional<Field>& field() const noexcept { return field_; }
  Center center() const { return {params_.x0, params_.y0}; }

 private:
  Key(Params params, std::optional<Field> field)
      : params_(std::move(params)), field_(std::move(field)) {}

  Params params_;
  std::optional<Field> field_;
};

/// Projection denominator a*x0 - a*s + b*y0; zero means s maps to infinity.
Integer projection_denominator(const Integer& s, const Params& params);

/// Image of (xn, 0). Throws kSingularProjection when the image is at infinity.
Point project_point(const Integer& xn, const Params& params);

/// Image of (value, 0) reduced mod p. Throws kNonInvertible when the
/// projection denominator vanishes mod p.
ModPoint project_mod(const Integer& value, const Params& params, const Field& field);

CiphertextA encrypt_a(std::span<const std::uint8_t> plaintext, const Key& key);

/// Back-projection of one point; exact, may be non-integral for forged input.
Rational unproject(const Point& point, const Center& center);

std::vector<std::uint8_t> decrypt_a(const CiphertextA& ct, const Center& center);

ModPoint reduce_point(const Point& point, const Field& field);

CiphertextMod encrypt_mod(std::span<const std::uint8_t> plaintext, const Key& key);

/// (|x'|*y0 - x0*|y'|) / (y0 - |y'|) mod p.
FieldElement unproject_mod(const ModPoint& point, const Center& center, const Field& field);

std::vector<std::uint8_t> decrypt_mod(const CiphertextMod& ct, const Center& center,
                                      const Field& field);

/// "85 13 74 13 | 257 38 111 19 | ..."
std::string format_listing(const CiphertextA& ct);
/// "106 154 | 24 9 | ..."
std::string format_listing(const CiphertextMod& ct);

CiphertextA parse_listing_a(std::string_view text);
CiphertextMod parse_listing_mod(std::string_view text, const Field& field);

/// Splits a " | "-separated listing into groups of integer tokens.
std::vector<std::vector<Integer>> parse_groups(std::string_view text);

}  // namespace fht::projective

#endif  // FHT_PROJECTIVE_HPP
