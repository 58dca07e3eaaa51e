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

// ElGamal-masked projective scheme, with optional random-array noise.
//
// Each byte is projected mod p as in the mod-p projective scheme and both
// coordinates are multiplied by y^r. One r is drawn per group of four bytes
// so that the mask is a common scale factor of the group, which the
// squared-distance cross-ratio ignores. c1 = g^r travels with the group.
//
// In noise mode the first byte of group n is multiplied by rv[n mod |rv|]
// before projection.

#ifndef FHT_MASKED_HPP
#define FHT_MASKED_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fht/crossratio.hpp"
#include "fht/numerics.hpp"
#include "fht/projective.hpp"
#include "fht/randomness.hpp"

namespace fht::masked {

struct MaskedKey {
  projective::Key proj;
  Field field;
  Integer g, x, y;
  std::vector<FieldElement> rv;      // empty unless noise mode
  std::vector<FieldElement> rv_inv;  // rv_inv[i] * rv[i] == 1

  bool noise() const noexcept { return !rv.empty(); }
};

/// Throws kInvalidKey for a non-generator g, x outside [2, p-2], a zero noise
/// element, or any projective constraint.
MaskedKey masked_keygen(const Integer& p, const Integer& g, const Integer& x,
                        const projective::Params& params, const std::vector<Integer>& rv = {});

struct MaskedGroup {
  FieldElement c1;
  std::vector<projective::ModPoint> points;  // 1..4
  friend bool operator==(const MaskedGroup&, const MaskedGroup&) = default;
};

using MaskedCiphertext = std::vector<MaskedGroup>;

MaskedCiphertext masked_encrypt(std::span<const std::uint8_t> plaintext, const MaskedKey& key,
                                Randomness& rng);

enum class DecryptPath { kStripMask, kDirect };
enum class NoiseCorrection { kApply, kIgnore };

/// Recovered residues, before the byte range check.
std::vector<Integer> masked_decrypt_residues(const MaskedCiphertext& ct, const MaskedKey& key,
                                             DecryptPath path,
                                             NoiseCorrection noise = NoiseCorrection::kApply);

/// Runs both decryption paths and requires them to agree.
std::vector<std::uint8_t> masked_decrypt(const MaskedCiphertext& ct, const MaskedKey& key,
                                         NoiseCorrection noise = NoiseCorrection::kApply);

/// `rv` empty means no noise.
crossratio::CrossRatioSeq masked_crs_plain(std::span<const std::uint8_t> plaintext,
                                           const Field& field,
                                           const std::vector<FieldElement>& rv);
crossratio::CrossRatioSeq masked_crs_cipher(const MaskedCiphertext& ct, const Field& field);

crossratio::Digest masked_hfv_plain(std::span<const std::uint8_t> plaintext,
                                    const MaskedKey& key);
crossratio::Digest masked_hfv_cipher(const MaskedCiphertext& ct, const Field& field);

/// One line per group: "c1 ; p1x p1y p2x p2y ...".
std::string format_masked(const MaskedCiphertext& ct);
MaskedCiphertext parse_masked(std::string_view text, const Field& field);

/// All points as "x y | x y | ...", c1 omitted.
std::string format_pairs(const MaskedCiphertext& ct);

}  // namespace fht::masked

#endif  // FHT_MASKED_HPP
