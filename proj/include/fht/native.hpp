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

// Plain ElGamal on byte symbols, with auxiliary material that lets a
// verifier evaluate the plaintext cross-ratio on c2 values.
//
// Common factor: for a group with exponents r1..r4 and a common factor kf the
// owner publishes K = (y^(kf-r1-r2), y^(kf-r3-r4), y^(kf-r1-r4), y^(kf-r1-r3)).
// Multiplying each product c2_i*c2_j of the cross-ratio by the matching
// combination of K gives every term the factor y^kf, which cancels.
//
// Equalize sums: the 16 exponents of a block are chosen so that each stride
// column (positions j, j+4, j+8, j+12) sums to the same rS. Column products
// of c2 then all carry y^rS.
//
// These cross-ratios are not squared; they are single ratios mod p.
//
// Symbols are byte + symbol_offset so that a zero byte never meets ElGamal.

#ifndef FHT_NATIVE_HPP
#define FHT_NATIVE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fht/crossratio.hpp"
#include "fht/numerics.hpp"
#include "fht/randomness.hpp"

namespace fht::native {

inline constexpr unsigned kDefaultSymbolOffset = 1;
inline constexpr std::size_t kBlockSize = 16;
inline constexpr unsigned kPadStart = 123;

struct ElGamalKey {
  Field field;
  Integer g, x, y;
  unsigned symbol_offset = kDefaultSymbolOffset;
};

/// Throws kInvalidKey for a non-generator g or x outside [2, p-2].
ElGamalKey elgamal_keygen(const Integer& p, const Integer& g, const Integer& x,
                          unsigned symbol_offset = kDefaultSymbolOffset);

struct NativeCiphertext {
  std::vector<FieldElement> c2;
  std::vector<FieldElement> c1;
  friend bool operator==(const NativeCiphertext&, const NativeCiphertext&) = default;
};

/// Symbols of a plaintext: byte + offset, as residues.
std::vector<FieldElement> to_symbols(std::span<const std::uint8_t> bytes, const ElGamalKey& key);

/// c2_i = m_i * y^r_i, c1_i = g^r_i. Throws kZeroPlaintext for m_i == 0 (mod p).
NativeCiphertext eg_encrypt_symbols(const std::vector<FieldElement>& symbols,
                                    const ElGamalKey& key, const std::vector<Integer>& r,
                                    bool strict = true);

/// Draws one exponent per symbol; `r_out` receives them.
NativeCiphertext eg_encrypt(std::span<const std::uint8_t> bytes, const ElGamalKey& key,
                            Randomness& rng, std::vector<Integer>* r_out = nullptr);

/// c2 * c1^-x for every symbol.
std::vector<FieldElement> eg_decrypt_symbols(const NativeCiphertext& ct, const ElGamalKey& key);

/// Removes the symbol offset; throws kCorruptCiphertext outside the byte range.
std::vector<std::uint8_t> eg_decrypt(const NativeCiphertext& ct, const ElGamalKey& key);

using KfBundle = std::array<FieldElement, 4>;

/// Exponents kf - r1 - r2, kf - r3 - r4, kf - r1 - r4, kf - r1 - r3.
std::array<Integer, 4> kf_exponents(const std::array<Integer, 4>& r, const Integer& kf);

/// Exponents reduced mod p-1; `rv` multiplies K1.
KfBundle kf_bundle(const std::array<Integer, 4>& r, const Integer& kf, const ElGamalKey& key,
                   const std::optional<FieldElement>& rv = std::nullopt);

/// Unsquared cross-ratio of a c2 group compensated by its bundle. `verifier_rv`
/// weights the x1 terms (verifier-random protocol).
FieldElement cr_native_with_kf(const std::array<FieldElement, 4>& c2, const KfBundle& bundle,
                               const std::optional<FieldElement>& verifier_rv = std::nullopt);

/// Plaintext cross-ratio with x2 scaled by rv; pairs with a bundle whose K1
/// carries rv.
FieldElement cr_plain_noised_native(const std::array<FieldElement, 4>& m, const FieldElement& rv);

/// Plaintext cross-ratio with x1 scaled by the verifier's rv.
FieldElement cr_plain_verifier_random(const std::array<FieldElement, 4>& m,
                                      const FieldElement& rv);

/// One bundle per full group of four.
std::vector<KfBundle> kf_bundles(const std::vector<Integer>& r, const ElGamalKey& key,
                                 Randomness& rng,
                                 const std::vector<FieldElement>& bundle_rv = {});

/// `rv` empty means the plain common-factor scheme. A short tail group gives 1.
crossratio::CrossRatioSeq native_crs_plain(const std::vector<FieldElement>& symbols,
                                           const Field& field,
                                           const std::vector<FieldElement>& verifier_rv = {});
crossratio::CrossRatioSeq native_crs_cipher(const NativeCiphertext& ct,
                                            const std::vector<KfBundle>& bundles,
                                            const Field& field,
                                            const std::vector<FieldElement>& verifier_rv = {});

/// Symbols padded to a multiple of 16 with kPadStart, kPadStart+1, ...
/// (already offset; the pad values are symbols, not bytes).
std::vector<FieldElement> pad_block(std::vector<FieldElement> symbols, const Field& field);

/// One exponent matrix per 16-symbol block; `r_out` receives the flattened
/// exponents.
NativeCiphertext sum_encrypt(const std::vector<FieldElement>& padded, const ElGamalKey& key,
                             Randomness& rng, std::vector<Integer>* r_out = nullptr);

/// Stride-column products of a 16-value block, then their cross-ratio.
FieldElement cr_sum(std::span<const FieldElement> block);

crossratio::CrossRatioSeq sum_crs(std::span<const FieldElement> padded);

struct MultiplyReport {
  std::array<FieldElement, 4> product_c2;
  std::array<FieldElement, 4> product_c1;
  std::array<FieldElement, 4> decrypted;
  KfBundle combined;
  FieldElement cr_plain;
  FieldElement cr_cipher;
};

/// Multiplies symbols 1..4 with 5..8 under encryption and checks that the
/// cross-ratio still matches with compensation K(g1)*K(g2).
MultiplyReport homomorphic_multiply_demo(const NativeCiphertext& ct, const KfBundle& first,
                                         const KfBundle& second, const ElGamalKey& key);

/// "c2: v1 v2 ... / c1: w1 w2 ..."
std::string format_native(const NativeCiphertext& ct);
NativeCiphertext parse_native(std::string_view text, const Field& field);

}  // namespace fht::native

#endif  // FHT_NATIVE_HPP
