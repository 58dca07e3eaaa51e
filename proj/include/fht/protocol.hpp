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

// Owner/verifier flows over the seven schemes.
//
// The owner turns a plaintext into a VerificationBundle (ciphertext, the
// plaintext HFV, and any auxiliary residues). The verifier recomputes the HFV
// from the bundle alone, using only VerifierMaterial: the modulus and, for the
// verifier-random scheme, its own noise array. VerifierMaterial has no room
// for decryption keys.

#ifndef FHT_PROTOCOL_HPP
#define FHT_PROTOCOL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fht/crossratio.hpp"
#include "fht/masked.hpp"
#include "fht/native.hpp"
#include "fht/projective.hpp"
#include "fht/randomness.hpp"

namespace fht::protocol {

enum class SchemeId {
  kProjective,
  kProjectiveMod,
  kMasked,
  kMaskedNoise,
  kNativeKf,
  kNativeVerifier,
  kNativeSums,
};

inline constexpr SchemeId kAllSchemes[] = {
    SchemeId::kProjective, SchemeId::kProjectiveMod,  SchemeId::kMasked,    SchemeId::kMaskedNoise,
    SchemeId::kNativeKf,   SchemeId::kNativeVerifier, SchemeId::kNativeSums};

std::string_view scheme_name(SchemeId id) noexcept;
/// Throws kInvalidArgument for an unknown name.
SchemeId parse_scheme(std::string_view name);

bool uses_modulus(SchemeId id) noexcept;
bool uses_projection(SchemeId id) noexcept;
bool is_native(SchemeId id) noexcept;

/// Everything the owner holds. Unused fields stay empty.
struct OwnerKey {
  std::optional<projective::Params> proj;
  std::optional<Integer> p, g, x;
  std::vector<Integer> rv;
  unsigned symbol_offset = native::kDefaultSymbolOffset;
};

/// Everything the verifier holds.
struct VerifierMaterial {
  SchemeId scheme;
  std::optional<Integer> p;
  std::vector<Integer> rv;  // verifier-random scheme only
};

struct KeyFile {
  SchemeId scheme;
  OwnerKey owner;
  VerifierMaterial verifier;
};

/// Checks every scheme constraint; throws kInvalidKey listing violations.
KeyFile make_keyfile(SchemeId scheme, OwnerKey owner);

std::string keyfile_to_json(const KeyFile& key);
/// Full key files only. Throws kInvalidKey for inconsistent sections.
KeyFile keyfile_from_json(std::string_view text);

/// A file holding only the scheme and the verifier section.
std::string verifier_to_json(const VerifierMaterial& material);
/// Reads the verifier section of either a full key file or a verifier file.
VerifierMaterial verifier_from_json(std::string_view text);

struct NativePayload {
  native::NativeCiphertext ct;
  std::vector<native::KfBundle> bundles;
};

struct SumsPayload {
  native::NativeCiphertext ct;
  std::size_t length = 0;  // plaintext bytes before padding
};

using Payload = std::variant<projective::CiphertextA, projective::CiphertextMod,
                             masked::MaskedCiphertext, NativePayload, SumsPayload>;

struct VerificationBundle {
  SchemeId scheme;
  std::optional<Integer> p;
  crossratio::Digest hfv;
  Payload payload;
};

/// Plaintext-side cross-ratio sequence.
crossratio::CrossRatioSeq plain_crs(std::span<const std::uint8_t> plaintext, const KeyFile& key);

/// Ciphertext-side sequence, computed from the bundle and verifier material.
crossratio::CrossRatioSeq cipher_crs(const VerificationBundle& bundle,
                                     const VerifierMaterial& material);

VerificationBundle owner_prepare(std::span<const std::uint8_t> plaintext, const KeyFile& key,
                                 Randomness& rng);

std::vector<std::uint8_t> bundle_decrypt(const VerificationBundle& bundle, const KeyFile& key);

struct CheckResult {
  bool consistent = false;
  std::string detail;
  crossratio::Digest recomputed{};
};

/// Malformed input throws (kMalformedBundle, kSchemeMismatch, ...); a digest
/// or modulus mismatch is an inconsistent result.
CheckResult verifier_check(const VerificationBundle& bundle, const VerifierMaterial& material);

/// Canonical binary form, starting with the 16-byte magic.
std::vector<std::uint8_t> serialize_bundle(const VerificationBundle& bundle);
std::string bundle_to_json(const VerificationBundle& bundle);

/// Accepts either form. Throws kMalformedBundle.
VerificationBundle parse_bundle(std::span<const std::uint8_t> bytes);

/// Ciphertext in the module's text form.
std::string ciphertext_text(const VerificationBundle& bundle);

/// Verifier-random session: draws rv, hands it to the owner, then checks
/// exactly one bundle (re-checking that same bundle is allowed).
class VerifierSession {
 public:
  /// Throws kInvalidArgument for rv_length == 0.
  VerifierSession(const Integer& p, Randomness& rng, std::size_t rv_length = 4);

  const std::vector<Integer>& rv() const noexcept { return material_.rv; }
  const VerifierMaterial& material() const noexcept { return material_; }

  /// Throws kSessionReplay for a second, different bundle.
  CheckResult check(const VerificationBundle& bundle);

 private:
  VerifierMaterial material_;
  std::optional<crossratio::Digest> bound_;
};

}  // namespace fht::protocol

#endif  // FHT_PROTOCOL_HPP
