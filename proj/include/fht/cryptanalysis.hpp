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

// Attacks on the projective and native schemes.
//
// The projective ciphertext lies on the secret line, so two points reveal it.
// The center is then pinned by lines joining plaintext points (s, 0) to their
// images: one known pair plus a scan over the alphabet, or a scan over all
// N^2 plaintext assignments for two ciphertext points. A candidate center is
// kept only if every ciphertext point decrypts to an integer in [0, N).
//
// Cross-ratios are invariant under affine maps of the plaintext, and under
// translations of ciphertext points along the line, which gives collisions.

#ifndef FHT_CRYPTANALYSIS_HPP
#define FHT_CRYPTANALYSIS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fht/native.hpp"
#include "fht/projective.hpp"
#include "fht/protocol.hpp"

namespace fht::cryptanalysis {

inline constexpr unsigned kAlphabet = 256;
inline constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{1} << 30;

/// Outcome of one attack run, rendered as text or JSON.
struct AttackReport {
  std::string attack;
  bool success = false;
  std::uint64_t work = 0;
  double elapsed = 0;
  std::vector<std::pair<std::string, std::string>> facts;

  std::string to_text() const;
  std::string to_json() const;
};

/// Integer line a*x + b*y + c = 0, coprime, a >= 0 (b > 0 when a == 0).
struct Line {
  Integer a, b, c;
  friend bool operator==(const Line&, const Line&) = default;
};

Line normalize_line(const Rational& a, const Rational& b, const Rational& c);

/// Throws kInsufficientData when the points are all identical and
/// kCorruptCiphertext when they are not collinear.
Line coa_recover_line(const projective::CiphertextA& ct);

struct KnownPair {
  std::uint8_t plain;
  projective::Point cipher;
};

struct CenterSearch {
  std::vector<projective::Center> candidates;  // first few only
  std::uint64_t candidate_count = 0;
  std::uint64_t work = 0;  // center hypotheses tried
  bool underdetermined = false;

  bool unique() const { return candidate_count == 1; }
};

/// Candidates are integral centers off the X-axis under which every point of
/// `ct` decrypts into [0, n). With two or more usable pairs the center is
/// solved directly; with one, the plaintext of a second ciphertext point is
/// scanned. Throws kNeedsMorePairs when no pair has y' != 0.
CenterSearch kpa_recover_center(std::span<const KnownPair> pairs, const projective::CiphertextA& ct,
                                unsigned n = kAlphabet);

/// Scans all ordered plaintext assignments of two distinct ciphertext points.
/// Work never exceeds n^2.
CenterSearch coa_brute_force(const projective::CiphertextA& ct, unsigned n = kAlphabet);

enum class Transform { kNone, kShift, kScale, kReflect };

const char* transform_name(Transform t) noexcept;

struct GroupForgery {
  Transform transform = Transform::kNone;  // kNone: group is degenerate
  Integer parameter;
  std::array<Integer, 4> group;
};

/// Byte-level affine image with the same cr_line value; prefers a shift by
/// +-1, falls back to the reflection s -> 255 - s.
GroupForgery forge_collision(const std::array<std::uint8_t, 4>& group);

/// Residue-level image: the group scaled by `factor` mod p.
GroupForgery forge_collision_mod(const std::array<Integer, 4>& group, const Field& field,
                                 const Integer& factor = 2);

struct BundleForgery {
  bool forged = false;  // false: every group is degenerate
  std::size_t group = 0;
  protocol::VerificationBundle bundle;
  std::string description;
};

/// Ciphertext-only forgery on the projective scheme: translates one group's
/// points along the line by the difference of two ciphertext points, keeping
/// the original HFV.
BundleForgery forge_projective_bundle(const protocol::VerificationBundle& bundle);

/// Native forgery keeping the original HFV. kShift re-encrypts a known
/// non-degenerate plaintext group shifted by +1 under the public key (p, g, y); kScale
/// multiplies one group's c2 values by 2 and needs no key at all.
BundleForgery forge_native_bundle(const protocol::VerificationBundle& bundle, Transform transform,
                                  std::span<const std::uint8_t> plaintext,
                                  const native::ElGamalKey& public_key, Randomness& rng);

struct DictionaryStats {
  std::uint64_t count = 0;  // n(n-1)(n-2)(n-3)
  bool enumerated = false;
  std::uint64_t distinct = 0;
  std::uint64_t max_multiplicity = 0;
  double mean_multiplicity = 0;
};

/// Ordered 4-tuples of distinct symbols in [0, n) -> squared CR mod p.
/// count_only skips enumeration. Throws kRefused when the table would
/// exceed `memory_budget` bytes; the message carries the exact count.
DictionaryStats hfv_dictionary(const Integer& p, unsigned n, bool count_only = false,
                               std::uint64_t memory_budget = kDefaultMemoryBudget);

std::uint64_t dictionary_count(unsigned n) noexcept;

}  // namespace fht::cryptanalysis

#endif  // FHT_CRYPTANALYSIS_HPP
