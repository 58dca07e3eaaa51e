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

// Sources of per-encryption randomness.
//
// A Randomness object is the only stateful input to the schemes. Seeded
// sources draw from GMP's Mersenne Twister and are reproducible; replay
// sources hand back fixed lists (the worked examples) cyclically.

#ifndef FHT_RANDOMNESS_HPP
#define FHT_RANDOMNESS_HPP

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "fht/numerics.hpp"

namespace fht {

/// 4x4 block of exponents; column j holds positions j, j+4, j+8, j+12.
using SumMatrix = std::array<Integer, 16>;

/// Throws kInvalidRandomness unless 2 <= r <= p-2 and, when `strict`,
/// gcd(r, p-1) = 1.
void check_ephemeral(const Integer& r, const Integer& p, bool strict);

/// Throws kInvalidRandomness unless all four stride columns share one sum.
/// Returns that sum.
Integer check_sum_matrix(const SumMatrix& m, const Integer& p, bool strict);

class Randomness {
 public:
  virtual ~Randomness() = default;

  /// Ephemeral ElGamal exponent.
  virtual Integer ephemeral(const Integer& p) = 0;

  /// Common factor k_f of a kf bundle, in [1, p-2].
  virtual Integer common_factor(const Integer& p) = 0;

  /// Sixteen exponents with equal stride-column sums.
  virtual SumMatrix sum_matrix(const Integer& p) = 0;

  /// Uniform integer in [lo, hi].
  virtual Integer uniform(const Integer& lo, const Integer& hi) = 0;

  /// Replayed values skip the coprimality requirement.
  virtual bool replay() const noexcept { return false; }
};

class SeededRandomness final : public Randomness {
 public:
  /// Without a seed the state is initialised from std::random_device.
  explicit SeededRandomness(std::optional<std::uint64_t> seed = std::nullopt);

  Integer ephemeral(const Integer& p) override;
  Integer common_factor(const Integer& p) override;
  SumMatrix sum_matrix(const Integer& p) override;
  Integer uniform(const Integer& lo, const Integer& hi) override;

 private:
  gmp_randclass rng_;
};

class ReplayRandomness final : public Randomness {
 public:
  struct Lists {
    std::vector<Integer> ephemeral;
    std::vector<Integer> common_factor;
    std::vector<SumMatrix> sum_matrix;
    std::vector<Integer> uniform;
  };

  explicit ReplayRandomness(Lists lists) : lists_(std::move(lists)) {}

  Integer ephemeral(const Integer& p) override;
  Integer common_factor(const Integer& p) override;
  SumMatrix sum_matrix(const Integer& p) override;
  Integer uniform(const Integer& lo, const Integer& hi) override;
  bool replay() const noexcept override { return true; }

 private:
  Lists lists_;
  std::size_t next_ephemeral_ = 0;
  std::size_t next_common_ = 0;
  std::size_t next_matrix_ = 0;
  std::size_t next_uniform_ = 0;
};

/// Fixed randomness of the worked examples.
namespace paper_vector {
/// Fixed r = 13 of the masked example.
ReplayRandomness masked();
/// r list and k_f list of the common-factor example.
ReplayRandomness native_kf();
/// r matrix of the equalize-sums example.
ReplayRandomness native_sums();
}  // namespace paper_vector

}  // namespace fht

#endif  // FHT_RANDOMNESS_HPP
