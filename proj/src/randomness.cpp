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

#include "fht/randomness.hpp"

#include <random>

namespace fht {

namespace {

constexpr int kMaxDraws = 100000;

template <typename T>
const T& cycle(const std::vector<T>& list, std::size_t& next, const char* what) {
  if (list.empty()) {
    throw Error(ErrorCode::kInvalidRandomness, std::string("no replay values for ") + what);
  }
  const T& v = list[next % list.size()];
  ++next;
  return v;
}

}  // namespace

void check_ephemeral(const Integer& r, const Integer& p, bool strict) {
  if (r < 2 || r > p - 2) {
    throw Error(ErrorCode::kInvalidRandomness,
                "exponent " + r.get_str() + " outside [2, p-2]");
  }
  if (strict) {
    Integer g;
    const Integer pm1 = p - 1;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), pm1.get_mpz_t());
    if (g != 1) {
      throw Error(ErrorCode::kInvalidRandomness,
                  "exponent " + r.get_str() + " shares a factor with p-1");
    }
  }
}

Integer check_sum_matrix(const SumMatrix& m, const Integer& p, bool strict) {
  std::array<Integer, 4> sums;
  for (std::size_t i = 0; i < m.size(); ++i) {
    check_ephemeral(m[i], p, strict);
    sums[i % 4] += m[i];
  }
  for (std::size_t j = 1; j < 4; ++j) {
    if (sums[j] != sums[0]) {
      throw Error(ErrorCode::kInvalidRandomness,
                  "stride column sums differ: " + sums[0].get_str() + " vs " + sums[j].get_str());
    }
  }
  return sums[0];
}

SeededRandomness::SeededRandomness(std::optional<std::uint64_t> seed) : rng_(gmp_randinit_mt) {
  if (seed) {
    rng_.seed(mpz_class(std::to_string(*seed)));
  } else {
    std::random_device rd;
    mpz_class s = rd();
    for (int i = 0; i < 7; ++i) s = (s << 32) + rd();
    rng_.seed(s);
  }
}

Integer SeededRandomness::uniform(const Integer& lo, const Integer& hi) {
  if (hi < lo) throw Error(ErrorCode::kInvalidArgument, "empty sampling range");
  const Integer span = hi - lo + 1;
  return lo + rng_.get_z_range(span);
}

Integer SeededRandomness::ephemeral(const Integer& p) {
  if (p < 5) throw Error(ErrorCode::kInvalidModulus, "modulus too small for ElGamal exponents");
  const Integer pm1 = p - 1;
  for (int i = 0; i < kMaxDraws; ++i) {
    Integer r = uniform(2, p - 2);
    Integer g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), pm1.get_mpz_t());
    if (g == 1) return r;
  }
  throw Error(ErrorCode::kInvalidRandomness, "no exponent coprime to p-1 found");
}

Integer SeededRandomness::common_factor(const Integer& p) { return uniform(1, p - 2); }

SumMatrix SeededRandomness::sum_matrix(const Integer& p) {
  SumMatrix m;
  Integer target = 0;
  for (std::size_t row = 0; row < 4; ++row) {
    m[row * 4] = ephemeral(p);
    target += m[row * 4];
  }
  const Integer pm1 = p - 1;
  for (std::size_t col = 1; col < 4; ++col) {
    int draws = 0;
    for (;;) {
      if (++draws > kMaxDraws) {
        throw Error(ErrorCode::kInvalidRandomness, "could not equalize exponent sums");
      }
      Integer rest = target;
      for (std::size_t row = 0; row < 3; ++row) {
        m[row * 4 + col] = ephemeral(p);
        rest -= m[row * 4 + col];
      }
      Integer g;
      mpz_gcd(g.get_mpz_t(), rest.get_mpz_t(), pm1.get_mpz_t());
      if (rest >= 2 && rest <= p - 2 && g == 1) {
        m[12 + col] = rest;
        break;
      }
    }
  }
  return m;
}

Integer ReplayRandomness::ephemeral(const Integer& p) {
  Integer r = cycle(lists_.ephemeral, next_ephemeral_, "ephemeral exponents");
  check_ephemeral(r, p, false);
  return r;
}

Integer ReplayRandomness::common_factor(const Integer& p) {
  Integer k = cycle(lists_.common_factor, next_common_, "common factors");
  if (k < 1 || k > p - 2) {
    throw Error(ErrorCode::kInvalidRandomness, "common factor " + k.get_str() + " outside [1, p-2]");
  }
  return k;
}

SumMatrix ReplayRandomness::sum_matrix(const Integer& p) {
  SumMatrix m = cycle(lists_.sum_matrix, next_matrix_, "exponent matrices");
  check_sum_matrix(m, p, false);
  return m;
}

Integer ReplayRandomness::uniform(const Integer& lo, const Integer& hi) {
  Integer v = cycle(lists_.uniform, next_uniform_, "uniform values");
  if (v < lo || v > hi) {
    throw Error(ErrorCode::kInvalidRandomness, "replayed value " + v.get_str() + " out of range");
  }
  return v;
}

namespace paper_vector {

namespace {
std::vector<Integer> ints(std::initializer_list<long> xs) {
  return std::vector<Integer>(xs.begin(), xs.end());
}
}  // namespace

ReplayRandomness masked() { return ReplayRandomness({ints({13}), {}, {}, {}}); }

ReplayRandomness native_kf() {
  return ReplayRandomness(
      {ints({11, 31, 23, 53, 42, 18, 26, 34, 9, 57, 73, 82, 45}), ints({157, 593, 348}), {}, {}});
}

ReplayRandomness native_sums() {
  SumMatrix m;
  const long r[16] = {11, 31, 23, 53, 23, 15, 17, 10, 36, 21, 25, 9, 30, 33, 35, 28};
  for (std::size_t i = 0; i < 16; ++i) m[i] = r[i];
  return ReplayRandomness({{}, {}, {m}, {}});
}

}  // namespace paper_vector

}  // namespace fht
