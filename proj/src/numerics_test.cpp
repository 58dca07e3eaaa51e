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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fht/numerics.hpp"
#include "support/oracles.hpp"

using fht::Error;
using fht::ErrorCode;
using fht::Field;
using fht::Integer;
using fht::Rational;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an fht::Error");
  return ErrorCode::kInvalidArgument;
}

Integer big(oracle::i128 v) { return Integer(oracle::to_string(v)); }

}  // namespace

TEST_CASE("rational_reduce") {
  CHECK(fht::rational_reduce(2, 4) == Rational::reduce(1, 2));
  CHECK(fht::rational_reduce(2, 4).num() == 1);
  CHECK(fht::rational_reduce(2, 4).den() == 2);

  auto z = fht::rational_reduce(0, 5);
  CHECK(z.num() == 0);
  CHECK(z.den() == 1);

  // x_n = 35 under key (5, 6, 2, -3, 4): numerator and denominator of the
  // projected x before reduction.
  const long x0 = 5, y0 = 6, a = 2, b = -3, c = 4, xn = 35;
  const long num = -c * x0 + c * xn + b * xn * y0;
  const long den = a * x0 - a * xn + b * y0;
  REQUIRE(num == -510);
  REQUIRE(den == -78);
  auto r = fht::rational_reduce(num, den);
  CHECK(r.num() == 85);
  CHECK(r.den() == 13);

  CHECK(fht::rational_reduce(3, -6).num() == -1);
  CHECK(fht::rational_reduce(3, -6).den() == 2);
  CHECK(code_of([] { fht::rational_reduce(1, 0); }) == ErrorCode::kZeroDenominator);
}

TEST_CASE("rational arithmetic agrees with an unreduced oracle") {
  std::mt19937_64 rng(0x5eed0001);
  std::uniform_int_distribution<long> small(-100000, 100000);
  auto nonzero = [&] {
    long v = 0;
    while (v == 0) v = small(rng);
    return v;
  };
  for (int i = 0; i < 10000; ++i) {
    const oracle::Frac fa{small(rng), nonzero()};
    const oracle::Frac fb{nonzero(), nonzero()};
    const Rational a = Rational::reduce(big(fa.num), big(fa.den));
    const Rational b = Rational::reduce(big(fb.num), big(fb.den));
    auto agrees = [](const Rational& got, const oracle::Frac& want) {
      CHECK(got.den() > 0);
      Integer g;
      mpz_gcd(g.get_mpz_t(), got.num().get_mpz_t(), got.den().get_mpz_t());
      CHECK(g == 1);
      CHECK(got.num() * big(want.den) == big(want.num) * got.den());
    };
    agrees(a + b, fa + fb);
    agrees(a - b, fa - fb);
    agrees(a * b, fa * fb);
    agrees(a / b, fa / fb);
  }
}

TEST_CASE("mod_pow") {
  Field p167(167);
  Field p100043(100043);
  CHECK(fht::mod_pow(83, 16, p167).value() == 58);
  CHECK(fht::mod_pow(83, 11, p100043).value() == 43944);
  CHECK(fht::mod_pow(12345, 0, p100043).value() == 1);
  CHECK(fht::mod_pow(-1, 3, p167).value() == 166);

  std::mt19937_64 rng(0x5eed0002);
  const oracle::u64 primes[] = {167, 100043, 2147483647ULL, 1000000007ULL, 18446744073709551557ULL};
  for (oracle::u64 p : primes) {
    Field f{Integer(std::to_string(p))};
    for (int i = 0; i < 300; ++i) {
      const oracle::u64 b = rng() % p;
      const oracle::u64 e = rng() % 1000000;
      CHECK(fht::mod_pow(Integer(std::to_string(b)), Integer(std::to_string(e)), f).value().get_str() ==
            std::to_string(oracle::powmod(b, e, p)));
      const oracle::u64 small_e = rng() % 40;
      CHECK(oracle::powmod(b, small_e, p) == oracle::powmod_repeated(b, small_e, p));
      CHECK(fht::mod_pow(Integer(std::to_string(b)), Integer(std::to_string(small_e)), f)
                .value()
                .get_str() == std::to_string(oracle::powmod_repeated(b, small_e, p)));
    }
  }
}

TEST_CASE("mod_inv and mod_div") {
  Field p167(167);
  Field p7(7);
  CHECK(fht::mod_inv(p167(1)).value() == 1);
  CHECK(fht::mod_inv(p167(39)).value() == 30);
  CHECK(fht::mod_inv(p7(2)).value() == 4);

  const auto err = code_of([&] { fht::mod_inv(p167(0)); });
  CHECK(err == ErrorCode::kNonInvertible);
  try {
    fht::mod_inv(p167(167));
  } catch (const Error& e) {
    CHECK(e.retriable());
  }

  const auto v = fht::mod_div(p167(38), p167(113));
  CHECK((v * v).value() == 99);
  CHECK(fht::mod_div(p167(77), p167(1)).value() == 77);
  CHECK(fht::mod_div(p167(0), p167(5)).value() == 0);
  CHECK(code_of([&] { fht::mod_div(p167(3), p167(0)); }) == ErrorCode::kNonInvertible);

  for (oracle::u64 a = 1; a < 167; ++a) {
    const auto inv = fht::mod_inv(p167(static_cast<long>(a)));
    CHECK(inv.value().get_ui() == oracle::inverse_brute(a, 167));
    CHECK(fht::mod_inv(inv).value() == static_cast<long>(a));
  }
}

TEST_CASE("integer-valued fractions reduce like field division") {
  std::mt19937_64 rng(0x5eed0003);
  Field f(100043);
  for (int i = 0; i < 2000; ++i) {
    const long v = static_cast<long>(rng() % 2000001) - 1000000;
    long q = static_cast<long>(rng() % 2001) - 1000;
    if (q == 0 || q % 100043 == 0) q = 7;
    const long u = v * q;
    CHECK(f.from_rational(Rational::reduce(u, q)) == fht::mod_div(f(u), f(q)));
    CHECK(fht::mod_div(f(u), f(q)) == f(v));
  }
}

TEST_CASE("field construction and mixing") {
  CHECK(code_of([] { Field f(100); }) == ErrorCode::kInvalidModulus);
  CHECK(code_of([] { Field f(1); }) == ErrorCode::kInvalidModulus);
  Field a(167);
  Field b(100043);
  CHECK(a(-1).value() == 166);
  CHECK(a(167 * 3 + 2).value() == 2);
  CHECK(code_of([&] { (void)(a(1) + b(1)); }) == ErrorCode::kModulusMismatch);
  CHECK(code_of([&] { (void)(a(1) * b(1)); }) == ErrorCode::kModulusMismatch);
  CHECK(code_of([&] { a.from_rational(Rational::reduce(1, 167)); }) == ErrorCode::kNonInvertible);
  CHECK(Field(167) == a);
}

TEST_CASE("generators and factoring") {
  CHECK(fht::is_generator(83, Field(167)));
  CHECK(fht::is_generator(83, Field(100043)));
  CHECK(fht::is_generator(73, Field(100043)));
  CHECK_FALSE(fht::is_generator(1, Field(167)));
  CHECK_FALSE(fht::is_generator(166, Field(167)));

  // Generators of Z_p* by brute-force order computation.
  const oracle::u64 p = 167;
  for (oracle::u64 g = 1; g < p; ++g) {
    oracle::u64 order = 1;
    for (oracle::u64 v = g; v != 1; v = oracle::mulmod(v, g, p)) ++order;
    CHECK(fht::is_generator(static_cast<long>(g), Field(167)) == (order == p - 1));
  }

  auto f = fht::distinct_prime_factors(Integer("18446744073709551556"));  // 2^64 - 60
  Integer prod = 1;
  for (const auto& q : f) {
    CHECK(fht::is_probable_prime(q));
    prod *= q;
  }
  Integer n("18446744073709551556");
  for (const auto& q : f) {
    while (n % q == 0) n /= q;
  }
  CHECK(n == 1);
  CHECK(fht::distinct_prime_factors(100042) == std::vector<Integer>{2, 50021});
}

TEST_CASE("parse_integer") {
  CHECK(fht::parse_integer("-42") == -42);
  CHECK(fht::parse_integer("+7") == 7);
  CHECK(fht::parse_integer("123456789012345678901234567890").get_str() ==
        "123456789012345678901234567890");
  CHECK(code_of([] { fht::parse_integer("12a"); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { fht::parse_integer(""); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { fht::parse_integer("-"); }) == ErrorCode::kInvalidArgument);
}
