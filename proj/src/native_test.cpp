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

#include "fht/native.hpp"
#include "support/oracles.hpp"

using fht::Error;
using fht::ErrorCode;
using fht::Field;
using fht::FieldElement;
using fht::Integer;
namespace cr = fht::crossratio;
namespace nv = fht::native;

namespace {

const std::string kHello = "#Hello world!";

std::string values(const std::vector<FieldElement>& v) {
  std::string out;
  for (const auto& e : v) out += (out.empty() ? "" : " ") + e.to_string();
  return out;
}

std::string values(const nv::KfBundle& k) {
  return values(std::vector<FieldElement>(k.begin(), k.end()));
}

std::array<FieldElement, 4> quad(const std::vector<FieldElement>& v, std::size_t at) {
  return {v[at], v[at + 1], v[at + 2], v[at + 3]};
}

std::array<Integer, 4> quad(const std::vector<Integer>& v, std::size_t at) {
  return {v[at], v[at + 1], v[at + 2], v[at + 3]};
}

nv::ElGamalKey worked_key(long g = 83) { return nv::elgamal_keygen(100043, g, 16, 0); }

}  // namespace

TEST_CASE("keygen") {
  CHECK(worked_key().y == 11046);
  CHECK(worked_key(73).y == 72212);
  CHECK_THROWS_AS(nv::elgamal_keygen(100043, 83, 1), Error);
  CHECK_THROWS_AS(nv::elgamal_keygen(100043, 1, 16), Error);
  CHECK_THROWS_AS(nv::elgamal_keygen(167, 83, 16), Error);
}

TEST_CASE("worked common-factor example") {
  const auto key = worked_key();
  auto rng = fht::paper_vector::native_kf();
  std::vector<Integer> r;
  const auto msg = oracle::ascii(kHello);
  const auto ct = nv::eg_encrypt(msg, key, rng, &r);
  CHECK(values(ct.c2) ==
        "5308 53413 65797 65065 11191 96387 41219 39237 54656 48716 74865 92388 20022");
  CHECK(values(ct.c1) ==
        "43944 92349 45859 65239 40204 63214 9604 61747 71920 38601 3380 85153 43922");
  CHECK(nv::eg_decrypt(ct, key) == msg);

  const auto bundles = nv::kf_bundles(r, key, rng);
  REQUIRE(bundles.size() == 3);
  CHECK(values(bundles[0]) == "18128 97714 64995 41197");
  CHECK(values(bundles[1]) == "60780 60780 14578 60160");
  CHECK(values(bundles[2]) == "74958 29962 84448 55033");
  CHECK(values(nv::kf_bundle(quad(r, 0), 157, key)) == "18128 97714 64995 41197");
  CHECK(values(nv::kf_bundle(quad(r, 4), 593, key)) == "60780 60780 14578 60160");

  CHECK(nv::cr_native_with_kf(quad(ct.c2, 0), bundles[0]).value() == 48345);
  CHECK(nv::cr_native_with_kf(quad(ct.c2, 4), bundles[1]).value() == 91985);
  CHECK(nv::cr_native_with_kf(quad(ct.c2, 8), bundles[2]).value() == 81854);

  const auto symbols = nv::to_symbols(msg, key);
  CHECK(cr::serialize_crs(nv::native_crs_plain(symbols, key.field)) == "48345 91985 81854 1");
  CHECK(cr::serialize_crs(nv::native_crs_cipher(ct, bundles, key.field)) == "48345 91985 81854 1");
  CHECK(cr::to_hex(cr::hfv(nv::native_crs_cipher(ct, bundles, key.field))) ==
        "0xed1d385bee5884b7676b22e2d9e4637925b9a6c9309d02e48065eba92d267c6c");
}

TEST_CASE("worked equalize-sums example") {
  const auto key = worked_key(73);
  auto rng = fht::paper_vector::native_sums();
  const auto padded = nv::pad_block(nv::to_symbols(oracle::ascii(kHello), key), key.field);
  REQUIRE(padded.size() == 16);
  CHECK(values({padded.begin() + 13, padded.end()}) == "123 124 125");

  const auto m = rng.sum_matrix(key.field.p());
  CHECK(fht::check_sum_matrix(m, key.field.p(), false) == 100);
  CHECK_THROWS_AS(fht::check_sum_matrix(m, key.field.p(), true), Error);

  auto replay = fht::paper_vector::native_sums();
  const auto ct = nv::sum_encrypt(padded, key, replay);
  CHECK(values(ct.c2) ==
        "35380 83 16766 38951 17928 52226 88421 35191 79436 80961 66944 72379 35445 57344 74581 "
        "46267");
  CHECK(nv::eg_decrypt_symbols(ct, key) == padded);
  CHECK(nv::cr_sum(padded).value() == 39055);
  CHECK(nv::cr_sum(ct.c2).value() == 39055);
  CHECK(cr::to_hex(cr::hfv(nv::sum_crs(ct.c2))) ==
        "0x1ad9f165063877b614906c72b1b0628b2b4f1ccc8ff45097a60e051fd80d44cb");

  // With the printed generator the residues are those of the other example.
  auto replay83 = fht::paper_vector::native_sums();
  CHECK(values(nv::sum_encrypt(padded, worked_key(83), replay83).c2) !=
        values(ct.c2));

  std::vector<FieldElement> short_block(padded.begin(), padded.begin() + 13);
  auto r2 = fht::paper_vector::native_sums();
  try {
    nv::sum_encrypt(short_block, key, r2);
    FAIL("short block accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPaddingError);
  }
}

TEST_CASE("worked multiplication demo") {
  const auto key = worked_key();
  auto rng = fht::paper_vector::native_kf();
  std::vector<Integer> r;
  const auto ct = nv::eg_encrypt(oracle::ascii(kHello), key, rng, &r);
  const auto bundles = nv::kf_bundles(r, key, rng);
  const auto rep = nv::homomorphic_multiply_demo(ct, bundles[0], bundles[1], key);
  CHECK(values({rep.decrypted.begin(), rep.decrypted.end()}) == "3780 7992 3232 12852");
  CHECK(values(rep.combined) == "46281 4225 89900 46281");
  CHECK(values({rep.product_c2.begin(), rep.product_c2.end()}) == "76329 6008 20856 58131");
  CHECK(values({rep.product_c1.begin(), rep.product_c1.end()}) == "65239 40550 40550 81138");
  CHECK(rep.cr_plain.value() == 83094);
  CHECK(rep.cr_cipher.value() == 83094);

  nv::NativeCiphertext tiny{{ct.c2.begin(), ct.c2.begin() + 5}, {ct.c1.begin(), ct.c1.begin() + 5}};
  CHECK_THROWS_AS(nv::homomorphic_multiply_demo(tiny, bundles[0], bundles[1], key), Error);
}

TEST_CASE("zero plaintext and offsets") {
  const auto raw = worked_key();
  fht::SeededRandomness rng(7);
  const std::uint8_t zero[] = {0};
  try {
    nv::eg_encrypt(zero, raw, rng);
    FAIL("zero symbol accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kZeroPlaintext);
  }
  const auto offset = nv::elgamal_keygen(100043, 83, 16);
  const std::uint8_t all[] = {0, 1, 255};
  CHECK(nv::eg_decrypt(nv::eg_encrypt(all, offset, rng), offset) ==
        std::vector<std::uint8_t>(std::begin(all), std::end(all)));
}

TEST_CASE("text form") {
  const auto key = worked_key();
  auto rng = fht::paper_vector::native_kf();
  const auto ct = nv::eg_encrypt(oracle::ascii("#Hel"), key, rng);
  const auto text = nv::format_native(ct);
  CHECK(text == "c2: 5308 53413 65797 65065 / c1: 43944 92349 45859 65239");
  const auto back = nv::parse_native(text, key.field);
  CHECK(back.c2 == ct.c2);
  CHECK(back.c1 == ct.c1);
  CHECK_THROWS_AS(nv::parse_native("c2: 1 2 / c1: 3", key.field), Error);
  CHECK_THROWS_AS(nv::parse_native("c2: 1 2", key.field), Error);
}

TEST_CASE("compensation exponents") {
  // Each of the six terms carries r_i + r_j plus its compensation exponent;
  // all six must land on kf.
  std::mt19937_64 rng(0x5eed0401);
  for (int t = 0; t < 1000; ++t) {
    std::array<Integer, 4> r;
    for (auto& v : r) v = Integer(static_cast<unsigned long>(2 + rng() % 100000));
    const Integer kf(static_cast<unsigned long>(1 + rng() % 100000));
    const auto e = nv::kf_exponents(r, kf);
    CHECK(r[0] + r[1] + e[0] == kf);
    CHECK(r[2] + r[3] + e[1] == kf);
    CHECK(r[0] + r[3] + e[2] == kf);
    CHECK(r[0] + r[2] + e[3] == kf);
    CHECK(r[1] + r[2] + e[0] + e[1] - e[2] == kf);
    CHECK(r[1] + r[3] + e[0] + e[1] - e[3] == kf);
  }
}

TEST_CASE("random draws: round trip and plain = cipher for every variant") {
  std::mt19937_64 rng(0x5eed0402);
  fht::SeededRandomness draws(0x5eed0403);
  const Integer p("1000000007");
  const auto key = nv::elgamal_keygen(p, 5, Integer("123456789"));
  const Field& f = key.field;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::uint8_t> msg(1 + rng() % 23);
    for (auto& b : msg) b = static_cast<std::uint8_t>(rng());
    const auto symbols = nv::to_symbols(msg, key);

    std::vector<Integer> r;
    const auto ct = nv::eg_encrypt(msg, key, draws, &r);
    REQUIRE(nv::eg_decrypt(ct, key) == msg);
    const auto bundles = nv::kf_bundles(r, key, draws);
    CHECK(cr::hfv(nv::native_crs_plain(symbols, f)) ==
          cr::hfv(nv::native_crs_cipher(ct, bundles, f)));

    std::vector<FieldElement> rv;
    for (int i = 0; i < 3; ++i) rv.push_back(f(1 + long(rng() % 1000000000)));
    CHECK(nv::native_crs_plain(symbols, f, rv) == nv::native_crs_cipher(ct, bundles, f, rv));

    // An all-ones rv is the plain common-factor scheme.
    CHECK(nv::native_crs_plain(symbols, f, {f(1)}) == nv::native_crs_plain(symbols, f));

    if (symbols.size() >= 4) {
      const auto rv1 = f(2 + long(rng() % 999999990));
      const auto noisy = nv::kf_bundle(quad(r, 0), 17 + trial, key, rv1);
      const auto clean = nv::kf_bundle(quad(r, 0), 17 + trial, key);
      CHECK(nv::cr_native_with_kf(quad(ct.c2, 0), noisy) ==
            nv::cr_plain_noised_native(quad(symbols, 0), rv1));
      CHECK(nv::cr_plain_noised_native(quad(symbols, 0), f(1)) ==
            cr::cr_ratio_mod(quad(symbols, 0)));
      CHECK(nv::cr_native_with_kf(quad(ct.c2, 0), clean) == cr::cr_ratio_mod(quad(symbols, 0)));

      // A wrong verifier rv does not reproduce the owner's value (unless
      // the group is degenerate, where every weighting gives 1).
      const auto owner = nv::cr_plain_verifier_random(quad(symbols, 0), rv[0]);
      const auto wrong = nv::cr_native_with_kf(quad(ct.c2, 0), bundles[0], rv[0] + f(1));
      const bool distinct = symbols[0] != symbols[1] && symbols[0] != symbols[2] &&
                            symbols[0] != symbols[3] && symbols[1] != symbols[2] &&
                            symbols[1] != symbols[3] && symbols[2] != symbols[3];
      if (distinct) CHECK(owner != wrong);
    }

    const auto padded = nv::pad_block(symbols, f);
    std::vector<Integer> rs;
    const auto sct = nv::sum_encrypt(padded, key, draws, &rs);
    for (std::size_t at = 0; at < rs.size(); at += 16) {
      fht::SumMatrix m;
      std::copy(rs.begin() + at, rs.begin() + at + 16, m.begin());
      CHECK_NOTHROW(fht::check_sum_matrix(m, p, true));
    }
    CHECK(nv::eg_decrypt_symbols(sct, key) == padded);
    CHECK(nv::sum_crs(padded) == nv::sum_crs(sct.c2));
  }
}
