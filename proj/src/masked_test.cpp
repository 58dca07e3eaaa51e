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

#include "fht/masked.hpp"
#include "support/oracles.hpp"

using fht::Error;
using fht::ErrorCode;
using fht::Field;
using fht::Integer;
namespace cr = fht::crossratio;
namespace mk = fht::masked;
namespace pj = fht::projective;

namespace {

const std::string kHello = "#Hello world!";
const char* kMaskedListing =
    "41 130 | 156 151 | 125 19 | 130 78 | 130 78 | 161 43 | 83 158 | 153 149 | 161 43 | "
    "114 123 | 130 78 | 60 87 | 154 94";
const char* kNoisedListing =
    "163 100 | 156 151 | 125 19 | 130 78 | 49 24 | 161 43 | 83 158 | 153 149 | 25 8 | "
    "114 123 | 130 78 | 60 87 | 2 104";

// Regroups a pair listing under the fixed c1 = g^13.
mk::MaskedCiphertext from_listing(const char* listing, const mk::MaskedKey& key) {
  const auto flat = pj::parse_listing_mod(listing, key.field);
  const auto c1 = fht::mod_pow(key.g, 13, key.field);
  mk::MaskedCiphertext ct;
  for (std::size_t i = 0; i < flat.size(); i += 4) {
    mk::MaskedGroup g{c1, {}};
    for (std::size_t k = i; k < std::min(flat.size(), i + 4); ++k) g.points.push_back(flat[k]);
    ct.push_back(g);
  }
  return ct;
}

std::string crs(const cr::CrossRatioSeq& s) { return cr::serialize_crs(s); }

mk::MaskedKey random_key(std::mt19937_64& rng, const Integer& p, const Integer& g, bool noise) {
  std::uniform_int_distribution<long> d(-60, 60);
  for (;;) {
    pj::Params params{d(rng), d(rng), d(rng), d(rng), d(rng)};
    if (!pj::key_violations(params, Field(p)).empty()) continue;
    std::vector<Integer> rv;
    if (noise) {
      for (int i = 0; i < 3; ++i) rv.push_back(1 + Integer(static_cast<unsigned long>(rng() % 100000)));
    }
    const Integer x = 2 + Integer(static_cast<unsigned long>(rng() % 100000));
    try {
      return mk::masked_keygen(p, g, x, params, rv);
    } catch (const Error&) {
    }
  }
}

}  // namespace

TEST_CASE("masked_keygen") {
  const auto key = mk::masked_keygen(167, 83, 16, {5, 6, 2, -3, 4});
  CHECK(key.y == 58);
  CHECK_FALSE(key.noise());

  const auto noisy = mk::masked_keygen(167, 83, 16, {5, 6, 2, -3, 4}, {39});
  REQUIRE(noisy.rv_inv.size() == 1);
  CHECK(noisy.rv_inv[0].value() == 30);

  for (const auto& [g, x] : std::vector<std::pair<long, long>>{{83, 1}, {83, 166}, {1, 16}}) {
    try {
      mk::masked_keygen(167, g, x, {5, 6, 2, -3, 4});
      FAIL("accepted an invalid key");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInvalidKey);
    }
  }
  CHECK_THROWS_AS(mk::masked_keygen(167, 83, 16, {5, 6, 2, -3, 4}, {167}), Error);
  CHECK_THROWS_AS(mk::masked_keygen(168, 83, 16, {5, 6, 2, -3, 4}), Error);
}

TEST_CASE("worked masked example") {
  const auto key = mk::masked_keygen(167, 83, 16, {5, 6, 2, -3, 4});
  auto rng = fht::paper_vector::masked();
  const auto msg = oracle::ascii(kHello);
  const auto ct = mk::masked_encrypt(msg, key, rng);
  CHECK(mk::format_pairs(ct) == kMaskedListing);
  CHECK(ct.size() == 4);
  CHECK(mk::masked_decrypt(ct, key) == msg);
  CHECK(mk::masked_decrypt(from_listing(kMaskedListing, key), key) == msg);

  CHECK(crs(mk::masked_crs_plain(msg, key.field, key.rv)) == "99 147 126 1");
  CHECK(crs(mk::masked_crs_cipher(ct, key.field)) == "99 147 126 1");
  CHECK(mk::masked_hfv_plain(msg, key) == mk::masked_hfv_cipher(ct, key.field));
}

TEST_CASE("worked noise example") {
  const auto key = mk::masked_keygen(167, 83, 16, {5, 6, 2, -3, 4}, {39});
  auto rng = fht::paper_vector::masked();
  const auto msg = oracle::ascii(kHello);
  const auto ct = mk::masked_encrypt(msg, key, rng);
  CHECK(mk::format_pairs(ct) == kNoisedListing);
  CHECK(mk::masked_decrypt(ct, key) == msg);
  CHECK(mk::masked_decrypt(ct, key, mk::NoiseCorrection::kIgnore) ==
        std::vector<std::uint8_t>{29, 72, 101, 108, 37, 111, 32, 119, 154, 114, 108, 100, 118});

  CHECK(crs(mk::masked_crs_plain(msg, key.field, key.rv)) == "19 124 126 1");
  CHECK(crs(mk::masked_crs_cipher(ct, key.field)) == "19 124 126 1");

  const Field big(100043);
  CHECK(crs(mk::masked_crs_plain(msg, big, {})) == "34459 3457 97563 1");
  CHECK(crs(mk::masked_crs_plain(msg, big, {big(39)})) == "34552 97801 56962 1");
}

TEST_CASE("CR depends on p only") {
  const auto msg = oracle::ascii(kHello);
  const auto a = mk::masked_keygen(167, 83, 16, {5, 6, 2, -3, 4});
  const auto b = mk::masked_keygen(167, 5, 99, {8, 12, 25, 78, 34});
  std::mt19937_64 seed(1);
  fht::SeededRandomness r1(11), r2(22);
  const auto ca = mk::masked_encrypt(msg, a, r1);
  const auto cb = mk::masked_encrypt(msg, b, r2);
  CHECK(ca != cb);
  CHECK(crs(mk::masked_crs_cipher(ca, a.field)) == "99 147 126 1");
  CHECK(crs(mk::masked_crs_cipher(cb, b.field)) == "99 147 126 1");

  const auto c = mk::masked_keygen(100043, 83, 16, {5, 6, 2, -3, 4});
  fht::SeededRandomness r3(33);
  CHECK(crs(mk::masked_crs_cipher(mk::masked_encrypt(msg, c, r3), c.field)) != "99 147 126 1");
}

TEST_CASE("text form") {
  const auto key = mk::masked_keygen(167, 83, 16, {5, 6, 2, -3, 4});
  auto rng = fht::paper_vector::masked();
  const auto ct = mk::masked_encrypt(oracle::ascii(kHello), key, rng);
  const auto text = mk::format_masked(ct);
  CHECK(text.substr(0, text.find('\n')) == "37 ; 41 130 156 151 125 19 130 78");
  CHECK(mk::parse_masked(text, key.field) == ct);
  CHECK_THROWS_AS(mk::parse_masked("46 41 130", key.field), Error);
  CHECK_THROWS_AS(mk::parse_masked("46 ; 41", key.field), Error);
  CHECK_THROWS_AS(mk::parse_masked("46 ; 41 130\n46 ; 1 2", key.field), Error);
  CHECK_THROWS_AS(mk::parse_masked("46 ; 41 167", key.field), Error);
}

TEST_CASE("malformed ciphertext") {
  const auto key = mk::masked_keygen(167, 83, 16, {5, 6, 2, -3, 4});
  mk::MaskedCiphertext ct{{key.field(0), {{key.field(1), key.field(2)}}}};
  try {
    mk::masked_decrypt(ct, key);
    FAIL("c1 = 0 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMalformedCiphertext);
  }
}

TEST_CASE("round trip, HFV equality, dual paths and mask scaling") {
  std::mt19937_64 rng(0x5eed0301);
  fht::SeededRandomness draws(0x5eed0302);
  const Integer p("1000000007");
  const Integer g = 5;
  for (int trial = 0; trial < 1000; ++trial) {
    const bool noise = trial % 2 == 1;
    const auto key = random_key(rng, p, g, noise);
    std::vector<std::uint8_t> msg(1 + rng() % 19);
    for (auto& b : msg) b = static_cast<std::uint8_t>(rng());
    mk::MaskedCiphertext ct;
    try {
      ct = mk::masked_encrypt(msg, key, draws);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNonInvertible);
      continue;
    }
    CHECK(mk::masked_decrypt(ct, key) == msg);
    CHECK(mk::masked_decrypt_residues(ct, key, mk::DecryptPath::kStripMask) ==
          mk::masked_decrypt_residues(ct, key, mk::DecryptPath::kDirect));
    CHECK(mk::masked_hfv_plain(msg, key) == mk::masked_hfv_cipher(ct, key.field));

    auto scaled = ct;
    const auto lambda = key.field(1 + long(rng() % 1000000000));
    for (auto& grp : scaled) {
      for (auto& pt : grp.points) pt = {pt.x * lambda, pt.y * lambda};
    }
    CHECK(mk::masked_crs_cipher(scaled, key.field) == mk::masked_crs_cipher(ct, key.field));
  }
}
