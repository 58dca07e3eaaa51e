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

// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "fht/fht.h"

namespace {

const char kHello[] = "#Hello world!";
const std::size_t kHelloLen = sizeof(kHello) - 1;

std::string take(char* s) {
  std::string out = s ? s : "";
  fht_free(s);
  return out;
}

fht_key* make_key(const char* scheme, const char* proj, const char* p, const char* g, const char* x,
                  const char* rv = nullptr, int offset = 0) {
  fht_keygen_params params{scheme, proj, p, g, x, rv, offset};
  fht_rng* rng = nullptr;
  REQUIRE(fht_rng_new_seeded(7, &rng) == FHT_OK);
  fht_key* key = nullptr;
  const int st = fht_keygen(&params, rng, &key);
  fht_rng_free(rng);
  REQUIRE_MESSAGE(st == FHT_OK, fht_last_error());
  return key;
}

}  // namespace

TEST_CASE("status names and errors") {
  CHECK(std::string(fht_status_name(FHT_OK)) == "ok");
  CHECK(std::string(fht_status_name(FHT_INCONSISTENT)) == "inconsistent");
  CHECK(std::string(fht_status_name(FHT_E_SESSION_REPLAY)) == "session-replay");
  CHECK(std::string(fht_status_name(FHT_E_INTERNAL)) == "internal");
  CHECK(std::string(fht_status_name(-500)) == "unknown");

  fht_keygen_params params{"projective", "5,0,2,-3,4", nullptr, nullptr, nullptr, nullptr, 0};
  fht_rng* rng = nullptr;
  REQUIRE(fht_rng_new_seeded(1, &rng) == FHT_OK);
  fht_key* key = nullptr;
  CHECK(fht_keygen(&params, rng, &key) == FHT_E_INVALID_KEY);
  CHECK(key == nullptr);
  CHECK(std::string(fht_last_error()).find("y0 != 0 violated") != std::string::npos);

  params.scheme = "nonsense";
  CHECK(fht_keygen(&params, rng, &key) == FHT_E_INVALID_ARGUMENT);
  CHECK(fht_keygen(nullptr, rng, &key) == FHT_E_INVALID_ARGUMENT);
  fht_rng_free(rng);

  CHECK(fht_rng_new_paper("bogus", &rng) < 0);
  fht_bundle* bundle = nullptr;
  const uint8_t junk[] = {1, 2, 3};
  CHECK(fht_bundle_parse(junk, sizeof junk, &bundle) == FHT_E_MALFORMED_BUNDLE);

  // Null handles are accepted by every free function.
  fht_rng_free(nullptr);
  fht_key_free(nullptr);
  fht_verifier_free(nullptr);
  fht_bundle_free(nullptr);
  fht_session_free(nullptr);
  fht_free(nullptr);
}

TEST_CASE("worked masked example through the C API") {
  fht_key* key = make_key("masked", "5,6,2,-3,4", "167", "83", "16");
  fht_rng* rng = nullptr;
  REQUIRE(fht_rng_new_paper("masked", &rng) == FHT_OK);
  fht_bundle* bundle = nullptr;
  REQUIRE(fht_encrypt(key, reinterpret_cast<const uint8_t*>(kHello), kHelloLen, rng, &bundle) == FHT_OK);
  CHECK(std::string(fht_bundle_scheme(bundle)) == "masked");

  char* text = nullptr;
  REQUIRE(fht_bundle_ciphertext_text(bundle, &text) == FHT_OK);
  CHECK(take(text).find("41 130") != std::string::npos);

  char *hex_plain = nullptr, *crs_plain = nullptr, *hex_cipher = nullptr, *crs_cipher = nullptr;
  REQUIRE(fht_hfv_plain(key, reinterpret_cast<const uint8_t*>(kHello), kHelloLen, &hex_plain, &crs_plain) ==
          FHT_OK);
  fht_verifier* verifier = nullptr;
  REQUIRE(fht_key_verifier(key, &verifier) == FHT_OK);
  REQUIRE(fht_hfv_cipher(bundle, verifier, &hex_cipher, &crs_cipher) == FHT_OK);
  CHECK(take(crs_plain) == "99 147 126 1");
  CHECK(take(crs_cipher) == "99 147 126 1");
  const std::string hp = take(hex_plain);
  CHECK(hp == take(hex_cipher));
  char* bundle_hex = nullptr;
  REQUIRE(fht_bundle_hfv(bundle, &bundle_hex) == FHT_OK);
  CHECK(take(bundle_hex) == hp);

  char* detail = nullptr;
  CHECK(fht_verify(bundle, verifier, &detail) == FHT_OK);
  CHECK(take(detail) == "HFV matches");

  uint8_t* plain = nullptr;
  size_t plain_len = 0;
  REQUIRE(fht_bundle_decrypt(bundle, key, &plain, &plain_len) == FHT_OK);
  CHECK(std::string(reinterpret_cast<char*>(plain), plain_len) == kHello);
  fht_free(plain);

  fht_verifier_free(verifier);
  fht_bundle_free(bundle);
  fht_rng_free(rng);
  fht_key_free(key);
}

TEST_CASE("serialization round trips and verifier files") {
  fht_key* key = make_key("native-verifier", nullptr, "1000000007", nullptr, nullptr, "11,12,13,14", 1);
  fht_rng* rng = nullptr;
  REQUIRE(fht_rng_new_seeded(99, &rng) == FHT_OK);
  std::vector<uint8_t> data(333);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = static_cast<uint8_t>(i * 7 + 3);
  fht_bundle* bundle = nullptr;
  REQUIRE(fht_encrypt(key, data.data(), data.size(), rng, &bundle) == FHT_OK);

  char* key_json = nullptr;
  REQUIRE(fht_key_to_json(key, &key_json) == FHT_OK);
  fht_key* key2 = nullptr;
  REQUIRE(fht_key_from_json(key_json, &key2) == FHT_OK);
  fht_free(key_json);
  CHECK(std::string(fht_key_scheme(key2)) == "native-verifier");

  fht_verifier* verifier = nullptr;
  REQUIRE(fht_key_verifier(key2, &verifier) == FHT_OK);
  char* vjson = nullptr;
  REQUIRE(fht_verifier_to_json(verifier, &vjson) == FHT_OK);
  const std::string vtext = take(vjson);
  CHECK(vtext.find("\"x\"") == std::string::npos);
  fht_verifier* verifier2 = nullptr;
  REQUIRE(fht_verifier_from_json(vtext.c_str(), &verifier2) == FHT_OK);

  for (int as_json = 0; as_json < 2; ++as_json) {
    uint8_t* bytes = nullptr;
    size_t len = 0;
    REQUIRE(fht_bundle_serialize(bundle, as_json, &bytes, &len) == FHT_OK);
    fht_bundle* parsed = nullptr;
    REQUIRE(fht_bundle_parse(bytes, len, &parsed) == FHT_OK);
    CHECK(fht_verify(parsed, verifier2, nullptr) == FHT_OK);
    uint8_t* plain = nullptr;
    size_t plain_len = 0;
    REQUIRE(fht_bundle_decrypt(parsed, key2, &plain, &plain_len) == FHT_OK);
    CHECK(std::vector<uint8_t>(plain, plain + plain_len) == data);
    fht_free(plain);
    fht_bundle_free(parsed);
    fht_free(bytes);
  }

  // A verifier holding the wrong rv sees an inconsistent bundle.
  fht_verifier* wrong = nullptr;
  REQUIRE(fht_verifier_from_json(
              R"({"scheme":"native-verifier","verifier":{"p":"1000000007","rv":["11","12","13","15"]}})",
              &wrong) == FHT_OK);
  CHECK(fht_verify(bundle, wrong, nullptr) == FHT_INCONSISTENT);
  fht_verifier_free(wrong);

  fht_verifier_free(verifier2);
  fht_verifier_free(verifier);
  fht_key_free(key2);
  fht_bundle_free(bundle);
  fht_rng_free(rng);
  fht_key_free(key);
}

TEST_CASE("sessions bind one bundle") {
  fht_rng* rng = nullptr;
  REQUIRE(fht_rng_new_seeded(5, &rng) == FHT_OK);
  fht_session* session = nullptr;
  REQUIRE(fht_session_new("1000000007", rng, 4, &session) == FHT_OK);
  char* rv = nullptr;
  REQUIRE(fht_session_rv(session, &rv) == FHT_OK);
  const std::string rv_text = take(rv);

  fht_key* key = make_key("native-verifier", nullptr, "1000000007", nullptr, nullptr, rv_text.c_str(), 1);
  const uint8_t a[] = "first message", b[] = "second message";
  fht_bundle *ba = nullptr, *bb = nullptr;
  REQUIRE(fht_encrypt(key, a, sizeof a, rng, &ba) == FHT_OK);
  REQUIRE(fht_encrypt(key, b, sizeof b, rng, &bb) == FHT_OK);
  CHECK(fht_session_check(session, ba, nullptr) == FHT_OK);
  CHECK(fht_session_check(session, ba, nullptr) == FHT_OK);
  CHECK(fht_session_check(session, bb, nullptr) == FHT_E_SESSION_REPLAY);
  CHECK(!std::string(fht_last_error()).empty());

  fht_bundle_free(ba);
  fht_bundle_free(bb);
  fht_key_free(key);
  fht_session_free(session);
  fht_rng_free(rng);
}

TEST_CASE("attacks and forgeries") {
  const char* listing =
      "85 13 74 13|257 38 111 19|239 35 206 35|383 56 165 28|383 56 165 28|787 115 678 115|"
      "13 2 17 3|281 41 242 41|787 115 678 115|404 59 348 59|383 56 165 28|355 52 153 26|241 37 210 37";
  fht_attack_params ap{};
  ap.attack = "kpa";
  ap.listing = listing;
  ap.known_plain = 35;
  ap.known_index = 0;
  char* report = nullptr;
  int success = 0;
  REQUIRE(fht_attack(&ap, &report, &success) == FHT_OK);
  const std::string text = take(report);
  CHECK(success == 1);
  CHECK(text.find("x0: 5\n") != std::string::npos);
  CHECK(text.find("y0: 6\n") != std::string::npos);

  ap.attack = "coa-line";
  ap.as_json = 1;
  REQUIRE(fht_attack(&ap, &report, &success) == FHT_OK);
  const std::string json = take(report);
  CHECK(json.find("\"a\"") != std::string::npos);

  ap = fht_attack_params{};
  ap.attack = "dictionary";
  ap.p = "1000000007";
  ap.n = 256;
  CHECK(fht_attack(&ap, &report, &success) == FHT_E_REFUSED);
  CHECK(std::string(fht_last_error()).find("4195023360") != std::string::npos);

  fht_key* key = make_key("projective", "5,6,2,-3,4", nullptr, nullptr, nullptr);
  fht_rng* rng = nullptr;
  REQUIRE(fht_rng_new_seeded(3, &rng) == FHT_OK);
  fht_bundle* bundle = nullptr;
  REQUIRE(fht_encrypt(key, reinterpret_cast<const uint8_t*>(kHello), kHelloLen, rng, &bundle) == FHT_OK);
  fht_bundle* forged = nullptr;
  char* description = nullptr;
  REQUIRE(fht_forge_bundle(bundle, "translate", nullptr, 0, nullptr, rng, &forged, &description) == FHT_OK);
  fht_free(description);
  fht_verifier* verifier = nullptr;
  REQUIRE(fht_key_verifier(key, &verifier) == FHT_OK);
  CHECK(fht_verify(forged, verifier, nullptr) == FHT_OK);
  uint8_t* plain = nullptr;
  size_t plain_len = 0;
  CHECK(fht_bundle_decrypt(forged, key, &plain, &plain_len) < 0);

  fht_verifier_free(verifier);
  fht_bundle_free(forged);
  fht_bundle_free(bundle);
  fht_rng_free(rng);
  fht_key_free(key);
}

TEST_CASE("multiplication demo") {
  fht_key* key = make_key("native-kf", nullptr, "100043", "83", "16", nullptr, 0);
  fht_rng* rng = nullptr;
  REQUIRE(fht_rng_new_paper("native-kf", &rng) == FHT_OK);
  char* report = nullptr;
  REQUIRE(fht_demo_mult(key, reinterpret_cast<const uint8_t*>(kHello), kHelloLen, rng, 0, &report) == FHT_OK);
  const std::string text = take(report);
  CHECK(text.find("3780 7992 3232 12852") != std::string::npos);
  CHECK(text.find("83094") != std::string::npos);
  fht_rng_free(rng);
  fht_key_free(key);
}
