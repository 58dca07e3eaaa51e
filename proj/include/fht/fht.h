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

/*
 * C interface to the fht library.
 *
 * Every function returns FHT_OK, FHT_INCONSISTENT (verification only) or a
 * negative FHT_E_* status. After a failure fht_last_error() describes it;
 * the message is per thread and stays valid until the next call on that
 * thread. Strings and buffers returned through out-parameters are owned by
 * the caller and released with fht_free(). Integers cross the boundary as
 * decimal strings.
 */

#ifndef FHT_FHT_H
#define FHT_FHT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FHT_API __declspec(dllexport)
#else
#define FHT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum {
  FHT_OK = 0,
  FHT_INCONSISTENT = 1,
  FHT_E_INVALID_ARGUMENT = -1,
  FHT_E_ZERO_DENOMINATOR = -2,
  FHT_E_INVALID_MODULUS = -3,
  FHT_E_MODULUS_MISMATCH = -4,
  FHT_E_NON_INVERTIBLE = -5,
  FHT_E_INVALID_KEY = -6,
  FHT_E_SINGULAR_PROJECTION = -7,
  FHT_E_POINT_AT_INFINITY = -8,
  FHT_E_CORRUPT_CIPHERTEXT = -9,
  FHT_E_MALFORMED_CIPHERTEXT = -10,
  FHT_E_MALFORMED_BUNDLE = -11,
  FHT_E_SCHEME_MISMATCH = -12,
  FHT_E_INVALID_RANDOMNESS = -13,
  FHT_E_ZERO_PLAINTEXT = -14,
  FHT_E_PADDING_ERROR = -15,
  FHT_E_INSUFFICIENT_DATA = -16,
  FHT_E_NEEDS_MORE_PAIRS = -17,
  FHT_E_REFUSED = -18,
  FHT_E_SESSION_REPLAY = -19,
  FHT_E_OUT_OF_MEMORY = -98,
  FHT_E_INTERNAL = -99
};

typedef struct fht_rng fht_rng;
typedef struct fht_key fht_key;
typedef struct fht_verifier fht_verifier;
typedef struct fht_bundle fht_bundle;
typedef struct fht_session fht_session;

FHT_API const char* fht_last_error(void);
/* Symbol index tied to the last error, or -1. */
FHT_API long long fht_last_error_index(void);
/* Kebab-case name of a status, e.g. "invalid-key". */
FHT_API const char* fht_status_name(int status);
FHT_API void fht_free(void* p);

/* Randomness. A fixed-vector source replays the worked-example values of one scheme
 * family: "masked", "native-kf" or "native-sums". */
FHT_API int fht_rng_new_seeded(uint64_t seed, fht_rng** out);
FHT_API int fht_rng_new_system(fht_rng** out);
FHT_API int fht_rng_new_paper(const char* family, fht_rng** out);
FHT_API void fht_rng_free(fht_rng* rng);

/* Unset (NULL) fields are generated from rng: p = 1000000007, the smallest
 * generator g, x uniform in [2, p-2], a random projection, four rv values.
 * proj and rv are comma-separated lists. symbol_offset < 0 keeps the
 * default of 1. */
typedef struct {
  const char* scheme;
  const char* proj;
  const char* p;
  const char* g;
  const char* x;
  const char* rv;
  int symbol_offset;
} fht_keygen_params;

FHT_API int fht_keygen(const fht_keygen_params* params, fht_rng* rng, fht_key** out);
FHT_API int fht_key_from_json(const char* text, fht_key** out);
FHT_API int fht_key_to_json(const fht_key* key, char** out);
/* Scheme name, owned by the key. */
FHT_API const char* fht_key_scheme(const fht_key* key);
/* Public parameters, one "name: value" line each. */
FHT_API int fht_key_summary(const fht_key* key, char** out);
FHT_API int fht_key_verifier(const fht_key* key, fht_verifier** out);
FHT_API void fht_key_free(fht_key* key);

/* Accepts a full key file or a verifier-only file. */
FHT_API int fht_verifier_from_json(const char* text, fht_verifier** out);
FHT_API int fht_verifier_to_json(const fht_verifier* verifier, char** out);
FHT_API void fht_verifier_free(fht_verifier* verifier);

FHT_API int fht_encrypt(const fht_key* key, const uint8_t* data, size_t len, fht_rng* rng,
                        fht_bundle** out);
FHT_API int fht_bundle_decrypt(const fht_bundle* bundle, const fht_key* key, uint8_t** out,
                               size_t* out_len);
/* as_json != 0 selects the JSON form; otherwise the binary container. */
FHT_API int fht_bundle_serialize(const fht_bundle* bundle, int as_json, uint8_t** out,
                                 size_t* out_len);
FHT_API int fht_bundle_parse(const uint8_t* data, size_t len, fht_bundle** out);
FHT_API int fht_bundle_ciphertext_text(const fht_bundle* bundle, char** out);
FHT_API const char* fht_bundle_scheme(const fht_bundle* bundle);
FHT_API int fht_bundle_hfv(const fht_bundle* bundle, char** hex);
FHT_API void fht_bundle_free(fht_bundle* bundle);

/* Decrypts a ciphertext listing in the scheme's text form. */
FHT_API int fht_decrypt_listing(const fht_key* key, const char* text, uint8_t** out,
                                size_t* out_len);

/* HFV as "0x..." hex plus the space-separated CR sequence (crs may be NULL). */
FHT_API int fht_hfv_plain(const fht_key* key, const uint8_t* data, size_t len, char** hex,
                          char** crs);
FHT_API int fht_hfv_cipher(const fht_bundle* bundle, const fht_verifier* verifier, char** hex,
                           char** crs);

/* FHT_OK when consistent, FHT_INCONSISTENT otherwise. detail may be NULL. */
FHT_API int fht_verify(const fht_bundle* bundle, const fht_verifier* verifier, char** detail);

/* Verifier-random sessions. p is decimal. */
FHT_API int fht_session_new(const char* p, fht_rng* rng, size_t rv_length, fht_session** out);
/* Comma-separated rv for the owner's keygen. */
FHT_API int fht_session_rv(const fht_session* session, char** out);
FHT_API int fht_session_check(fht_session* session, const fht_bundle* bundle, char** detail);
FHT_API void fht_session_free(fht_session* session);

/* Attacks: "kpa", "coa-line", "coa-brute", "collide", "dictionary".
 *   kpa:        listing (exact rational text form), known_plain, known_index
 *   coa-line:   listing
 *   coa-brute:  listing, n
 *   collide:    group ("35,72,101,108"); with p set, a residue-level scale
 *   dictionary: p, n, count_only, memory_budget (0 = default)
 * The report is text or JSON; *success tells whether the attack succeeded. */
typedef struct {
  const char* attack;
  const char* listing;
  int known_plain;
  long known_index;
  const char* group;
  const char* p;
  unsigned n;
  int count_only;
  uint64_t memory_budget;
  int as_json;
} fht_attack_params;

FHT_API int fht_attack(const fht_attack_params* params, char** report, int* success);

/* Bundle forgery keeping the original HFV. transform is "translate"
 * (projection schemes, ciphertext only), "shift" (native kf schemes; needs
 * the known plaintext and a key, of which only p, g and y are used) or
 * "scale" (native kf schemes, no key). */
FHT_API int fht_forge_bundle(const fht_bundle* bundle, const char* transform,
                             const uint8_t* plaintext, size_t len, const fht_key* public_key,
                             fht_rng* rng, fht_bundle** out, char** description);

/* Encrypts data (at least 8 bytes) under a native-kf key and multiplies the
 * first two groups under encryption. */
FHT_API int fht_demo_mult(const fht_key* key, const uint8_t* data, size_t len, fht_rng* rng,
                          int as_json, char** report);

#ifdef __cplusplus
}
#endif

#endif /* FHT_FHT_H */
