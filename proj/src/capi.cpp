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

#include "fht/fht.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "fht/cryptanalysis.hpp"
#include "fht/protocol.hpp"

struct fht_rng {
  std::unique_ptr<fht::Randomness> impl;
};

struct fht_key {
  fht::protocol::KeyFile key;
  std::string scheme;
};

struct fht_verifier {
  fht::protocol::VerifierMaterial material;
};

struct fht_bundle {
  fht::protocol::VerificationBundle bundle;
  std::string scheme;
};

struct fht_session {
  fht::protocol::VerifierSession session;
};

namespace {

using fht::Error;
using fht::ErrorCode;
using fht::Integer;
namespace ca = fht::cryptanalysis;
namespace cr = fht::crossratio;
namespace pr = fht::protocol;

thread_local std::string g_error;
thread_local long long g_error_index = -1;

const Integer kDefaultModulus("1000000007");

int status_of(ErrorCode code) { return -(static_cast<int>(code) + 1); }

template <typename F>
int guard(F&& body) {
  g_error.clear();
  g_error_index = -1;
  try {
    return body();
  } catch (const Error& e) {
    g_error = e.what();
    if (e.index()) g_error_index = static_cast<long long>(*e.index());
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
    return FHT_E_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    g_error = e.what();
    return FHT_E_INTERNAL;
  }
}

void require(const void* p, const char* name) {
  if (!p) throw Error(ErrorCode::kInvalidArgument, std::string(name) + " is NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_string(char** out, const std::string& s) {
  if (out) *out = dup_string(s);
}

void set_bytes(uint8_t** out, size_t* out_len, const std::vector<std::uint8_t>& v) {
  require(out, "out");
  require(out_len, "out_len");
  auto* buf = static_cast<uint8_t*>(std::malloc(v.empty() ? 1 : v.size()));
  if (!buf) throw std::bad_alloc();
  if (!v.empty()) std::memcpy(buf, v.data(), v.size());
  *out = buf;
  *out_len = v.size();
}

std::vector<Integer> parse_list(const char* text, const char* what) {
  std::vector<Integer> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, std::string("empty entry in ") + what);
    }
    out.push_back(fht::parse_integer(item.substr(b, e - b + 1)));
  }
  return out;
}

std::string join(const std::vector<Integer>& v, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i].get_str();
  return out;
}

std::vector<std::uint8_t> bytes_of(const uint8_t* data, size_t len) {
  if (len && !data) throw Error(ErrorCode::kInvalidArgument, "data is NULL");
  return len ? std::vector<std::uint8_t>(data, data + len) : std::vector<std::uint8_t>{};
}

Integer smallest_generator(const fht::Field& f) {
  for (Integer g = 2; g < f.p(); ++g) {
    if (fht::is_generator(g, f)) return g;
  }
  throw Error(ErrorCode::kInvalidModulus, "no generator found");
}

fht::projective::Params random_projection(fht::Randomness& rng) {
  auto d = [&] { return rng.uniform(-60, 60); };
  return {d(), d(), d(), d(), d()};
}

pr::KeyFile generate(const fht_keygen_params& kp, fht::Randomness& rng) {
  const pr::SchemeId scheme = pr::parse_scheme(kp.scheme ? kp.scheme : "");
  pr::OwnerKey owner;
  if (kp.symbol_offset >= 0) owner.symbol_offset = static_cast<unsigned>(kp.symbol_offset);
  if (pr::uses_modulus(scheme)) owner.p = kp.p ? fht::parse_integer(kp.p) : kDefaultModulus;
  const bool elgamal = scheme != pr::SchemeId::kProjective && scheme != pr::SchemeId::kProjectiveMod;
  if (elgamal) {
    const fht::Field f(*owner.p);
    owner.g = kp.g ? fht::parse_integer(kp.g) : smallest_generator(f);
    owner.x = kp.x ? fht::parse_integer(kp.x) : rng.uniform(2, f.p() - 2);
  }
  if (scheme == pr::SchemeId::kMaskedNoise || scheme == pr::SchemeId::kNativeVerifier) {
    if (kp.rv) {
      owner.rv = parse_list(kp.rv, "rv");
    } else {
      for (int i = 0; i < 4; ++i) owner.rv.push_back(rng.uniform(2, *owner.p - 1));
    }
  }
  if (!pr::uses_projection(scheme)) return pr::make_keyfile(scheme, owner);
  if (kp.proj) {
    const auto v = parse_list(kp.proj, "proj");
    if (v.size() != 5) {
      throw Error(ErrorCode::kInvalidArgument, "proj needs five values x0,y0,a,b,c");
    }
    owner.proj = fht::projective::Params{v[0], v[1], v[2], v[3], v[4]};
    return pr::make_keyfile(scheme, owner);
  }
  for (int attempt = 0;; ++attempt) {
    owner.proj = random_projection(rng);
    try {
      return pr::make_keyfile(scheme, owner);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInvalidKey || attempt > 10000) throw;
    }
  }
}

std::string crs_text(const cr::CrossRatioSeq& seq) { return cr::serialize_crs(seq); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string center_list(const ca::CenterSearch& s, std::size_t limit) {
  std::string out;
  for (std::size_t i = 0; i < s.candidates.size() && i < limit; ++i) {
    out += (i ? " " : "") + ("(" + s.candidates[i].x0.get_str() + "," + s.candidates[i].y0.get_str() + ")");
  }
  if (s.candidates.size() > limit) out += " ...";
  return out;
}

ca::AttackReport run_attack(const fht_attack_params& ap) {
  const std::string name = ap.attack ? ap.attack : "";
  const auto t0 = std::chrono::steady_clock::now();
  ca::AttackReport rep;
  rep.attack = name;
  const unsigned n = ap.n ? ap.n : ca::kAlphabet;
  auto listing = [&] {
    if (!ap.listing) throw Error(ErrorCode::kInvalidArgument, name + " needs a ciphertext listing");
    return fht::projective::parse_listing_a(ap.listing);
  };
  if (name == "coa-line") {
    const auto line = ca::coa_recover_line(listing());
    rep.success = true;
    rep.work = 1;
    rep.facts = {{"a", line.a.get_str()}, {"b", line.b.get_str()}, {"c", line.c.get_str()}};
  } else if (name == "kpa") {
    const auto ct = listing();
    if (ap.known_index < 0 || static_cast<std::size_t>(ap.known_index) >= ct.size()) {
      throw Error(ErrorCode::kInvalidArgument, "known-pair index outside the ciphertext");
    }
    if (ap.known_plain < 0 || ap.known_plain > 255) {
      throw Error(ErrorCode::kInvalidArgument, "known plaintext must be a byte");
    }
    const ca::KnownPair pair{static_cast<std::uint8_t>(ap.known_plain),
                             ct[static_cast<std::size_t>(ap.known_index)]};
    const auto res = ca::kpa_recover_center(std::span(&pair, 1), ct, n);
    rep.success = res.unique();
    rep.work = res.work;
    rep.facts.emplace_back("candidates", std::to_string(res.candidate_count));
    if (res.unique()) {
      rep.facts.emplace_back("x0", res.candidates[0].x0.get_str());
      rep.facts.emplace_back("y0", res.candidates[0].y0.get_str());
    } else if (res.candidate_count) {
      rep.facts.emplace_back("centers", center_list(res, 16));
    }
  } else if (name == "coa-brute") {
    const auto res = ca::coa_brute_force(listing(), n);
    rep.success = !res.underdetermined && res.candidate_count > 0;
    rep.work = res.work;
    rep.facts.emplace_back("bound", std::to_string(std::uint64_t{n} * n));
    rep.facts.emplace_back("candidates", std::to_string(res.candidate_count));
    if (res.underdetermined) {
      rep.facts.emplace_back("note", "fewer than two distinct off-axis points; every plaintext value fits");
    } else {
      rep.facts.emplace_back("centers", center_list(res, 16));
    }
  } else if (name == "collide") {
    if (!ap.group) throw Error(ErrorCode::kInvalidArgument, "collide needs a group");
    const auto g = parse_list(ap.group, "group");
    if (g.size() != 4) throw Error(ErrorCode::kInvalidArgument, "group needs four values");
    ca::GroupForgery f;
    std::string before, after;
    if (ap.p) {
      const fht::Field field(fht::parse_integer(ap.p));
      f = ca::forge_collision_mod({g[0], g[1], g[2], g[3]}, field);
      before = cr::cr_line_mod(g[0], g[1], g[2], g[3], field).to_string();
      after = cr::cr_line_mod(f.group[0], f.group[1], f.group[2], f.group[3], field).to_string();
    } else {
      std::array<std::uint8_t, 4> bytes{};
      for (int i = 0; i < 4; ++i) {
        if (g[i] < 0 || g[i] > 255) throw Error(ErrorCode::kInvalidArgument, "group values must be bytes");
        bytes[i] = static_cast<std::uint8_t>(g[i].get_ui());
      }
      f = ca::forge_collision(bytes);
      before = cr::cr_line(g[0], g[1], g[2], g[3]).to_string();
      after = cr::cr_line(f.group[0], f.group[1], f.group[2], f.group[3]).to_string();
    }
    rep.success = f.transform != ca::Transform::kNone;
    rep.work = 1;
    rep.facts = {{"transform", ca::transform_name(f.transform)},
                 {"parameter", f.parameter.get_str()},
                 {"original", join(g, " ")},
                 {"forged", join({f.group.begin(), f.group.end()}, " ")},
                 {"cr_original", before},
                 {"cr_forged", after}};
    if (!rep.success) rep.facts.emplace_back("note", "group has a repeated symbol; its CR is 1 already");
  } else if (name == "dictionary") {
    const Integer p = ap.p ? fht::parse_integer(ap.p) : kDefaultModulus;
    const auto st = ca::hfv_dictionary(p, n, ap.count_only != 0,
                                       ap.memory_budget ? ap.memory_budget : ca::kDefaultMemoryBudget);
    rep.success = true;
    rep.work = st.enumerated ? st.count : 0;
    rep.facts = {{"n", std::to_string(n)},
                 {"count", std::to_string(st.count)},
                 {"enumerated", st.enumerated ? "yes" : "no"}};
    if (st.enumerated) {
      rep.facts.emplace_back("distinct", std::to_string(st.distinct));
      rep.facts.emplace_back("max_multiplicity", std::to_string(st.max_multiplicity));
      std::ostringstream mean;
      mean << st.mean_multiplicity;
      rep.facts.emplace_back("mean_multiplicity", mean.str());
    }
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown attack '" + name + "'");
  }
  rep.elapsed = seconds_since(t0);
  return rep;
}

std::string residues(const auto& arr) {
  std::string out;
  for (const auto& v : arr) out += (out.empty() ? "" : " ") + v.to_string();
  return out;
}

}  // namespace

extern "C" {

const char* fht_last_error(void) { return g_error.c_str(); }

long long fht_last_error_index(void) { return g_error_index; }

const char* fht_status_name(int status) {
  switch (status) {
    case FHT_OK: return "ok";
    case FHT_INCONSISTENT: return "inconsistent";
    case FHT_E_OUT_OF_MEMORY: return "out-of-memory";
    case FHT_E_INTERNAL: return "internal";
    default: break;
  }
  const int index = -status - 1;
  if (index >= 0 && index <= static_cast<int>(ErrorCode::kSessionReplay)) {
    return fht::error_code_name(static_cast<ErrorCode>(index)).data();
  }
  return "unknown";
}

void fht_free(void* p) { std::free(p); }

int fht_rng_new_seeded(uint64_t seed, fht_rng** out) {
  return guard([&] {
    require(out, "out");
    *out = new fht_rng{std::make_unique<fht::SeededRandomness>(seed)};
    return FHT_OK;
  });
}

int fht_rng_new_system(fht_rng** out) {
  return guard([&] {
    require(out, "out");
    *out = new fht_rng{std::make_unique<fht::SeededRandomness>()};
    return FHT_OK;
  });
}

int fht_rng_new_paper(const char* family, fht_rng** out) {
  return guard([&] {
    require(out, "out");
    require(family, "family");
    const std::string f = family;
    std::unique_ptr<fht::Randomness> impl;
    if (f == "masked" || f == "masked-noise") {
      impl = std::make_unique<fht::ReplayRandomness>(fht::paper_vector::masked());
    } else if (f == "native-kf" || f == "native-verifier") {
      impl = std::make_unique<fht::ReplayRandomness>(fht::paper_vector::native_kf());
    } else if (f == "native-sums") {
      impl = std::make_unique<fht::ReplayRandomness>(fht::paper_vector::native_sums());
    } else {
      throw Error(ErrorCode::kInvalidArgument, "no fixed randomness for '" + f + "'");
    }
    *out = new fht_rng{std::move(impl)};
    return FHT_OK;
  });
}

void fht_rng_free(fht_rng* rng) { delete rng; }

int fht_keygen(const fht_keygen_params* params, fht_rng* rng, fht_key** out) {
  return guard([&] {
    require(params, "params");
    require(rng, "rng");
    require(out, "out");
    auto key = generate(*params, *rng->impl);
    *out = new fht_key{key, std::string(pr::scheme_name(key.scheme))};
    return FHT_OK;
  });
}

int fht_key_from_json(const char* text, fht_key** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    auto key = pr::keyfile_from_json(text);
    *out = new fht_key{key, std::string(pr::scheme_name(key.scheme))};
    return FHT_OK;
  });
}

int fht_key_to_json(const fht_key* key, char** out) {
  return guard([&] {
    require(key, "key");
    require(out, "out");
    *out = dup_string(pr::keyfile_to_json(key->key));
    return FHT_OK;
  });
}

const char* fht_key_scheme(const fht_key* key) { return key ? key->scheme.c_str() : ""; }

int fht_key_summary(const fht_key* key, char** out) {
  return guard([&] {
    require(key, "key");
    require(out, "out");
    const auto& o = key->key.owner;
    std::string s = "scheme: " + key->scheme + "\n";
    if (o.p) s += "p: " + o.p->get_str() + "\n";
    if (o.g) {
      s += "g: " + o.g->get_str() + "\n";
      s += "y: " + fht::mod_pow(*o.g, *o.x, fht::Field(*o.p)).to_string() + "\n";
    }
    if (o.proj) {
      s += "line: " + o.proj->a.get_str() + "*x + " + o.proj->b.get_str() + "*y + " +
           o.proj->c.get_str() + " = 0\n";
    }
    if (!key->key.verifier.rv.empty()) s += "verifier rv: " + join(key->key.verifier.rv) + "\n";
    if (pr::is_native(key->key.scheme)) s += "symbol offset: " + std::to_string(o.symbol_offset) + "\n";
    *out = dup_string(s);
    return FHT_OK;
  });
}

int fht_key_verifier(const fht_key* key, fht_verifier** out) {
  return guard([&] {
    require(key, "key");
    require(out, "out");
    *out = new fht_verifier{key->key.verifier};
    return FHT_OK;
  });
}

void fht_key_free(fht_key* key) { delete key; }

int fht_verifier_from_json(const char* text, fht_verifier** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new fht_verifier{pr::verifier_from_json(text)};
    return FHT_OK;
  });
}

int fht_verifier_to_json(const fht_verifier* verifier, char** out) {
  return guard([&] {
    require(verifier, "verifier");
    require(out, "out");
    *out = dup_string(pr::verifier_to_json(verifier->material));
    return FHT_OK;
  });
}

void fht_verifier_free(fht_verifier* verifier) { delete verifier; }

int fht_encrypt(const fht_key* key, const uint8_t* data, size_t len, fht_rng* rng,
                fht_bundle** out) {
  return guard([&] {
    require(key, "key");
    require(rng, "rng");
    require(out, "out");
    auto b = pr::owner_prepare(bytes_of(data, len), key->key, *rng->impl);
    *out = new fht_bundle{std::move(b), key->scheme};
    return FHT_OK;
  });
}

int fht_bundle_decrypt(const fht_bundle* bundle, const fht_key* key, uint8_t** out,
                       size_t* out_len) {
  return guard([&] {
    require(bundle, "bundle");
    require(key, "key");
    set_bytes(out, out_len, pr::bundle_decrypt(bundle->bundle, key->key));
    return FHT_OK;
  });
}

int fht_bundle_serialize(const fht_bundle* bundle, int as_json, uint8_t** out, size_t* out_len) {
  return guard([&] {
    require(bundle, "bundle");
    if (as_json) {
      const auto s = pr::bundle_to_json(bundle->bundle);
      set_bytes(out, out_len, std::vector<std::uint8_t>(s.begin(), s.end()));
    } else {
      set_bytes(out, out_len, pr::serialize_bundle(bundle->bundle));
    }
    return FHT_OK;
  });
}

int fht_bundle_parse(const uint8_t* data, size_t len, fht_bundle** out) {
  return guard([&] {
    require(out, "out");
    const auto bytes = bytes_of(data, len);
    auto b = pr::parse_bundle(bytes);
    const std::string scheme(pr::scheme_name(b.scheme));
    *out = new fht_bundle{std::move(b), scheme};
    return FHT_OK;
  });
}

int fht_bundle_ciphertext_text(const fht_bundle* bundle, char** out) {
  return guard([&] {
    require(bundle, "bundle");
    require(out, "out");
    *out = dup_string(pr::ciphertext_text(bundle->bundle));
    return FHT_OK;
  });
}

const char* fht_bundle_scheme(const fht_bundle* bundle) { return bundle ? bundle->scheme.c_str() : ""; }

int fht_bundle_hfv(const fht_bundle* bundle, char** hex) {
  return guard([&] {
    require(bundle, "bundle");
    require(hex, "hex");
    *hex = dup_string(cr::to_hex(bundle->bundle.hfv));
    return FHT_OK;
  });
}

void fht_bundle_free(fht_bundle* bundle) { delete bundle; }

int fht_decrypt_listing(const fht_key* key, const char* text, uint8_t** out, size_t* out_len) {
  return guard([&] {
    require(key, "key");
    require(text, "text");
    const auto& k = key->key;
    pr::VerificationBundle b{k.scheme, k.owner.p, {}, fht::projective::CiphertextA{}};
    switch (k.scheme) {
      case pr::SchemeId::kProjective:
        b.payload = fht::projective::parse_listing_a(text);
        break;
      case pr::SchemeId::kProjectiveMod:
        b.payload = fht::projective::parse_listing_mod(text, fht::Field(*k.owner.p));
        break;
      case pr::SchemeId::kMasked:
      case pr::SchemeId::kMaskedNoise:
        b.payload = fht::masked::parse_masked(text, fht::Field(*k.owner.p));
        break;
      case pr::SchemeId::kNativeKf:
      case pr::SchemeId::kNativeVerifier:
        b.payload = pr::NativePayload{fht::native::parse_native(text, fht::Field(*k.owner.p)), {}};
        break;
      case pr::SchemeId::kNativeSums: {
        auto ct = fht::native::parse_native(text, fht::Field(*k.owner.p));
        const std::size_t n = ct.c2.size();
        b.payload = pr::SumsPayload{std::move(ct), n};
        break;
      }
    }
    set_bytes(out, out_len, pr::bundle_decrypt(b, k));
    return FHT_OK;
  });
}

int fht_hfv_plain(const fht_key* key, const uint8_t* data, size_t len, char** hex, char** crs) {
  return guard([&] {
    require(key, "key");
    require(hex, "hex");
    const auto seq = pr::plain_crs(bytes_of(data, len), key->key);
    *hex = dup_string(cr::to_hex(cr::hfv(seq)));
    set_string(crs, crs_text(seq));
    return FHT_OK;
  });
}

int fht_hfv_cipher(const fht_bundle* bundle, const fht_verifier* verifier, char** hex, char** crs) {
  return guard([&] {
    require(bundle, "bundle");
    require(verifier, "verifier");
    require(hex, "hex");
    const auto seq = pr::cipher_crs(bundle->bundle, verifier->material);
    *hex = dup_string(cr::to_hex(cr::hfv(seq)));
    set_string(crs, crs_text(seq));
    return FHT_OK;
  });
}

int fht_verify(const fht_bundle* bundle, const fht_verifier* verifier, char** detail) {
  return guard([&] {
    require(bundle, "bundle");
    require(verifier, "verifier");
    const auto res = pr::verifier_check(bundle->bundle, verifier->material);
    set_string(detail, res.detail);
    return res.consistent ? FHT_OK : FHT_INCONSISTENT;
  });
}

int fht_session_new(const char* p, fht_rng* rng, size_t rv_length, fht_session** out) {
  return guard([&] {
    require(p, "p");
    require(rng, "rng");
    require(out, "out");
    *out = new fht_session{pr::VerifierSession(fht::parse_integer(p), *rng->impl, rv_length)};
    return FHT_OK;
  });
}

int fht_session_rv(const fht_session* session, char** out) {
  return guard([&] {
    require(session, "session");
    require(out, "out");
    *out = dup_string(join(session->session.rv()));
    return FHT_OK;
  });
}

int fht_session_check(fht_session* session, const fht_bundle* bundle, char** detail) {
  return guard([&] {
    require(session, "session");
    require(bundle, "bundle");
    const auto res = session->session.check(bundle->bundle);
    set_string(detail, res.detail);
    return res.consistent ? FHT_OK : FHT_INCONSISTENT;
  });
}

void fht_session_free(fht_session* session) { delete session; }

int fht_attack(const fht_attack_params* params, char** report, int* success) {
  return guard([&] {
    require(params, "params");
    require(report, "report");
    const auto rep = run_attack(*params);
    *report = dup_string(params->as_json ? rep.to_json() : rep.to_text());
    if (success) *success = rep.success ? 1 : 0;
    return FHT_OK;
  });
}

int fht_forge_bundle(const fht_bundle* bundle, const char* transform, const uint8_t* plaintext,
                     size_t len, const fht_key* public_key, fht_rng* rng, fht_bundle** out,
                     char** description) {
  return guard([&] {
    require(bundle, "bundle");
    require(transform, "transform");
    require(out, "out");
    const std::string t = transform;
    ca::BundleForgery f;
    if (t == "translate") {
      f = ca::forge_projective_bundle(bundle->bundle);
    } else if (t == "shift" || t == "scale") {
      require(rng, "rng");
      fht::native::ElGamalKey pub{fht::Field(bundle->bundle.p.value_or(2)), 0, 0, 0, 0};
      if (t == "shift") {
        require(public_key, "public_key");
        const auto& o = public_key->key.owner;
        if (!o.g || !o.p) throw Error(ErrorCode::kInvalidKey, "shift forgery needs p, g and y");
        const fht::Field field(*o.p);
        pub = {field, *o.g, 0, fht::mod_pow(*o.g, *o.x, field).value(), o.symbol_offset};
      }
      f = ca::forge_native_bundle(bundle->bundle,
                                  t == "shift" ? ca::Transform::kShift : ca::Transform::kScale,
                                  bytes_of(plaintext, len), pub, *rng->impl);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown transform '" + t + "'");
    }
    if (!f.forged) throw Error(ErrorCode::kInsufficientData, "no forgery possible: " + f.description);
    set_string(description, f.description);
    *out = new fht_bundle{std::move(f.bundle), bundle->scheme};
    return FHT_OK;
  });
}

int fht_demo_mult(const fht_key* key, const uint8_t* data, size_t len, fht_rng* rng, int as_json,
                  char** report) {
  return guard([&] {
    require(key, "key");
    require(rng, "rng");
    require(report, "report");
    if (key->key.scheme != pr::SchemeId::kNativeKf) {
      throw Error(ErrorCode::kSchemeMismatch, "the multiplication demo needs a native-kf key");
    }
    const auto& o = key->key.owner;
    const auto eg = fht::native::elgamal_keygen(*o.p, *o.g, *o.x, o.symbol_offset);
    std::vector<Integer> r;
    const auto ct = fht::native::eg_encrypt(bytes_of(data, len), eg, *rng->impl, &r);
    const auto bundles = fht::native::kf_bundles(r, eg, *rng->impl);
    if (bundles.size() < 2) {
      throw Error(ErrorCode::kInsufficientData, "the demo needs at least 8 plaintext bytes");
    }
    const auto rep = fht::native::homomorphic_multiply_demo(ct, bundles[0], bundles[1], eg);
    const std::vector<std::pair<std::string, std::string>> facts{
        {"product_c2", residues(rep.product_c2)},
        {"product_c1", residues(rep.product_c1)},
        {"decrypted", residues(rep.decrypted)},
        {"combined_kf", residues(rep.combined)},
        {"cr_plain", rep.cr_plain.to_string()},
        {"cr_cipher", rep.cr_cipher.to_string()},
        {"homomorphic", rep.cr_plain == rep.cr_cipher ? "yes" : "no"}};
    ca::AttackReport as{"demo-mult", rep.cr_plain == rep.cr_cipher, 1, 0, facts};
    std::string s;
    if (as_json) {
      s = as.to_json();
    } else {
      for (const auto& [k, v] : facts) s += k + ": " + v + "\n";
    }
    *report = dup_string(s);
    return FHT_OK;
  });
}

}  // extern "C"
