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

#include "fht/protocol.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstring>
#include <map>
#include <sstream>

namespace fht::protocol {

namespace {

using crossratio::CrossRatioSeq;
using crossratio::kGroupSize;
using json = nlohmann::ordered_json;

constexpr char kMagic[16] = {'F', 'H', 'T', 'B', 'U', 'N', 'D', 'L', 'E', '\x01'};
constexpr std::string_view kJsonFormat = "fhtbundle-1";

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedBundle, "malformed bundle: " + what);
}

const Integer& need(const std::optional<Integer>& v, const char* name) {
  if (!v) throw Error(ErrorCode::kInvalidKey, std::string("key is missing ") + name);
  return *v;
}

masked::MaskedKey masked_key(const KeyFile& key) {
  if (!key.owner.proj) throw Error(ErrorCode::kInvalidKey, "key is missing the projection");
  return masked::masked_keygen(need(key.owner.p, "p"), need(key.owner.g, "g"),
                               need(key.owner.x, "x"), *key.owner.proj,
                               key.scheme == SchemeId::kMaskedNoise ? key.owner.rv
                                                                    : std::vector<Integer>{});
}

native::ElGamalKey elgamal_key(const KeyFile& key) {
  return native::elgamal_keygen(need(key.owner.p, "p"), need(key.owner.g, "g"),
                                need(key.owner.x, "x"), key.owner.symbol_offset);
}

projective::Key projective_key(const KeyFile& key) {
  if (!key.owner.proj) throw Error(ErrorCode::kInvalidKey, "key is missing the projection");
  std::optional<Field> field;
  if (key.scheme == SchemeId::kProjectiveMod) field = Field(need(key.owner.p, "p"));
  return projective::Key::validate(*key.owner.proj, field);
}

std::vector<FieldElement> residues(const std::vector<Integer>& v, const Field& f) {
  std::vector<FieldElement> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(f(e));
  return out;
}

CrossRatioSeq rational_cipher_crs(const projective::CiphertextA& ct) {
  CrossRatioSeq seq(CrossRatioSeq::Mode::kRationalSquared);
  for (std::size_t at = 0; at < ct.size(); at += kGroupSize) {
    if (ct.size() - at < kGroupSize) {
      seq.push(Rational(1));
    } else {
      seq.push(crossratio::cr_planar_sq({ct[at], ct[at + 1], ct[at + 2], ct[at + 3]}));
    }
  }
  return seq;
}

CrossRatioSeq mod_cipher_crs(const projective::CiphertextMod& ct, const Field& f) {
  CrossRatioSeq seq(CrossRatioSeq::Mode::kField);
  for (const auto& pt : ct) {
    if (pt.x.field() != f || pt.y.field() != f) {
      throw Error(ErrorCode::kModulusMismatch, "ciphertext modulus differs from verifier p");
    }
  }
  for (std::size_t at = 0; at < ct.size(); at += kGroupSize) {
    if (ct.size() - at < kGroupSize) {
      seq.push(f(1));
    } else {
      seq.push(crossratio::cr_planar_sq_mod({ct[at], ct[at + 1], ct[at + 2], ct[at + 3]}));
    }
  }
  return seq;
}

template <typename T>
const T& payload_as(const VerificationBundle& b) {
  const T* v = std::get_if<T>(&b.payload);
  if (!v) malformed("payload does not match scheme " + std::string(scheme_name(b.scheme)));
  return *v;
}

// --- binary helpers ---------------------------------------------------------

void put_u32(std::vector<std::uint8_t>& out, std::uint64_t v) {
  if (v > 0xFFFFFFFFu) throw Error(ErrorCode::kInvalidArgument, "bundle field too large");
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_bytes(std::vector<std::uint8_t>& out, std::string_view s) {
  put_u32(out, s.size());
  out.insert(out.end(), s.begin(), s.end());
}

void put_integer(std::vector<std::uint8_t>& out, const Integer& v) {
  out.push_back(v < 0 ? 1 : 0);
  const Integer mag = abs(v);
  std::size_t count = 0;
  std::vector<std::uint8_t> buf((mpz_sizeinbase(mag.get_mpz_t(), 2) + 7) / 8 + 1);
  mpz_export(buf.data(), &count, 1, 1, 1, 0, mag.get_mpz_t());
  put_u32(out, count);
  out.insert(out.end(), buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(count));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::span<const std::uint8_t> take(std::size_t n) {
    if (data_.size() - at_ < n) malformed("truncated input");
    auto out = data_.subspan(at_, n);
    at_ += n;
    return out;
  }
  std::uint8_t u8() { return take(1)[0]; }
  std::uint32_t u32() {
    auto b = take(4);
    return std::uint32_t(b[0]) << 24 | std::uint32_t(b[1]) << 16 | std::uint32_t(b[2]) << 8 | b[3];
  }
  std::string bytes() {
    const auto n = u32();
    auto b = take(n);
    return std::string(b.begin(), b.end());
  }
  Integer integer() {
    const std::uint8_t sign = u8();
    if (sign > 1) malformed("bad sign byte");
    const auto n = u32();
    auto b = take(n);
    Integer v;
    if (n) mpz_import(v.get_mpz_t(), n, 1, 1, 1, 0, b.data());
    if (n && b[0] == 0) malformed("integer with leading zero byte");
    if (sign) {
      if (v == 0) malformed("negative zero");
      v = -v;
    }
    return v;
  }
  bool done() const { return at_ == data_.size(); }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t at_ = 0;
};

using Fields = std::vector<std::pair<std::string, std::vector<Integer>>>;

Fields payload_fields(const VerificationBundle& b) {
  Fields f;
  std::visit(
      [&](const auto& pl) {
        using T = std::decay_t<decltype(pl)>;
        if constexpr (std::is_same_v<T, projective::CiphertextA>) {
          std::vector<Integer> pts;
          for (const auto& pt : pl) {
            pts.insert(pts.end(), {pt.x.num(), pt.x.den(), pt.y.num(), pt.y.den()});
          }
          f.emplace_back("points", std::move(pts));
        } else if constexpr (std::is_same_v<T, projective::CiphertextMod>) {
          std::vector<Integer> pts;
          for (const auto& pt : pl) pts.insert(pts.end(), {pt.x.value(), pt.y.value()});
          f.emplace_back("points", std::move(pts));
        } else if constexpr (std::is_same_v<T, masked::MaskedCiphertext>) {
          std::vector<Integer> c1, sizes, pts;
          for (const auto& g : pl) {
            c1.push_back(g.c1.value());
            sizes.push_back(static_cast<unsigned long>(g.points.size()));
            for (const auto& pt : g.points) pts.insert(pts.end(), {pt.x.value(), pt.y.value()});
          }
          f.emplace_back("c1", std::move(c1));
          f.emplace_back("sizes", std::move(sizes));
          f.emplace_back("points", std::move(pts));
        } else {
          std::vector<Integer> c2, c1;
          for (const auto& v : pl.ct.c2) c2.push_back(v.value());
          for (const auto& v : pl.ct.c1) c1.push_back(v.value());
          f.emplace_back("c2", std::move(c2));
          f.emplace_back("c1", std::move(c1));
          if constexpr (std::is_same_v<T, NativePayload>) {
            std::vector<Integer> kf;
            for (const auto& k : pl.bundles) {
              for (const auto& v : k) kf.push_back(v.value());
            }
            f.emplace_back("kf", std::move(kf));
          } else {
            f.emplace_back("length", std::vector<Integer>{Integer(static_cast<unsigned long>(pl.length))});
          }
        }
      },
      b.payload);
  return f;
}

std::vector<std::string> expected_fields(SchemeId s) {
  switch (s) {
    case SchemeId::kProjective:
    case SchemeId::kProjectiveMod: return {"points"};
    case SchemeId::kMasked:
    case SchemeId::kMaskedNoise: return {"c1", "sizes", "points"};
    case SchemeId::kNativeKf:
    case SchemeId::kNativeVerifier: return {"c2", "c1", "kf"};
    case SchemeId::kNativeSums: return {"c2", "c1", "length"};
  }
  return {};
}

Payload build_payload(SchemeId scheme, const std::optional<Integer>& p, const Fields& fields) {
  const auto names = expected_fields(scheme);
  if (fields.size() != names.size()) {
    malformed("scheme " + std::string(scheme_name(scheme)) + " expects " +
              std::to_string(names.size()) + " fields");
  }
  std::map<std::string, const std::vector<Integer>*> by_name;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].first != names[i]) {
      malformed("expected field '" + names[i] + "', found '" + fields[i].first + "'");
    }
    by_name[fields[i].first] = &fields[i].second;
  }
  const auto& get = [&](const char* n) -> const std::vector<Integer>& { return *by_name.at(n); };

  if (scheme == SchemeId::kProjective) {
    if (p) malformed("the rational scheme carries no modulus");
    const auto& v = get("points");
    if (v.size() % 4 != 0) malformed("point field length is not a multiple of 4");
    projective::CiphertextA ct;
    for (std::size_t i = 0; i < v.size(); i += 4) {
      if (v[i + 1] <= 0 || v[i + 3] <= 0) malformed("non-positive denominator");
      projective::Point pt{Rational::reduce(v[i], v[i + 1]), Rational::reduce(v[i + 2], v[i + 3])};
      if (pt.x.den() != v[i + 1] || pt.y.den() != v[i + 3]) malformed("fraction not in lowest terms");
      ct.push_back(std::move(pt));
    }
    return ct;
  }

  if (!p) malformed("scheme " + std::string(scheme_name(scheme)) + " needs a modulus");
  const Field field = [&] {
    try {
      return Field(*p);
    } catch (const Error&) {
      malformed("modulus is not prime");
    }
  }();
  auto residue = [&](const Integer& v) {
    if (v < 0 || v >= field.p()) malformed("residue " + v.get_str() + " outside [0, p)");
    return field(v);
  };
  auto all = [&](const std::vector<Integer>& v) {
    std::vector<FieldElement> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(residue(e));
    return out;
  };

  switch (scheme) {
    case SchemeId::kProjectiveMod: {
      const auto v = all(get("points"));
      if (v.size() % 2 != 0) malformed("point field length is odd");
      projective::CiphertextMod ct;
      for (std::size_t i = 0; i < v.size(); i += 2) ct.push_back({v[i], v[i + 1]});
      return ct;
    }
    case SchemeId::kMasked:
    case SchemeId::kMaskedNoise: {
      const auto c1 = all(get("c1"));
      const auto& sizes = get("sizes");
      const auto pts = all(get("points"));
      if (c1.size() != sizes.size()) malformed("c1 and group-size counts differ");
      masked::MaskedCiphertext ct;
      std::size_t at = 0;
      for (std::size_t g = 0; g < sizes.size(); ++g) {
        const bool last = g + 1 == sizes.size();
        if (sizes[g] < 1 || sizes[g] > 4 || (!last && sizes[g] != 4)) malformed("bad group size");
        const std::size_t n = sizes[g].get_ui();
        if (pts.size() < at + 2 * n) malformed("point field shorter than group sizes");
        masked::MaskedGroup grp{c1[g], {}};
        for (std::size_t k = 0; k < n; ++k, at += 2) grp.points.push_back({pts[at], pts[at + 1]});
        ct.push_back(std::move(grp));
      }
      if (at != pts.size()) malformed("point field longer than group sizes");
      return ct;
    }
    case SchemeId::kNativeKf:
    case SchemeId::kNativeVerifier: {
      NativePayload pl{{all(get("c2")), all(get("c1"))}, {}};
      if (pl.ct.c1.size() != pl.ct.c2.size()) malformed("c1 and c2 lengths differ");
      const auto kf = all(get("kf"));
      if (kf.size() != pl.ct.c2.size() / kGroupSize * 4) {
        malformed("expected one kf bundle per full group");
      }
      for (std::size_t i = 0; i < kf.size(); i += 4) {
        pl.bundles.push_back({kf[i], kf[i + 1], kf[i + 2], kf[i + 3]});
      }
      return pl;
    }
    case SchemeId::kNativeSums: {
      SumsPayload pl{{all(get("c2")), all(get("c1"))}, 0};
      if (pl.ct.c1.size() != pl.ct.c2.size()) malformed("c1 and c2 lengths differ");
      const auto& len = get("length");
      if (len.size() != 1 || len[0] < 0) malformed("bad length field");
      if (pl.ct.c2.size() % native::kBlockSize != 0) malformed("ciphertext is not whole blocks");
      if (len[0] > pl.ct.c2.size() || len[0] + native::kBlockSize <= pl.ct.c2.size()) {
        malformed("length does not match the padded ciphertext");
      }
      pl.length = len[0].get_ui();
      return pl;
    }
    default: break;
  }
  malformed("unknown scheme");
}

json integers_json(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(e.get_str());
  return a;
}

std::vector<Integer> integers_from(const json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " is not an array");
  std::vector<Integer> out;
  for (const auto& e : j) {
    if (!e.is_string()) malformed(std::string(what) + " holds a non-string integer");
    try {
      out.push_back(parse_integer(e.get<std::string>()));
    } catch (const Error&) {
      malformed(std::string(what) + " holds a bad integer");
    }
  }
  return out;
}

// --- key file JSON ----------------------------------------------------------

Integer key_integer(const json& j, const char* name) {
  if (!j.contains(name) || !j[name].is_string()) {
    throw Error(ErrorCode::kInvalidKey, std::string("key file: '") + name + "' must be a decimal string");
  }
  return parse_integer(j[name].get<std::string>());
}

std::optional<Integer> opt_integer(const json& j, const char* name) {
  if (!j.contains(name)) return std::nullopt;
  return key_integer(j, name);
}

std::vector<Integer> key_list(const json& j, const char* name) {
  if (!j.contains(name)) return {};
  if (!j[name].is_array()) throw Error(ErrorCode::kInvalidKey, std::string("key file: '") + name + "' must be an array");
  std::vector<Integer> out;
  for (const auto& e : j[name]) {
    if (!e.is_string()) throw Error(ErrorCode::kInvalidKey, "key file: integers are decimal strings");
    out.push_back(parse_integer(e.get<std::string>()));
  }
  return out;
}

json verifier_json(const VerifierMaterial& m) {
  json v = json::object();
  if (m.p) v["p"] = m.p->get_str();
  if (!m.rv.empty()) v["rv"] = integers_json(m.rv);
  return v;
}

json parse_json(std::string_view text, ErrorCode code) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(code, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string_view scheme_name(SchemeId id) noexcept {
  switch (id) {
    case SchemeId::kProjective: return "projective";
    case SchemeId::kProjectiveMod: return "projective-mod";
    case SchemeId::kMasked: return "masked";
    case SchemeId::kMaskedNoise: return "masked-noise";
    case SchemeId::kNativeKf: return "native-kf";
    case SchemeId::kNativeVerifier: return "native-verifier";
    case SchemeId::kNativeSums: return "native-sums";
  }
  return "unknown";
}

SchemeId parse_scheme(std::string_view name) {
  for (SchemeId id : kAllSchemes) {
    if (scheme_name(id) == name) return id;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown scheme '" + std::string(name) + "'");
}

bool uses_modulus(SchemeId id) noexcept { return id != SchemeId::kProjective; }

bool uses_projection(SchemeId id) noexcept {
  return id == SchemeId::kProjective || id == SchemeId::kProjectiveMod ||
         id == SchemeId::kMasked || id == SchemeId::kMaskedNoise;
}

bool is_native(SchemeId id) noexcept { return !uses_projection(id); }

KeyFile make_keyfile(SchemeId scheme, OwnerKey owner) {
  KeyFile key{scheme, std::move(owner), {scheme, std::nullopt, {}}};
  if (scheme == SchemeId::kMaskedNoise && key.owner.rv.empty()) {
    throw Error(ErrorCode::kInvalidKey, "invalid key:\n  noise array rv is non-empty violated");
  }
  if (scheme == SchemeId::kNativeVerifier && key.owner.rv.empty()) {
    throw Error(ErrorCode::kInvalidKey,
                "invalid key:\n  verifier-supplied rv is non-empty violated");
  }
  if (scheme != SchemeId::kMaskedNoise && scheme != SchemeId::kNativeVerifier) key.owner.rv.clear();
  if (!is_native(scheme)) key.owner.symbol_offset = 0;
  switch (scheme) {
    case SchemeId::kProjective:
      projective_key(key);
      key.owner.p.reset();
      key.owner.g.reset();
      key.owner.x.reset();
      break;
    case SchemeId::kProjectiveMod:
      projective_key(key);
      key.owner.g.reset();
      key.owner.x.reset();
      break;
    case SchemeId::kMasked:
    case SchemeId::kMaskedNoise:
      masked_key(key);
      break;
    case SchemeId::kNativeKf:
    case SchemeId::kNativeVerifier:
    case SchemeId::kNativeSums: {
      const auto eg = elgamal_key(key);
      key.owner.proj.reset();
      for (const auto& v : key.owner.rv) {
        if (eg.field(v).is_zero()) {
          throw Error(ErrorCode::kInvalidKey, "invalid key:\n  rv != 0 (mod p) violated");
        }
      }
      break;
    }
  }
  key.verifier.p = key.owner.p;
  if (scheme == SchemeId::kNativeVerifier) key.verifier.rv = key.owner.rv;
  return key;
}

std::string keyfile_to_json(const KeyFile& key) {
  json owner = json::object();
  if (key.owner.proj) {
    const auto& k = *key.owner.proj;
    owner["proj"] = {{"x0", k.x0.get_str()}, {"y0", k.y0.get_str()}, {"a", k.a.get_str()},
                     {"b", k.b.get_str()},   {"c", k.c.get_str()}};
  }
  if (key.owner.p) owner["p"] = key.owner.p->get_str();
  if (key.owner.g) owner["g"] = key.owner.g->get_str();
  if (key.owner.x) {
    owner["x"] = key.owner.x->get_str();
    owner["y"] = mod_pow(*key.owner.g, *key.owner.x, Field(*key.owner.p)).to_string();
  }
  if (!key.owner.rv.empty()) owner["rv"] = integers_json(key.owner.rv);
  if (is_native(key.scheme)) owner["symbol_offset"] = key.owner.symbol_offset;
  json j = {{"scheme", std::string(scheme_name(key.scheme))},
            {"owner", owner},
            {"verifier", verifier_json(key.verifier)}};
  return j.dump(2) + "\n";
}

KeyFile keyfile_from_json(std::string_view text) {
  const json j = parse_json(text, ErrorCode::kInvalidKey);
  if (!j.is_object() || !j.contains("scheme") || !j["scheme"].is_string()) {
    throw Error(ErrorCode::kInvalidKey, "key file: missing scheme");
  }
  if (!j.contains("owner") || !j["owner"].is_object()) {
    throw Error(ErrorCode::kInvalidKey, "key file: no owner section (verifier-only file?)");
  }
  const SchemeId scheme = parse_scheme(j["scheme"].get<std::string>());
  const json& o = j["owner"];
  OwnerKey owner;
  if (o.contains("proj")) {
    const json& k = o["proj"];
    owner.proj = projective::Params{key_integer(k, "x0"), key_integer(k, "y0"), key_integer(k, "a"),
                                    key_integer(k, "b"), key_integer(k, "c")};
  }
  owner.p = opt_integer(o, "p");
  owner.g = opt_integer(o, "g");
  owner.x = opt_integer(o, "x");
  owner.rv = key_list(o, "rv");
  if (o.contains("symbol_offset")) {
    if (!o["symbol_offset"].is_number_unsigned() || o["symbol_offset"].get<unsigned>() > 1) {
      throw Error(ErrorCode::kInvalidKey, "key file: symbol_offset must be 0 or 1");
    }
    owner.symbol_offset = o["symbol_offset"].get<unsigned>();
  }
  KeyFile key = make_keyfile(scheme, owner);
  if (o.contains("y") && key_integer(o, "y") != mod_pow(*key.owner.g, *key.owner.x, Field(*key.owner.p)).value()) {
    throw Error(ErrorCode::kInvalidKey, "key file: y does not equal g^x mod p");
  }
  if (j.contains("verifier")) {
    const VerifierMaterial v = verifier_from_json(text);
    if (v.p != key.verifier.p || v.rv != key.verifier.rv) {
      throw Error(ErrorCode::kInvalidKey, "key file: verifier section disagrees with owner section");
    }
  }
  return key;
}

std::string verifier_to_json(const VerifierMaterial& material) {
  json j = {{"scheme", std::string(scheme_name(material.scheme))},
            {"verifier", verifier_json(material)}};
  return j.dump(2) + "\n";
}

VerifierMaterial verifier_from_json(std::string_view text) {
  const json j = parse_json(text, ErrorCode::kInvalidKey);
  if (!j.is_object() || !j.contains("scheme") || !j["scheme"].is_string() ||
      !j.contains("verifier") || !j["verifier"].is_object()) {
    throw Error(ErrorCode::kInvalidKey, "key file: missing scheme or verifier section");
  }
  VerifierMaterial m{parse_scheme(j["scheme"].get<std::string>()), std::nullopt, {}};
  const json& v = j["verifier"];
  for (const auto& [name, _] : v.items()) {
    if (name != "p" && name != "rv") {
      throw Error(ErrorCode::kInvalidKey, "key file: verifier section may not hold '" + name + "'");
    }
  }
  m.p = opt_integer(v, "p");
  m.rv = key_list(v, "rv");
  if (uses_modulus(m.scheme) && !m.p) throw Error(ErrorCode::kInvalidKey, "key file: verifier needs p");
  if (!m.rv.empty() && m.scheme != SchemeId::kNativeVerifier) {
    throw Error(ErrorCode::kInvalidKey, "key file: only the verifier-random scheme gives rv to the verifier");
  }
  return m;
}

CrossRatioSeq plain_crs(std::span<const std::uint8_t> plaintext, const KeyFile& key) {
  switch (key.scheme) {
    case SchemeId::kProjective: {
      CrossRatioSeq seq(CrossRatioSeq::Mode::kRationalSquared);
      for (const auto& g : crossratio::group_plaintext(plaintext)) {
        if (g.size() < kGroupSize) {
          seq.push(Rational(1));
        } else {
          const auto v = crossratio::cr_line(g[0], g[1], g[2], g[3]);
          seq.push(v * v);
        }
      }
      return seq;
    }
    case SchemeId::kProjectiveMod:
      return masked::masked_crs_plain(plaintext, Field(need(key.owner.p, "p")), {});
    case SchemeId::kMasked:
    case SchemeId::kMaskedNoise: {
      const auto mk = masked_key(key);
      return masked::masked_crs_plain(plaintext, mk.field, mk.rv);
    }
    case SchemeId::kNativeKf:
    case SchemeId::kNativeVerifier: {
      const auto eg = elgamal_key(key);
      const auto rv = key.scheme == SchemeId::kNativeVerifier ? residues(key.owner.rv, eg.field)
                                                              : std::vector<FieldElement>{};
      return native::native_crs_plain(native::to_symbols(plaintext, eg), eg.field, rv);
    }
    case SchemeId::kNativeSums: {
      const auto eg = elgamal_key(key);
      return native::sum_crs(native::pad_block(native::to_symbols(plaintext, eg), eg.field));
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown scheme");
}

CrossRatioSeq cipher_crs(const VerificationBundle& bundle, const VerifierMaterial& material) {
  if (bundle.scheme != material.scheme) {
    throw Error(ErrorCode::kSchemeMismatch,
                "bundle scheme " + std::string(scheme_name(bundle.scheme)) +
                    " does not match verifier scheme " + std::string(scheme_name(material.scheme)));
  }
  if (bundle.scheme == SchemeId::kProjective) {
    return rational_cipher_crs(payload_as<projective::CiphertextA>(bundle));
  }
  if (!material.p) throw Error(ErrorCode::kInvalidKey, "verifier material has no modulus");
  const Field field(*material.p);
  switch (bundle.scheme) {
    case SchemeId::kProjectiveMod:
      return mod_cipher_crs(payload_as<projective::CiphertextMod>(bundle), field);
    case SchemeId::kMasked:
    case SchemeId::kMaskedNoise:
      return masked::masked_crs_cipher(payload_as<masked::MaskedCiphertext>(bundle), field);
    case SchemeId::kNativeKf:
    case SchemeId::kNativeVerifier: {
      const auto& pl = payload_as<NativePayload>(bundle);
      std::vector<FieldElement> rv;
      if (bundle.scheme == SchemeId::kNativeVerifier) {
        if (material.rv.empty()) {
          throw Error(ErrorCode::kInvalidKey, "verifier-random check needs the verifier's rv");
        }
        rv = residues(material.rv, field);
      }
      return native::native_crs_cipher(pl.ct, pl.bundles, field, rv);
    }
    case SchemeId::kNativeSums: {
      const auto& pl = payload_as<SumsPayload>(bundle);
      for (const auto& v : pl.ct.c2) {
        if (v.field() != field) {
          throw Error(ErrorCode::kModulusMismatch, "ciphertext modulus differs from verifier p");
        }
      }
      return native::sum_crs(pl.ct.c2);
    }
    default: break;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown scheme");
}

VerificationBundle owner_prepare(std::span<const std::uint8_t> plaintext, const KeyFile& key,
                                 Randomness& rng) {
  VerificationBundle b{key.scheme, key.owner.p, crossratio::hfv(plain_crs(plaintext, key)),
                       projective::CiphertextA{}};
  switch (key.scheme) {
    case SchemeId::kProjective:
      b.payload = projective::encrypt_a(plaintext, projective_key(key));
      break;
    case SchemeId::kProjectiveMod:
      b.payload = projective::encrypt_mod(plaintext, projective_key(key));
      break;
    case SchemeId::kMasked:
    case SchemeId::kMaskedNoise:
      b.payload = masked::masked_encrypt(plaintext, masked_key(key), rng);
      break;
    case SchemeId::kNativeKf:
    case SchemeId::kNativeVerifier: {
      const auto eg = elgamal_key(key);
      std::vector<Integer> r;
      NativePayload pl;
      pl.ct = native::eg_encrypt(plaintext, eg, rng, &r);
      pl.bundles = native::kf_bundles(r, eg, rng);
      b.payload = std::move(pl);
      break;
    }
    case SchemeId::kNativeSums: {
      const auto eg = elgamal_key(key);
      const auto padded = native::pad_block(native::to_symbols(plaintext, eg), eg.field);
      b.payload = SumsPayload{native::sum_encrypt(padded, eg, rng), plaintext.size()};
      break;
    }
  }
  return b;
}

std::vector<std::uint8_t> bundle_decrypt(const VerificationBundle& bundle, const KeyFile& key) {
  if (bundle.scheme != key.scheme) {
    throw Error(ErrorCode::kSchemeMismatch, "bundle scheme " + std::string(scheme_name(bundle.scheme)) +
                                                " does not match key scheme " +
                                                std::string(scheme_name(key.scheme)));
  }
  if (uses_modulus(bundle.scheme) && bundle.p != key.owner.p) {
    throw Error(ErrorCode::kModulusMismatch, "bundle modulus differs from key modulus");
  }
  switch (bundle.scheme) {
    case SchemeId::kProjective:
      return projective::decrypt_a(payload_as<projective::CiphertextA>(bundle),
                                   projective_key(key).center());
    case SchemeId::kProjectiveMod: {
      const auto k = projective_key(key);
      return projective::decrypt_mod(payload_as<projective::CiphertextMod>(bundle), k.center(),
                                     *k.field());
    }
    case SchemeId::kMasked:
    case SchemeId::kMaskedNoise:
      return masked::masked_decrypt(payload_as<masked::MaskedCiphertext>(bundle), masked_key(key));
    case SchemeId::kNativeKf:
    case SchemeId::kNativeVerifier:
      return native::eg_decrypt(payload_as<NativePayload>(bundle).ct, elgamal_key(key));
    case SchemeId::kNativeSums: {
      const auto& pl = payload_as<SumsPayload>(bundle);
      const auto eg = elgamal_key(key);
      native::NativeCiphertext head{{pl.ct.c2.begin(), pl.ct.c2.begin() + static_cast<std::ptrdiff_t>(pl.length)},
                                    {pl.ct.c1.begin(), pl.ct.c1.begin() + static_cast<std::ptrdiff_t>(pl.length)}};
      return native::eg_decrypt(head, eg);
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown scheme");
}

CheckResult verifier_check(const VerificationBundle& bundle, const VerifierMaterial& material) {
  CheckResult res;
  if (bundle.scheme != material.scheme) {
    throw Error(ErrorCode::kSchemeMismatch,
                "bundle scheme " + std::string(scheme_name(bundle.scheme)) +
                    " does not match verifier scheme " + std::string(scheme_name(material.scheme)));
  }
  if (uses_modulus(bundle.scheme) && bundle.p != material.p) {
    res.detail = "modulus mismatch: bundle p = " + (bundle.p ? bundle.p->get_str() : "none") +
                 ", verifier p = " + (material.p ? material.p->get_str() : "none");
    return res;
  }
  res.recomputed = crossratio::hfv(cipher_crs(bundle, material));
  res.consistent = res.recomputed == bundle.hfv;
  res.detail = res.consistent ? "HFV matches"
                              : "HFV mismatch: bundle " + crossratio::to_hex(bundle.hfv) +
                                    ", ciphertext " + crossratio::to_hex(res.recomputed);
  return res;
}

std::vector<std::uint8_t> serialize_bundle(const VerificationBundle& b) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  put_bytes(out, scheme_name(b.scheme));
  put_bytes(out, std::string_view(reinterpret_cast<const char*>(b.hfv.data()), b.hfv.size()));
  out.push_back(b.p ? 1 : 0);
  if (b.p) put_integer(out, *b.p);
  const auto fields = payload_fields(b);
  put_u32(out, fields.size());
  for (const auto& [name, values] : fields) {
    put_bytes(out, name);
    put_u32(out, values.size());
    for (const auto& v : values) put_integer(out, v);
  }
  return out;
}

std::string bundle_to_json(const VerificationBundle& b) {
  json fields = json::object();
  for (const auto& [name, values] : payload_fields(b)) fields[name] = integers_json(values);
  json j = {{"format", std::string(kJsonFormat)},
            {"scheme", std::string(scheme_name(b.scheme))},
            {"hfv", crossratio::to_hex(b.hfv)},
            {"p", b.p ? json(b.p->get_str()) : json(nullptr)},
            {"fields", fields}};
  return j.dump(2) + "\n";
}

VerificationBundle parse_bundle(std::span<const std::uint8_t> bytes) {
  auto scheme_of = [](const std::string& name) {
    try {
      return parse_scheme(name);
    } catch (const Error&) {
      malformed("unknown scheme '" + name + "'");
    }
  };
  if (bytes.size() >= sizeof kMagic && std::memcmp(bytes.data(), kMagic, sizeof kMagic) == 0) {
    Reader r(bytes.subspan(sizeof kMagic));
    const SchemeId scheme = scheme_of(r.bytes());
    const std::string digest = r.bytes();
    if (digest.size() != 32) malformed("digest is not 32 bytes");
    crossratio::Digest hfv{};
    std::memcpy(hfv.data(), digest.data(), hfv.size());
    const std::uint8_t has_p = r.u8();
    if (has_p > 1) malformed("bad modulus flag");
    std::optional<Integer> p;
    if (has_p) p = r.integer();
    Fields fields;
    const auto count = r.u32();
    if (count > 16) malformed("too many fields");
    for (std::uint32_t i = 0; i < count; ++i) {
      std::string name = r.bytes();
      const auto n = r.u32();
      std::vector<Integer> values;
      for (std::uint32_t k = 0; k < n; ++k) values.push_back(r.integer());
      fields.emplace_back(std::move(name), std::move(values));
    }
    if (!r.done()) malformed("trailing bytes");
    return {scheme, p, hfv, build_payload(scheme, p, fields)};
  }
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::exception&) {
    malformed("neither the binary container nor JSON");
  }
  if (!j.is_object() || j.value("format", "") != kJsonFormat) malformed("missing format tag");
  if (!j.contains("scheme") || !j["scheme"].is_string()) malformed("missing scheme");
  if (!j.contains("hfv") || !j["hfv"].is_string()) malformed("missing hfv");
  if (!j.contains("fields") || !j["fields"].is_object()) malformed("missing fields");
  const SchemeId scheme = scheme_of(j["scheme"].get<std::string>());
  crossratio::Digest hfv{};
  try {
    hfv = crossratio::parse_hex(j["hfv"].get<std::string>());
  } catch (const Error&) {
    malformed("bad hfv");
  }
  std::optional<Integer> p;
  if (j.contains("p") && !j["p"].is_null()) {
    if (!j["p"].is_string()) malformed("p must be a decimal string");
    try {
      p = parse_integer(j["p"].get<std::string>());
    } catch (const Error&) {
      malformed("bad p");
    }
  }
  Fields fields;
  for (const auto& [name, values] : j["fields"].items()) {
    fields.emplace_back(name, integers_from(values, name.c_str()));
  }
  return {scheme, p, hfv, build_payload(scheme, p, fields)};
}

std::string ciphertext_text(const VerificationBundle& b) {
  return std::visit(
      [&](const auto& pl) -> std::string {
        using T = std::decay_t<decltype(pl)>;
        if constexpr (std::is_same_v<T, projective::CiphertextA> ||
                      std::is_same_v<T, projective::CiphertextMod>) {
          return projective::format_listing(pl) + "\n";
        } else if constexpr (std::is_same_v<T, masked::MaskedCiphertext>) {
          return masked::format_masked(pl);
        } else if constexpr (std::is_same_v<T, NativePayload>) {
          std::string out = native::format_native(pl.ct) + "\n";
          for (const auto& k : pl.bundles) {
            out += "kf:";
            for (const auto& v : k) out += " " + v.to_string();
            out += "\n";
          }
          return out;
        } else {
          return native::format_native(pl.ct) + "\n";
        }
      },
      b.payload);
}

VerifierSession::VerifierSession(const Integer& p, Randomness& rng, std::size_t rv_length)
    : material_{SchemeId::kNativeVerifier, p, {}} {
  if (rv_length == 0) throw Error(ErrorCode::kInvalidArgument, "rv must have at least one element");
  const Field field(p);
  for (std::size_t i = 0; i < rv_length; ++i) material_.rv.push_back(rng.uniform(2, p - 1));
}

CheckResult VerifierSession::check(const VerificationBundle& bundle) {
  const auto bytes = serialize_bundle(bundle);
  const auto id = crossratio::sha256(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  if (bound_ && *bound_ != id) {
    throw Error(ErrorCode::kSessionReplay, "this session's rv was already used for another bundle");
  }
  bound_ = id;
  return verifier_check(bundle, material_);
}

}  // namespace fht::protocol
