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

#include "fht/native.hpp"

#include <sstream>

namespace fht::native {

namespace {

using crossratio::CrossRatioSeq;
using crossratio::kGroupSize;

FieldElement ratio_or_one(const FieldElement& num, const FieldElement& den) {
  if (den.is_zero()) return num.field()(1);
  return mod_div(num, den);
}

std::array<FieldElement, 4> quad(std::span<const FieldElement> v, std::size_t at) {
  return {v[at], v[at + 1], v[at + 2], v[at + 3]};
}

}  // namespace

ElGamalKey elgamal_keygen(const Integer& p, const Integer& g, const Integer& x,
                          unsigned symbol_offset) {
  Field field(p);
  std::vector<std::string> violations;
  if (x < 2 || x > p - 2) violations.emplace_back("2 <= x <= p-2");
  if (g <= 0 || g >= p || !is_generator(g, field)) violations.emplace_back("g generates Z_p*");
  if (p <= 255 + symbol_offset) {
    violations.emplace_back("p > 255 + symbol offset");
  }
  if (!violations.empty()) {
    std::string msg = "invalid ElGamal key:";
    for (const auto& v : violations) msg += "\n  " + v + " violated";
    throw Error(ErrorCode::kInvalidKey, msg);
  }
  return {field, g, x, mod_pow(g, x, field).value(), symbol_offset};
}

std::vector<FieldElement> to_symbols(std::span<const std::uint8_t> bytes, const ElGamalKey& key) {
  std::vector<FieldElement> out;
  out.reserve(bytes.size());
  for (std::uint8_t b : bytes) out.push_back(key.field(static_cast<long>(b) + key.symbol_offset));
  return out;
}

NativeCiphertext eg_encrypt_symbols(const std::vector<FieldElement>& symbols,
                                    const ElGamalKey& key, const std::vector<Integer>& r,
                                    bool strict) {
  if (r.size() != symbols.size()) {
    throw Error(ErrorCode::kInvalidRandomness, "one exponent per symbol required");
  }
  const Field& f = key.field;
  NativeCiphertext ct;
  ct.c2.reserve(symbols.size());
  ct.c1.reserve(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i].is_zero()) {
      throw Error(ErrorCode::kZeroPlaintext,
                  "symbol " + std::to_string(i) + " is 0 mod p and cannot be encrypted", i);
    }
    check_ephemeral(r[i], f.p(), strict);
    ct.c2.push_back(symbols[i] * mod_pow(key.y, r[i], f));
    ct.c1.push_back(mod_pow(key.g, r[i], f));
  }
  return ct;
}

NativeCiphertext eg_encrypt(std::span<const std::uint8_t> bytes, const ElGamalKey& key,
                            Randomness& rng, std::vector<Integer>* r_out) {
  const auto symbols = to_symbols(bytes, key);
  std::vector<Integer> r;
  r.reserve(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) r.push_back(rng.ephemeral(key.field.p()));
  auto ct = eg_encrypt_symbols(symbols, key, r, !rng.replay());
  if (r_out) *r_out = std::move(r);
  return ct;
}

std::vector<FieldElement> eg_decrypt_symbols(const NativeCiphertext& ct, const ElGamalKey& key) {
  if (ct.c1.size() != ct.c2.size()) {
    throw Error(ErrorCode::kMalformedCiphertext, "c1 and c2 lengths differ");
  }
  const Field& f = key.field;
  std::vector<FieldElement> out;
  out.reserve(ct.c2.size());
  for (std::size_t i = 0; i < ct.c2.size(); ++i) {
    if (ct.c1[i].field() != f || ct.c2[i].field() != f) {
      throw Error(ErrorCode::kModulusMismatch, "ciphertext modulus differs from key", i);
    }
    if (ct.c1[i].is_zero()) {
      throw Error(ErrorCode::kMalformedCiphertext, "c1 = 0 at symbol " + std::to_string(i), i);
    }
    out.push_back(ct.c2[i] * mod_inv(ct.c1[i].pow(key.x)));
  }
  return out;
}

std::vector<std::uint8_t> eg_decrypt(const NativeCiphertext& ct, const ElGamalKey& key) {
  const auto symbols = eg_decrypt_symbols(ct, key);
  std::vector<std::uint8_t> out;
  out.reserve(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const Integer v = symbols[i].value() - key.symbol_offset;
    if (v < 0 || v > 255) {
      throw Error(ErrorCode::kCorruptCiphertext,
                  "symbol " + std::to_string(i) + " decrypts to " + symbols[i].to_string() +
                      ", outside the byte range",
                  i);
    }
    out.push_back(static_cast<std::uint8_t>(v.get_ui()));
  }
  return out;
}

std::array<Integer, 4> kf_exponents(const std::array<Integer, 4>& r, const Integer& kf) {
  return {kf - r[0] - r[1], kf - r[2] - r[3], kf - r[0] - r[3], kf - r[0] - r[2]};
}

KfBundle kf_bundle(const std::array<Integer, 4>& r, const Integer& kf, const ElGamalKey& key,
                   const std::optional<FieldElement>& rv) {
  const Field& f = key.field;
  const Integer order = f.p() - 1;
  const auto e = kf_exponents(r, kf);
  auto power = [&](const Integer& exp) {
    Integer reduced = exp % order;
    if (reduced < 0) reduced += order;
    return mod_pow(key.y, reduced, f);
  };
  KfBundle k{power(e[0]), power(e[1]), power(e[2]), power(e[3])};
  if (rv) k[0] = k[0] * *rv;
  return k;
}

FieldElement cr_native_with_kf(const std::array<FieldElement, 4>& c, const KfBundle& k,
                               const std::optional<FieldElement>& verifier_rv) {
  for (const auto& v : k) {
    if (v.is_zero()) throw Error(ErrorCode::kMalformedBundle, "kf bundle holds a zero residue");
  }
  const Field& f = c[0].field();
  const FieldElement w = verifier_rv ? *verifier_rv : f(1);
  const FieldElement k12 = k[0] * k[1];
  const FieldElement t12 = w * c[0] * c[1] * k[0];
  const FieldElement t34 = c[2] * c[3] * k[1];
  const FieldElement t14 = w * c[0] * c[3] * k[2];
  const FieldElement t13 = w * c[0] * c[2] * k[3];
  const FieldElement t23 = c[1] * c[2] * mod_div(k12, k[2]);
  const FieldElement t24 = c[1] * c[3] * mod_div(k12, k[3]);
  return ratio_or_one(t12 - t14 - t23 + t34, t12 - t13 - t24 + t34);
}

FieldElement cr_plain_noised_native(const std::array<FieldElement, 4>& m, const FieldElement& rv) {
  return crossratio::cr_ratio_mod({m[0], rv * m[1], m[2], m[3]});
}

FieldElement cr_plain_verifier_random(const std::array<FieldElement, 4>& m,
                                      const FieldElement& rv) {
  return crossratio::cr_ratio_mod({rv * m[0], m[1], m[2], m[3]});
}

std::vector<KfBundle> kf_bundles(const std::vector<Integer>& r, const ElGamalKey& key,
                                 Randomness& rng, const std::vector<FieldElement>& bundle_rv) {
  std::vector<KfBundle> out;
  for (std::size_t at = 0, gi = 0; at + kGroupSize <= r.size(); at += kGroupSize, ++gi) {
    const Integer kf = rng.common_factor(key.field.p());
    std::optional<FieldElement> rv;
    if (!bundle_rv.empty()) rv = bundle_rv[gi % bundle_rv.size()];
    out.push_back(kf_bundle({r[at], r[at + 1], r[at + 2], r[at + 3]}, kf, key, rv));
  }
  return out;
}

CrossRatioSeq native_crs_plain(const std::vector<FieldElement>& symbols, const Field& field,
                               const std::vector<FieldElement>& verifier_rv) {
  CrossRatioSeq seq(CrossRatioSeq::Mode::kField);
  const auto groups = crossratio::group_plaintext(std::span<const FieldElement>(symbols));
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& g = groups[gi];
    if (g.size() < kGroupSize) {
      seq.push(field(1));
    } else if (verifier_rv.empty()) {
      seq.push(crossratio::cr_ratio_mod(quad(g, 0)));
    } else {
      seq.push(cr_plain_verifier_random(quad(g, 0), verifier_rv[gi % verifier_rv.size()]));
    }
  }
  return seq;
}

CrossRatioSeq native_crs_cipher(const NativeCiphertext& ct, const std::vector<KfBundle>& bundles,
                                const Field& field,
                                const std::vector<FieldElement>& verifier_rv) {
  const std::size_t full = ct.c2.size() / kGroupSize;
  if (bundles.size() != full) {
    throw Error(ErrorCode::kMalformedBundle,
                "expected " + std::to_string(full) + " kf bundles, found " +
                    std::to_string(bundles.size()));
  }
  for (const auto& v : ct.c2) {
    if (v.field() != field) {
      throw Error(ErrorCode::kModulusMismatch, "ciphertext modulus differs from verifier p");
    }
  }
  CrossRatioSeq seq(CrossRatioSeq::Mode::kField);
  for (std::size_t gi = 0; gi < full; ++gi) {
    std::optional<FieldElement> w;
    if (!verifier_rv.empty()) w = verifier_rv[gi % verifier_rv.size()];
    seq.push(cr_native_with_kf(quad(ct.c2, gi * kGroupSize), bundles[gi], w));
  }
  if (ct.c2.size() % kGroupSize != 0) seq.push(field(1));
  return seq;
}

std::vector<FieldElement> pad_block(std::vector<FieldElement> symbols, const Field& field) {
  long pad = kPadStart;
  while (symbols.size() % kBlockSize != 0) symbols.push_back(field(pad++));
  return symbols;
}

NativeCiphertext sum_encrypt(const std::vector<FieldElement>& padded, const ElGamalKey& key,
                             Randomness& rng, std::vector<Integer>* r_out) {
  if (padded.size() % kBlockSize != 0) {
    throw Error(ErrorCode::kPaddingError,
                "block input must be a multiple of 16 symbols, got " +
                    std::to_string(padded.size()));
  }
  const Integer& p = key.field.p();
  std::vector<Integer> r;
  r.reserve(padded.size());
  for (std::size_t at = 0; at < padded.size(); at += kBlockSize) {
    const SumMatrix m = rng.sum_matrix(p);
    check_sum_matrix(m, p, !rng.replay());
    r.insert(r.end(), m.begin(), m.end());
  }
  auto ct = eg_encrypt_symbols(padded, key, r, !rng.replay());
  if (r_out) *r_out = std::move(r);
  return ct;
}

FieldElement cr_sum(std::span<const FieldElement> block) {
  if (block.size() != kBlockSize) {
    throw Error(ErrorCode::kPaddingError, "a block holds exactly 16 values");
  }
  const Field& f = block[0].field();
  std::array<FieldElement, 4> cols{f(1), f(1), f(1), f(1)};
  for (std::size_t i = 0; i < kBlockSize; ++i) cols[i % 4] = cols[i % 4] * block[i];
  return crossratio::cr_ratio_mod(cols);
}

CrossRatioSeq sum_crs(std::span<const FieldElement> padded) {
  if (padded.size() % kBlockSize != 0) {
    throw Error(ErrorCode::kPaddingError, "input is not a whole number of 16-value blocks");
  }
  CrossRatioSeq seq(CrossRatioSeq::Mode::kField);
  for (std::size_t at = 0; at < padded.size(); at += kBlockSize) {
    seq.push(cr_sum(padded.subspan(at, kBlockSize)));
  }
  return seq;
}

MultiplyReport homomorphic_multiply_demo(const NativeCiphertext& ct, const KfBundle& first,
                                         const KfBundle& second, const ElGamalKey& key) {
  if (ct.c2.size() < 2 * kGroupSize || ct.c1.size() != ct.c2.size()) {
    throw Error(ErrorCode::kInsufficientData, "the demo needs at least 8 ciphertext symbols");
  }
  const Field& f = key.field;
  MultiplyReport rep{{f(0), f(0), f(0), f(0)}, {f(0), f(0), f(0), f(0)},
                     {f(0), f(0), f(0), f(0)}, {f(0), f(0), f(0), f(0)}, f(0), f(0)};
  NativeCiphertext product;
  for (std::size_t i = 0; i < kGroupSize; ++i) {
    rep.product_c2[i] = ct.c2[i] * ct.c2[i + kGroupSize];
    rep.product_c1[i] = ct.c1[i] * ct.c1[i + kGroupSize];
    rep.combined[i] = first[i] * second[i];
    product.c2.push_back(rep.product_c2[i]);
    product.c1.push_back(rep.product_c1[i]);
  }
  const auto dec = eg_decrypt_symbols(product, key);
  for (std::size_t i = 0; i < kGroupSize; ++i) rep.decrypted[i] = dec[i];
  rep.cr_plain = crossratio::cr_ratio_mod(rep.decrypted);
  rep.cr_cipher = cr_native_with_kf(rep.product_c2, rep.combined);
  return rep;
}

std::string format_native(const NativeCiphertext& ct) {
  std::ostringstream os;
  os << "c2:";
  for (const auto& v : ct.c2) os << ' ' << v.value();
  os << " / c1:";
  for (const auto& v : ct.c1) os << ' ' << v.value();
  return os.str();
}

NativeCiphertext parse_native(std::string_view text, const Field& field) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    throw Error(ErrorCode::kMalformedCiphertext, "expected \"c2: ... / c1: ...\"");
  }
  auto section = [&](std::string_view part, std::string_view label) {
    std::istringstream is{std::string(part)};
    std::string tok;
    if (!(is >> tok) || tok != label) {
      throw Error(ErrorCode::kMalformedCiphertext, "missing label " + std::string(label));
    }
    std::vector<FieldElement> out;
    while (is >> tok) {
      Integer v = parse_integer(tok);
      if (v < 0 || v >= field.p()) {
        throw Error(ErrorCode::kMalformedCiphertext, "residue " + tok + " outside [0, p)");
      }
      out.push_back(field(v));
    }
    return out;
  };
  NativeCiphertext ct{section(text.substr(0, slash), "c2:"), section(text.substr(slash + 1), "c1:")};
  if (ct.c1.size() != ct.c2.size()) {
    throw Error(ErrorCode::kMalformedCiphertext, "c1 and c2 lengths differ");
  }
  return ct;
}

}  // namespace fht::native
