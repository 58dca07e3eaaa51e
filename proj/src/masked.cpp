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

#include "fht/masked.hpp"

#include <sstream>

namespace fht::masked {

namespace {

using crossratio::CrossRatioSeq;
using crossratio::kGroupSize;

void check_field(const FieldElement& v, const Field& field, std::size_t index) {
  if (v.field() != field) {
    throw Error(ErrorCode::kModulusMismatch, "ciphertext modulus differs from key", index);
  }
}

}  // namespace

MaskedKey masked_keygen(const Integer& p, const Integer& g, const Integer& x,
                        const projective::Params& params, const std::vector<Integer>& rv) {
  Field field(p);
  std::vector<std::string> violations = projective::key_violations(params, field);
  if (x < 2 || x > p - 2) violations.emplace_back("2 <= x <= p-2");
  bool generator = false;
  if (g > 0 && g < p) {
    try {
      generator = is_generator(g, field);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kRefused) throw;
      violations.emplace_back(std::string("g generates Z_p* (") + e.what() + ")");
      generator = true;
    }
  }
  if (!generator) violations.emplace_back("g generates Z_p*");
  for (std::size_t i = 0; i < rv.size(); ++i) {
    if (field(rv[i]).is_zero()) {
      violations.emplace_back("rv[" + std::to_string(i) + "] != 0 (mod p)");
    }
  }
  if (!violations.empty()) {
    std::string msg = "invalid masked key:";
    for (const auto& v : violations) msg += "\n  " + v + " violated";
    throw Error(ErrorCode::kInvalidKey, msg);
  }
  MaskedKey key{projective::Key::validate(params, field), field, g, x, mod_pow(g, x, field).value(),
                {}, {}};
  for (const auto& v : rv) {
    key.rv.push_back(field(v));
    key.rv_inv.push_back(mod_inv(key.rv.back()));
  }
  return key;
}

MaskedCiphertext masked_encrypt(std::span<const std::uint8_t> plaintext, const MaskedKey& key,
                                Randomness& rng) {
  const Field& f = key.field;
  const Integer& p = f.p();
  MaskedCiphertext out;
  out.reserve(crossratio::group_count(plaintext.size()));
  std::size_t index = 0;
  for (std::size_t gi = 0; index < plaintext.size(); ++gi) {
    const Integer r = rng.ephemeral(p);
    check_ephemeral(r, p, !rng.replay());
    const FieldElement mask = mod_pow(key.y, r, f);
    MaskedGroup group{mod_pow(key.g, r, f), {}};
    for (std::size_t k = 0; k < kGroupSize && index < plaintext.size(); ++k, ++index) {
      projective::check_alphabet(plaintext[index], f, index);
      Integer value = plaintext[index];
      if (k == 0 && key.noise()) value = (key.rv[gi % key.rv.size()] * f(value)).value();
      projective::ModPoint pt = [&] {
        try {
          return projective::project_mod(value, key.proj.params(), f);
        } catch (const Error& e) {
          throw Error(e.code(), std::string(e.what()) + " (byte " + std::to_string(index) + ")",
                      index);
        }
      }();
      group.points.push_back({pt.x * mask, pt.y * mask});
    }
    out.push_back(std::move(group));
  }
  return out;
}

std::vector<Integer> masked_decrypt_residues(const MaskedCiphertext& ct, const MaskedKey& key,
                                             DecryptPath path, NoiseCorrection noise) {
  const Field& f = key.field;
  const auto center = key.proj.center();
  const FieldElement x0 = f(center.x0);
  const FieldElement y0 = f(center.y0);
  std::vector<Integer> out;
  std::size_t index = 0;
  for (std::size_t gi = 0; gi < ct.size(); ++gi) {
    const MaskedGroup& group = ct[gi];
    if (group.points.empty() || group.points.size() > kGroupSize) {
      throw Error(ErrorCode::kMalformedCiphertext,
                  "group " + std::to_string(gi) + " has " + std::to_string(group.points.size()) +
                      " points",
                  index);
    }
    if (gi + 1 < ct.size() && group.points.size() != kGroupSize) {
      throw Error(ErrorCode::kMalformedCiphertext,
                  "only the last group may be short (group " + std::to_string(gi) + ")", index);
    }
    check_field(group.c1, f, index);
    if (group.c1.is_zero()) {
      throw Error(ErrorCode::kMalformedCiphertext, "group " + std::to_string(gi) + " has c1 = 0",
                  index);
    }
    const FieldElement shared = group.c1.pow(key.x);  // y^r
    const FieldElement unmask = mod_inv(shared);
    for (std::size_t k = 0; k < group.points.size(); ++k, ++index) {
      const auto& pt = group.points[k];
      check_field(pt.x, f, index);
      check_field(pt.y, f, index);
      FieldElement v = f(0);
      try {
        if (path == DecryptPath::kStripMask) {
          v = projective::unproject_mod({pt.x * unmask, pt.y * unmask}, center, f);
        } else if (pt.y.is_zero() || pt.x == x0 * shared) {
          v = pt.x * unmask;
        } else {
          v = mod_div(pt.x * y0 - x0 * pt.y, y0 * shared - pt.y);
        }
      } catch (const Error& e) {
        throw Error(e.code(), std::string(e.what()) + " (symbol " + std::to_string(index) + ")",
                    index);
      }
      if (k == 0 && key.noise() && noise == NoiseCorrection::kApply) {
        v = v * key.rv_inv[gi % key.rv_inv.size()];
      }
      out.push_back(v.value());
    }
  }
  return out;
}

std::vector<std::uint8_t> masked_decrypt(const MaskedCiphertext& ct, const MaskedKey& key,
                                         NoiseCorrection noise) {
  const auto a = masked_decrypt_residues(ct, key, DecryptPath::kStripMask, noise);
  const auto b = masked_decrypt_residues(ct, key, DecryptPath::kDirect, noise);
  std::vector<std::uint8_t> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) {
      throw Error(ErrorCode::kCorruptCiphertext,
                  "decryption paths disagree at symbol " + std::to_string(i), i);
    }
    if (a[i] >= projective::kSymbolCount) {
      throw Error(ErrorCode::kCorruptCiphertext,
                  "symbol " + std::to_string(i) + " decrypts to " + a[i].get_str() +
                      ", outside [0, 255]",
                  i);
    }
    out.push_back(static_cast<std::uint8_t>(a[i].get_ui()));
  }
  return out;
}

CrossRatioSeq masked_crs_plain(std::span<const std::uint8_t> plaintext, const Field& field,
                               const std::vector<FieldElement>& rv) {
  CrossRatioSeq seq(CrossRatioSeq::Mode::kField);
  const auto groups = crossratio::group_plaintext(plaintext);
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& g = groups[gi];
    if (g.size() < kGroupSize) {
      seq.push(field(1));
    } else if (rv.empty()) {
      seq.push(crossratio::cr_line_mod(g[0], g[1], g[2], g[3], field));
    } else {
      seq.push(crossratio::cr_line_mod_noised(g[0], g[1], g[2], g[3], rv[gi % rv.size()]));
    }
  }
  return seq;
}

CrossRatioSeq masked_crs_cipher(const MaskedCiphertext& ct, const Field& field) {
  CrossRatioSeq seq(CrossRatioSeq::Mode::kField);
  for (const auto& group : ct) {
    for (const auto& pt : group.points) {
      if (pt.x.field() != field || pt.y.field() != field) {
        throw Error(ErrorCode::kModulusMismatch, "ciphertext modulus differs from verifier p");
      }
    }
    if (group.points.size() < kGroupSize) {
      seq.push(field(1));
    } else {
      seq.push(crossratio::cr_cipher_noised(
          {group.points[0], group.points[1], group.points[2], group.points[3]}));
    }
  }
  return seq;
}

crossratio::Digest masked_hfv_plain(std::span<const std::uint8_t> plaintext,
                                    const MaskedKey& key) {
  return crossratio::hfv(masked_crs_plain(plaintext, key.field, key.rv));
}

crossratio::Digest masked_hfv_cipher(const MaskedCiphertext& ct, const Field& field) {
  return crossratio::hfv(masked_crs_cipher(ct, field));
}

std::string format_masked(const MaskedCiphertext& ct) {
  std::ostringstream os;
  for (const auto& group : ct) {
    os << group.c1.value() << " ;";
    for (const auto& pt : group.points) os << ' ' << pt.x.value() << ' ' << pt.y.value();
    os << '\n';
  }
  return os.str();
}

MaskedCiphertext parse_masked(std::string_view text, const Field& field) {
  MaskedCiphertext out;
  std::istringstream lines{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto residue = [&](const std::string& tok) {
    Integer v = parse_integer(tok);
    if (v < 0 || v >= field.p()) {
      throw Error(ErrorCode::kMalformedCiphertext,
                  "line " + std::to_string(lineno) + ": residue " + tok + " outside [0, p)");
    }
    return field(v);
  };
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto semi = line.find(';');
    if (semi == std::string::npos) {
      throw Error(ErrorCode::kMalformedCiphertext,
                  "line " + std::to_string(lineno) + ": missing ';' after c1");
    }
    std::istringstream head(line.substr(0, semi));
    std::istringstream body(line.substr(semi + 1));
    std::string tok;
    if (!(head >> tok)) {
      throw Error(ErrorCode::kMalformedCiphertext, "line " + std::to_string(lineno) + ": missing c1");
    }
    MaskedGroup group{residue(tok), {}};
    if (head >> tok) {
      throw Error(ErrorCode::kMalformedCiphertext,
                  "line " + std::to_string(lineno) + ": extra tokens before ';'");
    }
    std::vector<FieldElement> coords;
    while (body >> tok) coords.push_back(residue(tok));
    if (coords.empty() || coords.size() % 2 != 0 || coords.size() > 2 * kGroupSize) {
      throw Error(ErrorCode::kMalformedCiphertext,
                  "line " + std::to_string(lineno) + ": expected 1 to 4 coordinate pairs");
    }
    for (std::size_t i = 0; i < coords.size(); i += 2) group.points.push_back({coords[i], coords[i + 1]});
    out.push_back(std::move(group));
  }
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    if (out[i].points.size() != kGroupSize) {
      throw Error(ErrorCode::kMalformedCiphertext, "only the last group may be short");
    }
  }
  return out;
}

std::string format_pairs(const MaskedCiphertext& ct) {
  projective::CiphertextMod flat;
  for (const auto& group : ct) flat.insert(flat.end(), group.points.begin(), group.points.end());
  return projective::format_listing(flat);
}

}  // namespace fht::masked
