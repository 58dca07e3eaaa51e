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

#include "fht/crossratio.hpp"

#include <openssl/evp.h>

#include <sstream>

namespace fht::crossratio {

namespace {

Rational sq_distance(const projective::Point& p, const projective::Point& q) {
  const Rational dx = p.x - q.x;
  const Rational dy = p.y - q.y;
  return dx * dx + dy * dy;
}

FieldElement sq_distance(const projective::ModPoint& p, const projective::ModPoint& q) {
  const FieldElement dx = p.x - q.x;
  const FieldElement dy = p.y - q.y;
  return dx * dx + dy * dy;
}

}  // namespace

Rational cr_line(const Integer& x1, const Integer& x2, const Integer& x3, const Integer& x4) {
  const Integer num = x1 * x2 - x1 * x4 - x2 * x3 + x3 * x4;
  const Integer den = x1 * x2 - x1 * x3 - x2 * x4 + x3 * x4;
  if (den == 0) return Rational(1);
  return Rational::reduce(num, den);
}

Rational cr_planar_sq(const Quad<projective::Point>& pts) {
  const Rational num = sq_distance(pts[2], pts[0]) * sq_distance(pts[3], pts[1]);
  const Rational den = sq_distance(pts[2], pts[1]) * sq_distance(pts[3], pts[0]);
  if (den.is_zero()) return Rational(1);
  return num / den;
}

FieldElement cr_ratio_mod(const Quad<FieldElement>& xs) {
  const auto& [x1, x2, x3, x4] = xs;
  const FieldElement num = x1 * x2 - x1 * x4 - x2 * x3 + x3 * x4;
  const FieldElement den = x1 * x2 - x1 * x3 - x2 * x4 + x3 * x4;
  if (den.is_zero()) return x1.field()(1);
  return mod_div(num, den);
}

FieldElement cr_line_mod(const Integer& x1, const Integer& x2, const Integer& x3,
                         const Integer& x4, const Field& field) {
  const FieldElement v = cr_ratio_mod({field(x1), field(x2), field(x3), field(x4)});
  return v * v;
}

FieldElement cr_planar_sq_mod(const Quad<projective::ModPoint>& pts) {
  const FieldElement num = sq_distance(pts[2], pts[0]) * sq_distance(pts[3], pts[1]);
  const FieldElement den = sq_distance(pts[2], pts[1]) * sq_distance(pts[3], pts[0]);
  if (den.is_zero()) return num.field()(1);
  return mod_div(num, den);
}

FieldElement cr_line_mod_noised(const Integer& x1, const Integer& x2, const Integer& x3,
                                const Integer& x4, const FieldElement& rv) {
  const Field& f = rv.field();
  const FieldElement v = cr_ratio_mod({rv * f(x1), f(x2), f(x3), f(x4)});
  return v * v;
}

FieldElement cr_cipher_noised(const Quad<projective::ModPoint>& pts) {
  // The noise is already inside the first point's coordinates.
  return cr_planar_sq_mod(pts);
}

void CrossRatioSeq::push(const Rational& r) {
  if (mode_ != Mode::kRationalSquared) {
    throw Error(ErrorCode::kInvalidArgument, "rational value pushed into a field sequence");
  }
  rationals_.push_back(r);
}

void CrossRatioSeq::push(const FieldElement& v) {
  if (mode_ != Mode::kField) {
    throw Error(ErrorCode::kInvalidArgument, "residue pushed into a rational sequence");
  }
  if (!residues_.empty() && residues_.front().field() != v.field()) {
    throw Error(ErrorCode::kModulusMismatch, "cross-ratio sequence mixes moduli");
  }
  residues_.push_back(v);
}

std::string serialize_crs(const CrossRatioSeq& seq) {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << ' ';
    first = false;
  };
  if (seq.mode() == CrossRatioSeq::Mode::kField) {
    for (const auto& v : seq.residues()) {
      sep();
      os << v.value();
    }
  } else {
    for (const auto& r : seq.rationals()) {
      sep();
      os << r.num() << ' ' << r.den();
    }
  }
  return os.str();
}

Digest sha256(std::string_view data) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    throw std::runtime_error("SHA-256 failed");
  }
  return out;
}

Digest hfv(const CrossRatioSeq& seq) { return sha256(serialize_crs(seq)); }

std::string to_hex(const Digest& digest) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = "0x";
  for (std::uint8_t b : digest) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0xF]);
  }
  return out;
}

Digest parse_hex(std::string_view text) {
  if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
  if (text.size() != 64) throw Error(ErrorCode::kInvalidArgument, "digest must be 64 hex digits");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw Error(ErrorCode::kInvalidArgument, std::string("bad hex digit '") + c + "'");
  };
  Digest out{};
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(nibble(text[2 * i]) << 4 | nibble(text[2 * i + 1]));
  }
  return out;
}

}  // namespace fht::crossratio
