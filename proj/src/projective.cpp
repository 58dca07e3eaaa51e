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

#include "fht/projective.hpp"

#include <sstream>
#include <utility>

namespace fht::projective {

namespace {

std::string join_violations(const std::vector<std::string>& violations) {
  std::string out = "invalid projective key:";
  for (const auto& v : violations) out += "\n  " + v + " violated";
  return out;
}

bool divides(const Integer& p, const Integer& v) { return v % p == 0; }

std::uint8_t checked_byte(const Integer& v, std::size_t index) {
  if (v < 0 || v >= kSymbolCount) {
    throw Error(ErrorCode::kCorruptCiphertext,
                "symbol " + std::to_string(index) + " decrypts to " + v.get_str() +
                    ", outside [0, " + std::to_string(kSymbolCount - 1) + "]",
                index);
  }
  return static_cast<std::uint8_t>(v.get_ui());
}

}  // namespace

void check_alphabet(std::uint8_t byte, const Field& field, std::size_t index) {
  if (byte >= field.p()) {
    throw Error(ErrorCode::kInvalidArgument,
                "byte " + std::to_string(byte) + " at index " + std::to_string(index) +
                    " is not below p = " + field.p().get_str(),
                index);
  }
}

std::vector<std::string> key_violations(const Params& k, const std::optional<Field>& field) {
  std::vector<std::string> out;
  if (k.a * k.x0 + k.b * k.y0 + k.c == 0) out.emplace_back("a*x0 + b*y0 + c != 0");
  if (k.y0 == 0) out.emplace_back("y0 != 0");
  if (k.a == 0 && k.b == 0) out.emplace_back("(a, b) != (0, 0)");
  if (k.a == 0 && k.c == 0) out.emplace_back("(a, c) != (0, 0)");
  if (k.a != 0) {
    const Integer num = k.a * k.x0 + k.b * k.y0;
    if (num % k.a == 0) {
      const Integer s = num / k.a;
      if (s >= 0 && s < kSymbolCount && (!field || s < field->p())) {
        out.emplace_back("a*x0 - a*s + b*y0 != 0 for every byte s (s = " + s.get_str() + ")");
      }
    }
  }
  if (field) {
    const Integer& p = field->p();
    if (k.y0 != 0 && divides(p, k.y0)) out.emplace_back("y0 != 0 (mod p)");
    const Integer on_line = k.a * k.x0 + k.b * k.y0 + k.c;
    if (on_line != 0 && divides(p, on_line)) out.emplace_back("a*x0 + b*y0 + c != 0 (mod p)");
    if (divides(p, k.a * k.a + k.b * k.b)) out.emplace_back("a^2 + b^2 != 0 (mod p)");
  }
  return out;
}

Key Key::validate(const Params& params, std::optional<Field> field) {
  auto violations = key_violations(params, field);
  if (!violations.empty()) throw Error(ErrorCode::kInvalidKey, join_violations(violations));
  return Key(params, std::move(field));
}

Integer projection_denominator(const Integer& s, const Params& k) {
  return k.a * k.x0 - k.a * s + k.b * k.y0;
}

Point project_point(const Integer& xn, const Params& k) {
  if (xn == k.x0) {
    if (k.b == 0) {
      throw Error(ErrorCode::kSingularProjection,
                  "x = " + xn.get_str() + " projects to infinity (vertical line)");
    }
    return {Rational(xn), Rational::reduce(-(k.a * xn + k.c), k.b)};
  }
  const Integer den = projection_denominator(xn, k);
  if (den == 0) {
    throw Error(ErrorCode::kSingularProjection, "x = " + xn.get_str() + " projects to infinity");
  }
  return {Rational::reduce(-k.c * k.x0 + k.c * xn + k.b * xn * k.y0, den),
          Rational::reduce(-k.a * xn * k.y0 - k.c * k.y0, den)};
}

ModPoint project_mod(const Integer& value, const Params& k, const Field& field) {
  const FieldElement den = field(projection_denominator(value, k));
  if (den.is_zero()) {
    throw Error(ErrorCode::kNonInvertible,
                "projection denominator of " + value.get_str() + " vanishes mod " +
                    field.p().get_str() + "; choose another key or modulus");
  }
  const FieldElement inv = mod_inv(den);
  return {field(-k.c * k.x0 + k.c * value + k.b * value * k.y0) * inv,
          field(-k.a * value * k.y0 - k.c * k.y0) * inv};
}

CiphertextA encrypt_a(std::span<const std::uint8_t> plaintext, const Key& key) {
  CiphertextA out;
  out.reserve(plaintext.size());
  for (std::uint8_t byte : plaintext) out.push_back(project_point(Integer(byte), key.params()));
  return out;
}

Rational unproject(const Point& point, const Center& center) {
  if (point.x == Rational(center.x0) || point.y.is_zero()) return point.x;
  if (point.y == Rational(center.y0)) {
    throw Error(ErrorCode::kPointAtInfinity, "ciphertext point has y' = y0");
  }
  const Rational y0(center.y0);
  return (point.x * y0 - Rational(center.x0) * point.y) / (y0 - point.y);
}

std::vector<std::uint8_t> decrypt_a(const CiphertextA& ct, const Center& center) {
  std::vector<std::uint8_t> out;
  out.reserve(ct.size());
  for (std::size_t i = 0; i < ct.size(); ++i) {
    Rational x;
    try {
      x = unproject(ct[i], center);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " (symbol " + std::to_string(i) + ")", i);
    }
    if (!x.is_integer()) {
      throw Error(ErrorCode::kCorruptCiphertext,
                  "symbol " + std::to_string(i) + " decrypts to non-integer " + x.to_string(), i);
    }
    out.push_back(checked_byte(x.num(), i));
  }
  return out;
}

ModPoint reduce_point(const Point& point, const Field& field) {
  return {field.from_rational(point.x), field.from_rational(point.y)};
}

CiphertextMod encrypt_mod(std::span<const std::uint8_t> plaintext, const Key& key) {
  if (!key.field()) {
    throw Error(ErrorCode::kInvalidKey, "mod-p encryption needs a key with a modulus");
  }
  // Only 256 distinct inputs; project each byte value once.
  std::vector<std::optional<ModPoint>> table(kSymbolCount);
  CiphertextMod out;
  out.reserve(plaintext.size());
  for (std::size_t i = 0; i < plaintext.size(); ++i) {
    check_alphabet(plaintext[i], *key.field(), i);
    auto& slot = table[plaintext[i]];
    if (!slot) {
      try {
        slot = project_mod(Integer(plaintext[i]), key.params(), *key.field());
      } catch (const Error& e) {
        throw Error(e.code(), std::string(e.what()) + " (byte " + std::to_string(i) + ")", i);
      }
    }
    out.push_back(*slot);
  }
  return out;
}

FieldElement unproject_mod(const ModPoint& point, const Center& center, const Field& field) {
  const FieldElement x0 = field(center.x0);
  if (point.y.is_zero() || point.x == x0) return point.x;
  const FieldElement y0 = field(center.y0);
  return mod_div(point.x * y0 - x0 * point.y, y0 - point.y);
}

std::vector<std::uint8_t> decrypt_mod(const CiphertextMod& ct, const Center& center,
                                      const Field& field) {
  std::vector<std::uint8_t> out;
  out.reserve(ct.size());
  for (std::size_t i = 0; i < ct.size(); ++i) {
    if (ct[i].x.field() != field || ct[i].y.field() != field) {
      throw Error(ErrorCode::kModulusMismatch, "ciphertext modulus differs from key", i);
    }
    FieldElement x = field(0);
    try {
      x = unproject_mod(ct[i], center, field);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " (symbol " + std::to_string(i) + ")", i);
    }
    out.push_back(checked_byte(x.value(), i));
  }
  return out;
}

std::string format_listing(const CiphertextA& ct) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ct.size(); ++i) {
    if (i) os << " | ";
    os << ct[i].x.num() << ' ' << ct[i].x.den() << ' ' << ct[i].y.num() << ' ' << ct[i].y.den();
  }
  return os.str();
}

std::string format_listing(const CiphertextMod& ct) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ct.size(); ++i) {
    if (i) os << " | ";
    os << ct[i].x.value() << ' ' << ct[i].y.value();
  }
  return os.str();
}

std::vector<std::vector<Integer>> parse_groups(std::string_view text) {
  std::vector<std::vector<Integer>> groups;
  std::string current;
  auto flush = [&](bool required) {
    std::istringstream is(current);
    std::vector<Integer> tokens;
    std::string tok;
    while (is >> tok) tokens.push_back(parse_integer(tok));
    if (!tokens.empty()) {
      groups.push_back(std::move(tokens));
    } else if (required) {
      throw Error(ErrorCode::kMalformedCiphertext, "empty group in ciphertext listing");
    }
    current.clear();
  };
  for (char ch : text) {
    if (ch == '|') {
      flush(true);
    } else {
      current.push_back(ch);
    }
  }
  flush(!groups.empty());
  return groups;
}

CiphertextA parse_listing_a(std::string_view text) {
  CiphertextA out;
  const auto groups = parse_groups(text);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto& g = groups[i];
    if (g.size() != 4) {
      throw Error(ErrorCode::kMalformedCiphertext,
                  "tuple " + std::to_string(i) + " needs 4 integers, has " + std::to_string(g.size()), i);
    }
    if (g[1] <= 0 || g[3] <= 0) {
      throw Error(ErrorCode::kMalformedCiphertext, "tuple " + std::to_string(i) +
                                                        " has a non-positive denominator", i);
    }
    Point pt{Rational::reduce(g[0], g[1]), Rational::reduce(g[2], g[3])};
    if (pt.x.num() != g[0] || pt.y.num() != g[2]) {
      throw Error(ErrorCode::kMalformedCiphertext,
                  "tuple " + std::to_string(i) + " is not in lowest terms", i);
    }
    out.push_back(std::move(pt));
  }
  return out;
}

CiphertextMod parse_listing_mod(std::string_view text, const Field& field) {
  CiphertextMod out;
  const auto groups = parse_groups(text);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto& g = groups[i];
    if (g.size() != 2) {
      throw Error(ErrorCode::kMalformedCiphertext,
                  "pair " + std::to_string(i) + " needs 2 integers, has " + std::to_string(g.size()), i);
    }
    for (const auto& v : g) {
      if (v < 0 || v >= field.p()) {
        throw Error(ErrorCode::kMalformedCiphertext,
                    "residue " + v.get_str() + " outside [0, p)", i);
      }
    }
    out.push_back({field(g[0]), field(g[1])});
  }
  return out;
}

}  // namespace fht::projective
