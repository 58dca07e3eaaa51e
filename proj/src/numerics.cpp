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

#include "fht/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace fht {

namespace {

constexpr int kPrimalityReps = 40;  // 4^-40 = 2^-80

FieldElement checked_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field()) {
    throw Error(ErrorCode::kModulusMismatch,
                "field elements belong to different moduli (" + a.modulus().get_str() +
                    " vs " + b.modulus().get_str() + ")");
  }
  return a;
}

Integer canonical(const Integer& v, const Integer& p) {
  Integer r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return r;
}

}  // namespace

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kZeroDenominator: return "zero-denominator";
    case ErrorCode::kInvalidModulus: return "invalid-modulus";
    case ErrorCode::kModulusMismatch: return "modulus-mismatch";
    case ErrorCode::kNonInvertible: return "non-invertible";
    case ErrorCode::kInvalidKey: return "invalid-key";
    case ErrorCode::kSingularProjection: return "singular-projection";
    case ErrorCode::kPointAtInfinity: return "point-at-infinity";
    case ErrorCode::kCorruptCiphertext: return "corrupt-ciphertext";
    case ErrorCode::kMalformedCiphertext: return "malformed-ciphertext";
    case ErrorCode::kMalformedBundle: return "malformed-bundle";
    case ErrorCode::kSchemeMismatch: return "scheme-mismatch";
    case ErrorCode::kInvalidRandomness: return "invalid-randomness";
    case ErrorCode::kZeroPlaintext: return "zero-plaintext";
    case ErrorCode::kPaddingError: return "padding-error";
    case ErrorCode::kInsufficientData: return "insufficient-data";
    case ErrorCode::kNeedsMorePairs: return "needs-more-pairs";
    case ErrorCode::kRefused: return "refused";
    case ErrorCode::kSessionReplay: return "session-replay";
  }
  return "unknown";
}

Integer parse_integer(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  const bool signed_form = !s.empty() && (s[0] == '-' || s[0] == '+');
  const std::size_t digits_at = signed_form ? 1 : 0;
  if (s.size() == digits_at ||
      !std::all_of(s.begin() + static_cast<std::ptrdiff_t>(digits_at), s.end(),
                   [](unsigned char c) { return std::isdigit(c) != 0; })) {
    throw Error(ErrorCode::kInvalidArgument, "not a decimal integer: '" + text + "'");
  }
  Integer v;
  v.set_str(s[0] == '+' ? s.substr(1) : s, 10);
  return v;
}

std::string to_decimal(const Integer& v) { return v.get_str(10); }

// --- Rational ---------------------------------------------------------------

Rational Rational::reduce(const Integer& num, const Integer& den) {
  if (den == 0) {
    throw Error(ErrorCode::kZeroDenominator, "rational with zero denominator");
  }
  if (num == 0) return Rational(Integer(0), Integer(1), true);
  Integer g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  Integer n = num / g;
  Integer d = den / g;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  return Rational(std::move(n), std::move(d), true);
}

Rational rational_reduce(const Integer& num, const Integer& den) {
  return Rational::reduce(num, den);
}

Rational Rational::operator-() const { return Rational(Integer(-num_), den_, true); }

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::reduce(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::reduce(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::reduce(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw Error(ErrorCode::kZeroDenominator, "rational division by zero");
  return Rational::reduce(a.num_ * b.den_, a.den_ * b.num_);
}

std::string Rational::to_string() const {
  return den_ == 1 ? num_.get_str() : num_.get_str() + "/" + den_.get_str();
}

// --- primes -------------------------------------------------------------------

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), kPrimalityReps) != 0;
}

namespace {

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0.
Integer pollard_brent(const Integer& n, unsigned long seed, unsigned long max_iterations) {
  if (n % 2 == 0) return 2;
  const Integer c = Integer(seed) % n;
  Integer y = Integer(seed + 1) % n, x, ys, q = 1, g = 1, tmp;
  unsigned long r = 1, iterations = 0;
  const unsigned long m = 128;
  auto step = [&](Integer& v) {
    v = (v * v + c) % n;
  };
  while (g == 1 && iterations < max_iterations) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) step(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        step(y);
        tmp = abs(x - y);
        q = (q * tmp) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
      iterations += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      step(ys);
      tmp = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), tmp.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  if (g == n || g == 1) return 0;
  return g;
}

void collect_factors(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out.push_back(n);
    return;
  }
  for (unsigned long seed = 1; seed < 64; ++seed) {
    Integer f = pollard_brent(n, seed, 1UL << 22);
    if (f != 0) {
      collect_factors(f, out);
      collect_factors(n / f, out);
      return;
    }
  }
  throw Error(ErrorCode::kRefused,
              "could not factor " + n.get_str() + " while checking the generator");
}

}  // namespace

std::vector<Integer> distinct_prime_factors(const Integer& n) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "factorization needs n >= 2");
  std::vector<Integer> factors;
  Integer rest = n;
  for (unsigned long d = 2; d < (1UL << 16) && Integer(d) * d <= rest; d += (d == 2 ? 1 : 2)) {
    if (rest % d == 0) {
      factors.emplace_back(d);
      while (rest % d == 0) rest /= d;
    }
  }
  collect_factors(rest, factors);
  std::sort(factors.begin(), factors.end());
  factors.erase(std::unique(factors.begin(), factors.end()), factors.end());
  return factors;
}

// --- Field ------------------------------------------------------------------

Field::Field(const Integer& p) {
  if (!is_probable_prime(p)) {
    throw Error(ErrorCode::kInvalidModulus, "modulus " + p.get_str() + " is not prime");
  }
  p_ = std::make_shared<const Integer>(p);
}

FieldElement Field::operator()(const Integer& v) const { return FieldElement(*this, v); }

FieldElement Field::operator()(long v) const { return FieldElement(*this, Integer(v)); }

FieldElement Field::from_rational(const Rational& r) const {
  return mod_div((*this)(r.num()), (*this)(r.den()));
}

bool is_generator(const Integer& g, const Field& field) {
  const Integer& p = field.p();
  const FieldElement base = field(g);
  if (base.is_zero()) return false;
  if (p == 2) return base.value() == 1;
  const Integer order = p - 1;
  for (const Integer& q : distinct_prime_factors(order)) {
    if (base.pow(order / q).value() == 1) return false;
  }
  return true;
}

// --- FieldElement -------------------------------------------------------------

FieldElement::FieldElement(const Field& field, const Integer& v)
    : field_(field), value_(canonical(v, field.p())) {}

FieldElement FieldElement::operator-() const {
  return FieldElement(field_, value_ == 0 ? Integer(0) : Integer(modulus() - value_), Canonical{});
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  checked_same_field(a, b);
  Integer v = a.value_ + b.value_;
  if (v >= a.modulus()) v -= a.modulus();
  return FieldElement(a.field_, std::move(v), FieldElement::Canonical{});
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  checked_same_field(a, b);
  Integer v = a.value_ - b.value_;
  if (v < 0) v += a.modulus();
  return FieldElement(a.field_, std::move(v), FieldElement::Canonical{});
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  checked_same_field(a, b);
  Integer v = a.value_ * b.value_;
  mpz_mod(v.get_mpz_t(), v.get_mpz_t(), a.modulus().get_mpz_t());
  return FieldElement(a.field_, std::move(v), FieldElement::Canonical{});
}

FieldElement FieldElement::pow(const Integer& exp) const {
  return mod_pow(value_, exp, field_);
}

FieldElement mod_pow(const Integer& base, const Integer& exp, const Field& field) {
  if (exp < 0) throw Error(ErrorCode::kInvalidArgument, "mod_pow needs a non-negative exponent");
  Integer r;
  const Integer b = canonical(base, field.p());
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), exp.get_mpz_t(), field.p().get_mpz_t());
  return field(r);
}

FieldElement mod_inv(const FieldElement& a) {
  if (a.is_zero()) {
    throw Error(ErrorCode::kNonInvertible,
                "0 has no inverse modulo " + a.modulus().get_str());
  }
  return a.pow(a.modulus() - 2);
}

FieldElement mod_div(const FieldElement& num, const FieldElement& den) {
  checked_same_field(num, den);
  if (den.is_zero()) {
    throw Error(ErrorCode::kNonInvertible,
                "denominator is a multiple of " + den.modulus().get_str());
  }
  return num * mod_inv(den);
}

}  // namespace fht
