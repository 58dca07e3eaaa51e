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

// Exact rational and prime-field arithmetic.
//
// Every value in this module is immutable once built. Rationals are kept in
// lowest terms with a positive denominator; field elements are canonical
// residues in [0, p). A Field is a cheap shared handle on a modulus that has
// passed a probabilistic primality test, so elements can carry it around
// without re-testing.

#ifndef FHT_NUMERICS_HPP
#define FHT_NUMERICS_HPP

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "fht/error.hpp"

namespace fht {

using Integer = mpz_class;

Integer parse_integer(const std::string& text);
std::string to_decimal(const Integer& v);

class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(const Integer& n) : num_(n), den_(1) {}  // NOLINT(runtime/explicit)
  Rational(long n) : num_(n), den_(1) {}            // NOLINT(runtime/explicit)

  /// Builds num/den in lowest terms. Throws kZeroDenominator when den == 0.
  static Rational reduce(const Integer& num, const Integer& den);

  const Integer& num() const noexcept { return num_; }
  const Integer& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const noexcept { return sgn(num_); }

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  std::string to_string() const;

 private:
  Rational(Integer n, Integer d, bool) : num_(std::move(n)), den_(std::move(d)) {}

  Integer num_;
  Integer den_;
};

Rational rational_reduce(const Integer& num, const Integer& den);

/// Probabilistic primality test with error probability below 2^-80.
bool is_probable_prime(const Integer& n);

class FieldElement;

class Field {
 public:
  /// Throws kInvalidModulus unless p is a (probable) prime.
  explicit Field(const Integer& p);

  const Integer& p() const noexcept { return *p_; }

  FieldElement operator()(const Integer& v) const;
  FieldElement operator()(long v) const;

  /// (num / den) mod p. Throws kNonInvertible when p divides den.
  FieldElement from_rational(const Rational& r) const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_ || *a.p_ == *b.p_;
  }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

 private:
  std::shared_ptr<const Integer> p_;
};

class FieldElement {
 public:
  FieldElement(const Field& field, const Integer& v);

  const Integer& value() const noexcept { return value_; }
  const Field& field() const noexcept { return field_; }
  const Integer& modulus() const noexcept { return field_.p(); }
  bool is_zero() const noexcept { return value_ == 0; }

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.value_ == b.value_ && a.field_ == b.field_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) {
    return !(a == b);
  }

  FieldElement pow(const Integer& exp) const;

  std::string to_string() const { return value_.get_str(); }

 private:
  struct Canonical {};
  FieldElement(const Field& field, Integer v, Canonical)
      : field_(field), value_(std::move(v)) {}

  Field field_;
  Integer value_;
};

/// base^exp mod p for exp >= 0; base may be negative or unreduced.
FieldElement mod_pow(const Integer& base, const Integer& exp, const Field& field);

/// a^(p-2) mod p. Throws kNonInvertible when a == 0.
FieldElement mod_inv(const FieldElement& a);

/// num * den^(p-2) mod p. Throws kNonInvertible when den == 0.
FieldElement mod_div(const FieldElement& num, const FieldElement& den);

/// Distinct prime factors of n (n >= 2). Trial division followed by Pollard
/// rho; throws kRefused if a composite cofactor resists factoring.
std::vector<Integer> distinct_prime_factors(const Integer& n);

/// True iff g generates the multiplicative group of the field.
bool is_generator(const Integer& g, const Field& field);

}  // namespace fht

#endif  // FHT_NUMERICS_HPP
