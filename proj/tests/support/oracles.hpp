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

// Independent reference computations for tests. Nothing here calls into the
// library; everything is plain 64/128-bit arithmetic.

#ifndef FHT_TESTS_ORACLES_HPP
#define FHT_TESTS_ORACLES_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

inline u64 powmod_repeated(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  for (u64 i = 0; i < e; ++i) r = mulmod(r, b % m, m);
  return r;
}

inline u64 inverse_brute(u64 a, u64 p) {
  a %= p;
  for (u64 v = 1; v < p; ++v) {
    if (mulmod(a, v, p) == 1) return v;
  }
  return 0;
}

inline u64 reduce(i128 v, u64 p) {
  i128 r = v % static_cast<i128>(p);
  if (r < 0) r += p;
  return static_cast<u64>(r);
}

/// num/den mod p with the degenerate convention (den == 0 gives 1).
inline u64 ratio(i128 num, i128 den, u64 p) {
  const u64 d = reduce(den, p);
  if (d == 0) return 1;
  return mulmod(reduce(num, p), powmod(d, p - 2, p), p);
}

/// Unreduced fraction; equality by cross-multiplication.
struct Frac {
  i128 num, den;
  friend Frac operator+(Frac a, Frac b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Frac operator-(Frac a, Frac b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend Frac operator*(Frac a, Frac b) { return {a.num * b.num, a.den * b.den}; }
  friend Frac operator/(Frac a, Frac b) { return {a.num * b.den, a.den * b.num}; }
  bool same_value(i128 n, i128 d) const { return num * d == n * den; }
};

inline std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  std::string s;
  while (u) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  return neg ? "-" + s : s;
}

/// Plain cross-ratio numerator and denominator of four values.
inline i128 cr_num(i128 x1, i128 x2, i128 x3, i128 x4) { return (x1 - x3) * (x2 - x4); }
inline i128 cr_den(i128 x1, i128 x2, i128 x3, i128 x4) { return (x1 - x4) * (x2 - x3); }

/// Squared cross-ratio mod p of four integers.
inline u64 cr_sq_mod(i64 x1, i64 x2, i64 x3, i64 x4, u64 p) {
  const u64 v = ratio(cr_num(x1, x2, x3, x4), cr_den(x1, x2, x3, x4), p);
  return mulmod(v, v, p);
}

inline int popcount_diff(const unsigned char* a, const unsigned char* b, std::size_t n) {
  int bits = 0;
  for (std::size_t i = 0; i < n; ++i) bits += __builtin_popcount(static_cast<unsigned>(a[i] ^ b[i]));
  return bits;
}

inline std::vector<std::uint8_t> ascii(const std::string& s) {
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

}  // namespace oracle

#endif  // FHT_TESTS_ORACLES_HPP
