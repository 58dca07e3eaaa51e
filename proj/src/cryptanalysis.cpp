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

#include "fht/cryptanalysis.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <limits>

namespace fht::cryptanalysis {

namespace {

using projective::Center;
using projective::Point;

constexpr std::size_t kMaxStoredCandidates = 4096;

// alpha*x + beta*y = gamma
struct Eq {
  Rational alpha, beta, gamma;
};

// The line through (s, 0) and the image point.
Eq through_axis(const Integer& s, const Point& image) {
  return {image.y, -(image.x - Rational(s)), image.y * Rational(s)};
}

std::optional<Point> intersect(const Eq& l1, const Eq& l2) {
  const Rational det = l1.alpha * l2.beta - l2.alpha * l1.beta;
  if (det.is_zero()) return std::nullopt;
  return Point{(l1.gamma * l2.beta - l2.gamma * l1.beta) / det,
               (l1.alpha * l2.gamma - l2.alpha * l1.gamma) / det};
}

std::vector<Point> distinct_points(const projective::CiphertextA& ct) {
  std::vector<Point> out;
  for (const auto& pt : ct) {
    if (std::find(out.begin(), out.end(), pt) == out.end()) out.push_back(pt);
  }
  return out;
}

// A center is plausible when it is integral, forms a valid key with the
// recovered line, and sends every distinct point to a symbol in [0, n).
bool plausible(const Point& o, const Line& line, const std::vector<Point>& pts, unsigned n) {
  if (!o.x.is_integer() || !o.y.is_integer() || o.y.is_zero()) return false;
  const Center center{o.x.num(), o.y.num()};
  for (const auto& pt : pts) {
    if (pt.y == o.y) return false;
    const Rational s = projective::unproject(pt, center);
    if (!s.is_integer() || s.num() < 0 || s.num() >= n) return false;
  }
  return projective::key_violations({center.x0, center.y0, line.a, line.b, line.c}).empty();
}

void record(CenterSearch& res, const Point& o) {
  const Center c{o.x.num(), o.y.num()};
  for (const auto& seen : res.candidates) {
    if (seen.x0 == c.x0 && seen.y0 == c.y0) return;
  }
  ++res.candidate_count;
  if (res.candidates.size() < kMaxStoredCandidates) res.candidates.push_back(c);
}

// A group with a repeated symbol has CR identically 1 (or a vanishing
// denominator), so no change inside it is visible.
template <typename T>
bool pairwise_distinct(std::span<const T> g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (g[i] == g[j]) return false;
    }
  }
  return true;
}

template <typename P>
P translate(const P& pt, const P& d) {
  return {pt.x + d.x, pt.y + d.y};
}

// 64-bit modular helpers for the dictionary.
using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 b, u64 e, u64 p) {
  u64 r = 1 % p;
  for (b %= p; e; e >>= 1, b = mulmod(b, b, p)) {
    if (e & 1) r = mulmod(r, b, p);
  }
  return r;
}

std::string format_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", s);
  return buf;
}

}  // namespace

std::string AttackReport::to_text() const {
  std::string out = "attack: " + attack + "\nsuccess: " + (success ? "yes" : "no") +
                    "\nwork: " + std::to_string(work) + "\nelapsed: " + format_seconds(elapsed) +
                    " s\n";
  for (const auto& [k, v] : facts) out += k + ": " + v + "\n";
  return out;
}

std::string AttackReport::to_json() const {
  nlohmann::ordered_json j = {{"attack", attack},
                              {"success", success},
                              {"work", work},
                              {"elapsed", elapsed}};
  for (const auto& [k, v] : facts) j[k] = v;
  return j.dump(2) + "\n";
}

Line normalize_line(const Rational& a, const Rational& b, const Rational& c) {
  Integer l = 1;
  for (const Rational* r : {&a, &b, &c}) l = lcm(l, r->den());
  Integer ia = a.num() * (l / a.den());
  Integer ib = b.num() * (l / b.den());
  Integer ic = c.num() * (l / c.den());
  Integer g = gcd(gcd(ia, ib), ic);
  if (g == 0) throw Error(ErrorCode::kInsufficientData, "zero line");
  if (ia < 0 || (ia == 0 && ib < 0)) g = -g;
  return {ia / g, ib / g, ic / g};
}

Line coa_recover_line(const projective::CiphertextA& ct) {
  const auto pts = distinct_points(ct);
  if (pts.size() < 2) {
    throw Error(ErrorCode::kInsufficientData, "need two distinct ciphertext points to fit the line");
  }
  const Rational a = pts[1].y - pts[0].y;
  const Rational b = pts[0].x - pts[1].x;
  const Rational c = -(a * pts[0].x + b * pts[0].y);
  const Line line = normalize_line(a, b, c);
  for (std::size_t i = 2; i < pts.size(); ++i) {
    if (!(Rational(line.a) * pts[i].x + Rational(line.b) * pts[i].y + Rational(line.c)).is_zero()) {
      throw Error(ErrorCode::kCorruptCiphertext,
                  "ciphertext points are not collinear (point " + std::to_string(i) + ")", i);
    }
  }
  return line;
}

CenterSearch kpa_recover_center(std::span<const KnownPair> pairs, const projective::CiphertextA& ct,
                                unsigned n) {
  std::vector<KnownPair> usable;
  for (const auto& kp : pairs) {
    if (kp.cipher.y.is_zero()) continue;
    bool dup = false;
    for (const auto& u : usable) dup = dup || u.cipher == kp.cipher;
    if (!dup) usable.push_back(kp);
  }
  if (usable.empty()) {
    throw Error(ErrorCode::kNeedsMorePairs,
                "known pairs on the X-axis carry no information about the center");
  }
  projective::CiphertextA all = ct;
  for (const auto& kp : pairs) all.push_back(kp.cipher);
  const auto pts = distinct_points(all);
  const Line line = coa_recover_line(all);

  CenterSearch res;
  const Eq first = through_axis(usable[0].plain, usable[0].cipher);
  if (usable.size() >= 2) {
    for (std::size_t i = 1; i < usable.size(); ++i) {
      ++res.work;
      const auto o = intersect(first, through_axis(usable[i].plain, usable[i].cipher));
      if (o && plausible(*o, line, pts, n)) {
        record(res, *o);
        return res;
      }
    }
    return res;
  }

  const Point* other = nullptr;
  for (const auto& pt : pts) {
    if (!pt.y.is_zero() && !(pt == usable[0].cipher)) {
      other = &pt;
      break;
    }
  }
  if (!other) {
    throw Error(ErrorCode::kNeedsMorePairs,
                "one pair and no second off-axis ciphertext point; the center is underdetermined");
  }
  for (unsigned t = 0; t < n; ++t) {
    ++res.work;
    const auto o = intersect(first, through_axis(t, *other));
    if (o && plausible(*o, line, pts, n)) record(res, *o);
  }
  return res;
}

CenterSearch coa_brute_force(const projective::CiphertextA& ct, unsigned n) {
  CenterSearch res;
  const auto pts = distinct_points(ct);
  std::vector<Point> off_axis;
  for (const auto& pt : pts) {
    if (!pt.y.is_zero()) off_axis.push_back(pt);
  }
  if (off_axis.size() < 2) {
    // Every plaintext value for the lone point fits some center on a line.
    res.underdetermined = true;
    res.candidate_count = n;
    res.work = 0;
    return res;
  }
  const Line line = coa_recover_line(ct);
  std::vector<Eq> through_b;
  through_b.reserve(n);
  for (unsigned v = 0; v < n; ++v) through_b.push_back(through_axis(v, off_axis[1]));
  for (unsigned u = 0; u < n; ++u) {
    const Eq la = through_axis(u, off_axis[0]);
    for (unsigned v = 0; v < n; ++v) {
      if (u == v) continue;
      ++res.work;
      const auto o = intersect(la, through_b[v]);
      if (o && plausible(*o, line, pts, n)) record(res, *o);
    }
  }
  return res;
}

const char* transform_name(Transform t) noexcept {
  switch (t) {
    case Transform::kNone: return "none";
    case Transform::kShift: return "shift";
    case Transform::kScale: return "scale";
    case Transform::kReflect: return "reflect";
  }
  return "unknown";
}

GroupForgery forge_collision(const std::array<std::uint8_t, 4>& group) {
  GroupForgery out;
  for (int i = 0; i < 4; ++i) out.group[i] = group[i];
  if (!pairwise_distinct(std::span<const std::uint8_t>(group))) return out;
  const auto [lo, hi] = std::minmax_element(group.begin(), group.end());
  if (*hi < 255 || *lo > 0) {
    const int t = *hi < 255 ? 1 : -1;
    out.transform = Transform::kShift;
    out.parameter = t;
    for (int i = 0; i < 4; ++i) out.group[i] = group[i] + t;
    return out;
  }
  out.transform = Transform::kReflect;
  out.parameter = 255;
  for (int i = 0; i < 4; ++i) out.group[i] = 255 - group[i];
  return out;
}

GroupForgery forge_collision_mod(const std::array<Integer, 4>& group, const Field& field,
                                 const Integer& factor) {
  GroupForgery out;
  const FieldElement k = field(factor);
  if (k.is_zero() || k == field(1)) {
    throw Error(ErrorCode::kInvalidArgument, "scale factor must be neither 0 nor 1 mod p");
  }
  for (int i = 0; i < 4; ++i) out.group[i] = field(group[i]).value();
  const auto& g = out.group;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (field(g[i] - g[j]).is_zero()) return out;
    }
  }
  out.transform = Transform::kScale;
  out.parameter = k.value();
  for (int i = 0; i < 4; ++i) out.group[i] = (field(group[i]) * k).value();
  return out;
}

BundleForgery forge_projective_bundle(const protocol::VerificationBundle& bundle) {
  BundleForgery out{false, 0, bundle, "every group is degenerate or short"};
  auto run = [&](auto& points, auto group_of) {
    using P = std::decay_t<decltype(points[0])>;
    std::optional<P> d;
    for (std::size_t i = 1; i < points.size() && !d; ++i) {
      if (!(points[i] == points[0])) d = P{points[i].x - points[0].x, points[i].y - points[0].y};
    }
    if (!d) return;
    for (std::size_t at = 0; at + 4 <= points.size(); at += 4) {
      const auto& q = points;
      if (!pairwise_distinct(std::span(q).subspan(at, 4))) continue;
      for (std::size_t k = at; k < at + 4; ++k) *group_of(k) = translate(q[k], *d);
      out.forged = true;
      out.group = at / 4;
      out.description = "translated group " + std::to_string(at / 4) +
                        " along the line by the difference of two ciphertext points";
      return;
    }
  };
  std::visit(
      [&](auto& pl) {
        using T = std::decay_t<decltype(pl)>;
        if constexpr (std::is_same_v<T, projective::CiphertextA> ||
                      std::is_same_v<T, projective::CiphertextMod>) {
          const T copy = pl;
          run(copy, [&](std::size_t k) { return &pl[k]; });
        } else if constexpr (std::is_same_v<T, masked::MaskedCiphertext>) {
          projective::CiphertextMod flat;
          for (const auto& g : pl) flat.insert(flat.end(), g.points.begin(), g.points.end());
          run(flat, [&](std::size_t k) { return &pl[k / 4].points[k % 4]; });
        } else {
          throw Error(ErrorCode::kInvalidArgument, "translation forgery needs a point ciphertext");
        }
      },
      out.bundle.payload);
  return out;
}

BundleForgery forge_native_bundle(const protocol::VerificationBundle& bundle, Transform transform,
                                  std::span<const std::uint8_t> plaintext,
                                  const native::ElGamalKey& public_key, Randomness& rng) {
  BundleForgery out{false, 0, bundle, "no full group"};
  auto* pl = std::get_if<protocol::NativePayload>(&out.bundle.payload);
  if (!pl) throw Error(ErrorCode::kInvalidArgument, "native forgery needs a kf bundle");
  if (pl->ct.c2.size() < 4) return out;
  const Field& f = public_key.field;
  std::size_t at = 0;
  switch (transform) {
    case Transform::kScale:
      for (std::size_t k = 0; k < 4; ++k) pl->ct.c2[k] = pl->ct.c2[k] * f(2);
      out.description = "multiplied the c2 values of group 0 by 2";
      break;
    case Transform::kShift: {
      if (plaintext.size() != pl->ct.c2.size()) {
        throw Error(ErrorCode::kInvalidArgument, "shift forgery needs the known plaintext");
      }
      while (at + 4 <= plaintext.size() && !pairwise_distinct(plaintext.subspan(at, 4))) at += 4;
      if (at + 4 > plaintext.size()) {
        out.description = "every full group is degenerate";
        return out;
      }
      auto symbols = native::to_symbols(plaintext.subspan(at, 4), public_key);
      for (auto& s : symbols) s = s + f(1);
      std::vector<Integer> r;
      for (int k = 0; k < 4; ++k) r.push_back(rng.ephemeral(f.p()));
      const auto fresh = native::eg_encrypt_symbols(symbols, public_key, r, false);
      for (std::size_t k = 0; k < 4; ++k) {
        pl->ct.c2[at + k] = fresh.c2[k];
        pl->ct.c1[at + k] = fresh.c1[k];
      }
      pl->bundles[at / 4] =
          native::kf_bundle({r[0], r[1], r[2], r[3]}, rng.common_factor(f.p()), public_key);
      out.group = at / 4;
      out.description = "re-encrypted group " + std::to_string(at / 4) +
                        " shifted by +1 under the public key";
      break;
    }
    default:
      throw Error(ErrorCode::kInvalidArgument, "native forgery supports shift and scale");
  }
  out.forged = true;
  return out;
}

std::uint64_t dictionary_count(unsigned n) noexcept {
  if (n < 4) return 0;
  return std::uint64_t{n} * (n - 1) * (n - 2) * (n - 3);
}

DictionaryStats hfv_dictionary(const Integer& p, unsigned n, bool count_only,
                               std::uint64_t memory_budget) {
  DictionaryStats st;
  st.count = dictionary_count(n);
  if (count_only || st.count == 0) return st;
  const std::uint64_t bytes = st.count * sizeof(u64);
  if (bytes / sizeof(u64) != st.count || bytes > memory_budget) {
    throw Error(ErrorCode::kRefused,
                "dictionary for n = " + std::to_string(n) + " needs " + std::to_string(st.count) +
                    " entries (" + std::to_string(bytes) + " bytes), over the budget of " +
                    std::to_string(memory_budget) + " bytes");
  }
  const Field field(p);
  if (p >= Integer(std::to_string(std::numeric_limits<u64>::max() / 2))) {
    throw Error(ErrorCode::kInvalidArgument, "dictionary needs p below 2^63");
  }
  const u64 q = std::stoull(p.get_str());
  // Inverses of every difference in (-n, n), indexed by d + n.
  std::vector<u64> inv(2 * n, 0);
  for (long d = -static_cast<long>(n) + 1; d < static_cast<long>(n); ++d) {
    const u64 r = static_cast<u64>(((d % static_cast<long long>(q)) + static_cast<long long>(q))) % q;
    if (r) inv[d + n] = powmod(r, q - 2, q);
  }
  auto res = [&](long d) { return static_cast<u64>((d % static_cast<long long>(q) + static_cast<long long>(q)) % static_cast<long long>(q)); };

  std::vector<u64> table;
  table.reserve(st.count);
  for (long x1 = 0; x1 < n; ++x1) {
    for (long x2 = 0; x2 < n; ++x2) {
      if (x2 == x1) continue;
      for (long x3 = 0; x3 < n; ++x3) {
        if (x3 == x1 || x3 == x2) continue;
        const u64 a = res(x1 - x3);
        const u64 inv23 = inv[x2 - x3 + n];
        for (long x4 = 0; x4 < n; ++x4) {
          if (x4 == x1 || x4 == x2 || x4 == x3) continue;
          const u64 i14 = inv[x1 - x4 + n];
          if (!i14 || !inv23) {
            table.push_back(1 % q);
            continue;
          }
          const u64 v = mulmod(mulmod(a, res(x2 - x4), q), mulmod(i14, inv23, q), q);
          table.push_back(mulmod(v, v, q));
        }
      }
    }
  }
  st.enumerated = true;
  std::sort(table.begin(), table.end());
  u64 run = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    run = (i && table[i] == table[i - 1]) ? run + 1 : 1;
    if (run == 1) ++st.distinct;
    st.max_multiplicity = std::max<std::uint64_t>(st.max_multiplicity, run);
  }
  st.mean_multiplicity = st.distinct ? static_cast<double>(st.count) / static_cast<double>(st.distinct) : 0;
  return st;
}

}  // namespace fht::cryptanalysis
