/**************************************************************************
 * Copyright 2026 The katoforge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

// Dense univariate polynomials over a finite field, with squarefree,
// distinct-degree and equal-degree factorization.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "katoforge/error.hpp"
#include "katoforge/gf.hpp"

namespace katoforge {

class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(gf::Field field) : field_(field) {}
  UPoly(gf::Field field, std::vector<gf::Elem> coeffs) : field_(field), c_(std::move(coeffs)) { trim(); }

  static UPoly constant(const gf::Elem& c) { return UPoly(gf::Field(c.config()), {c}); }
  static UPoly monomial(const gf::Elem& c, int k) {
    std::vector<gf::Elem> cs(k + 1, c.zero_like());
    cs[k] = c;
    return UPoly(gf::Field(c.config()), std::move(cs));
  }
  static UPoly x(gf::Field f) { return monomial(f.one(), 1); }

  gf::Field field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  gf::Elem lead() const { return c_.empty() ? field_.zero() : c_.back(); }
  gf::Elem coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : field_.zero(); }
  const std::vector<gf::Elem>& coeffs() const { return c_; }

  UPoly monic() const {
    if (c_.empty()) return *this;
    return scaled(lead().inv());
  }
  UPoly scaled(const gf::Elem& s) const {
    std::vector<gf::Elem> out(c_);
    for (auto& x : out) x *= s;
    return UPoly(field_, std::move(out));
  }

  UPoly derivative() const {
    std::vector<gf::Elem> out;
    for (size_t k = 1; k < c_.size(); ++k) out.push_back(c_[k] * field_.from_int(static_cast<long long>(k)));
    return UPoly(field_, std::move(out));
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    const auto& big = a.c_.size() >= b.c_.size() ? a : b;
    const auto& small = a.c_.size() >= b.c_.size() ? b : a;
    std::vector<gf::Elem> out(big.c_);
    for (size_t k = 0; k < small.c_.size(); ++k) out[k] += small.c_[k];
    return UPoly(a.field_, std::move(out));
  }
  friend UPoly operator-(const UPoly& a) {
    std::vector<gf::Elem> out(a.c_);
    for (auto& x : out) x = -x;
    return UPoly(a.field_, std::move(out));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly(a.field_);
    std::vector<gf::Elem> out(a.c_.size() + b.c_.size() - 1, a.field_.zero());
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(a.field_, std::move(out));
  }

  /// Quotient and remainder; throws DivisionByZero for b = 0.
  friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (a.degree() < b.degree()) return {UPoly(a.field_), a};
    std::vector<gf::Elem> r(a.c_);
    std::vector<gf::Elem> q(a.c_.size() - b.c_.size() + 1, a.field_.zero());
    const gf::Elem li = b.lead().inv();
    const size_t db = b.c_.size() - 1;
    for (size_t k = r.size(); k-- > db;) {
      if (r[k].is_zero()) continue;
      const gf::Elem f = r[k] * li;
      q[k - db] = f;
      for (size_t j = 0; j <= db; ++j) r[k - db + j] -= f * b.c_[j];
    }
    r.resize(db);
    return {UPoly(a.field_, std::move(q)), UPoly(a.field_, std::move(r))};
  }
  friend UPoly operator/(const UPoly& a, const UPoly& b) { return divmod(a, b).first; }
  friend UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  /// Canonical order: degree first, then coefficient sequence from the constant term up.
  friend bool operator<(const UPoly& a, const UPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (size_t k = 0; k < a.c_.size(); ++k)
      if (a.c_[k] != b.c_[k]) return a.c_[k] < b.c_[k];
    return false;
  }

  gf::Elem eval(const gf::Elem& x) const {
    gf::Elem acc = field_.zero();
    for (size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  /// Coefficients of P(alpha + s) as a polynomial in s.
  UPoly taylor_shift(const gf::Elem& alpha) const {
    UPoly acc(field_);
    const UPoly lin(field_, {alpha, field_.one()});
    for (size_t k = c_.size(); k-- > 0;) acc = acc * lin + constant(c_[k]);
    return acc;
  }

  /// Composition P(Q).
  UPoly compose(const UPoly& q) const {
    UPoly acc(field_);
    for (size_t k = c_.size(); k-- > 0;) acc = acc * q + constant(c_[k]);
    return acc;
  }

  /// Applies a coefficient map into another field.
  UPoly map(gf::Field target, const std::function<gf::Elem(const gf::Elem&)>& f) const {
    std::vector<gf::Elem> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(f(x));
    return UPoly(target, std::move(out));
  }

  /// For P with P' = 0: the unique R with R^p = P.
  UPoly pth_root() const {
    const uint32_t p = field_.p();
    std::vector<gf::Elem> out;
    for (size_t k = 0; k < c_.size(); ++k) {
      if (k % p == 0)
        out.push_back(c_[k].pth_root());
      else if (!c_[k].is_zero())
        throw NotDivisible("polynomial is not a p-th power");
    }
    return UPoly(field_, std::move(out));
  }

  /// The number of trailing zero coefficients (order of vanishing at 0).
  int order_at_zero() const {
    int k = 0;
    while (k < static_cast<int>(c_.size()) && c_[k].is_zero()) ++k;
    return k;
  }

  std::string str(const std::string& var = "t") const {
    if (c_.empty()) return "0";
    std::string out;
    for (size_t k = c_.size(); k-- > 0;) {
      const gf::Elem& c = c_[k];
      if (c.is_zero()) continue;
      if (!out.empty()) out += "+";
      std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
      if (mono.empty()) {
        out += c.is_atomic() ? c.str() : "(" + c.str() + ")";
      } else if (c.is_one()) {
        out += mono;
      } else {
        out += (c.is_atomic() ? c.str() : "(" + c.str() + ")") + "*" + mono;
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  gf::Field field_;
  std::vector<gf::Elem> c_;
};

inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) monic.
inline std::tuple<UPoly, UPoly, UPoly> xgcd(const UPoly& a, const UPoly& b) {
  const gf::Field f = a.field();
  UPoly r0 = a, r1 = b, s0 = UPoly::constant(f.one()), s1(f), t0(f), t1 = UPoly::constant(f.one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const gf::Elem li = r0.lead().inv();
  return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

inline UPoly pow_mod(UPoly base, uint64_t e, const UPoly& m) {
  UPoly acc = UPoly::constant(m.field().one()) % m;
  base = base % m;
  while (e) {
    if (e & 1) acc = acc * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return acc;
}

/// Inverse of a modulo m; throws DivisionByZero when not coprime.
inline UPoly inv_mod(const UPoly& a, const UPoly& m) {
  auto [g, s, t] = xgcd(a % m, m);
  if (g.degree() != 0) throw DivisionByZero("polynomial not invertible modulo m");
  return s % m;
}

using Factorization = std::vector<std::pair<UPoly, unsigned>>;

namespace detail {

inline Factorization squarefree(const UPoly& f) {
  Factorization out;
  const uint32_t p = f.field().p();
  UPoly fd = f.derivative();
  if (fd.is_zero()) {
    if (f.degree() <= 0) return out;
    for (auto& [g, m] : squarefree(f.pth_root())) out.emplace_back(g, m * p);
    return out;
  }
  UPoly c = gcd(f, fd);
  UPoly w = f / c;
  unsigned i = 1;
  while (w.degree() > 0) {
    UPoly y = gcd(w, c);
    UPoly z = w / y;
    if (z.degree() > 0) out.emplace_back(z.monic(), i);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0)
    for (auto& [g, m] : squarefree(c.pth_root())) out.emplace_back(g, m * p);
  return out;
}

inline std::vector<std::pair<UPoly, int>> distinct_degree(UPoly f) {
  std::vector<std::pair<UPoly, int>> out;
  const uint64_t q = f.field().size();
  const UPoly x = UPoly::x(f.field());
  UPoly h = x % f;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    h = pow_mod(h, q, f);
    UPoly g = gcd(f, h - x);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f.monic(), f.degree());
  return out;
}

inline void equal_degree(const UPoly& g, int d, std::mt19937_64& rng, std::vector<UPoly>& out) {
  if (g.degree() == d) {
    out.push_back(g.monic());
    return;
  }
  const gf::Field f = g.field();
  const uint64_t q = f.size();
  const uint32_t p = f.p();
  while (true) {
    std::vector<gf::Elem> cs;
    for (int k = 0; k < g.degree(); ++k) cs.push_back(f.element(rng() % q));
    UPoly a(f, std::move(cs));
    if (a.degree() <= 0) continue;
    UPoly b(f);
    if (p == 2) {
      // trace map a + a^2 + ... + a^{2^{m-1}} with q^d = 2^m
      const uint64_t m = uint64_t{f.degree()} * d;
      UPoly term = a % g;
      b = term;
      for (uint64_t k = 1; k < m; ++k) {
        term = term * term % g;
        b = b + term;
      }
    } else {
      // a^{(q^d - 1)/2} = prod_j (a^{(q-1)/2})^{q^j}
      UPoly base = pow_mod(a, (q - 1) / 2, g);
      b = base;
      for (int j = 1; j < d; ++j) {
        base = pow_mod(base, q, g);
        b = b * base % g;
      }
      b = b - UPoly::constant(f.one());
    }
    UPoly u = gcd(g, b);
    if (u.degree() > 0 && u.degree() < g.degree()) {
      equal_degree(u, d, rng, out);
      equal_degree(g / u, d, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Monic irreducible factors with multiplicities, sorted canonically.
/// The product of the factors times lead(f) equals f.
inline Factorization factor(const UPoly& f) {
  if (f.is_zero()) throw ZeroPolynomial("cannot factor the zero polynomial");
  Factorization out;
  std::mt19937_64 rng(0x6b61746f666f7267ull);
  for (auto& [s, mult] : detail::squarefree(f.monic())) {
    for (auto& [g, d] : detail::distinct_degree(s)) {
      std::vector<UPoly> parts;
      detail::equal_degree(g, d, rng, parts);
      for (auto& part : parts) out.emplace_back(std::move(part), mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Factorization merged;
  for (auto& pr : out) {
    if (!merged.empty() && merged.back().first == pr.first)
      merged.back().second += pr.second;
    else
      merged.push_back(pr);
  }
  return merged;
}

inline bool is_irreducible(const UPoly& f) {
  if (f.degree() < 1) return false;
  auto fac = factor(f);
  return fac.size() == 1 && fac[0].second == 1;
}

/// Roots in the coefficient field, ascending.
inline std::vector<gf::Elem> roots(const UPoly& f) {
  std::vector<gf::Elem> out;
  for (auto& [g, m] : factor(f))
    if (g.degree() == 1) out.push_back(-g.coeff(0));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace katoforge
