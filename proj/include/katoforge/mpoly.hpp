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

// Sparse multivariate polynomials over F_q in graded-lexicographic order
// (x_1 > x_2 > ... within a degree), with a recursive primitive-PRS gcd.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "katoforge/error.hpp"
#include "katoforge/gf.hpp"
#include "katoforge/upoly.hpp"

namespace katoforge {

using Exponents = std::vector<uint32_t>;

inline uint32_t total_degree(const Exponents& e) {
  uint32_t s = 0;
  for (auto x : e) s += x;
  return s;
}

/// Strict grlex comparison: a > b.
inline bool grlex_greater(const Exponents& a, const Exponents& b) {
  const uint32_t da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  for (size_t j = 0; j < a.size(); ++j)
    if (a[j] != b[j]) return a[j] > b[j];
  return false;
}

struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const { return grlex_greater(a, b); }
};

class MPoly {
 public:
  struct Term {
    Exponents exp;
    gf::Elem coeff;
  };

  MPoly() = default;
  MPoly(gf::Field field, size_t nvars) : field_(field), nvars_(nvars) {}

  static MPoly constant(gf::Field field, size_t nvars, const gf::Elem& c) {
    MPoly r(field, nvars);
    if (!c.is_zero()) r.terms_.push_back({Exponents(nvars, 0), c});
    return r;
  }
  static MPoly one(gf::Field field, size_t nvars) { return constant(field, nvars, field.one()); }
  static MPoly monomial(gf::Field field, const Exponents& e, const gf::Elem& c) {
    MPoly r(field, e.size());
    if (!c.is_zero()) r.terms_.push_back({e, c});
    return r;
  }
  static MPoly variable(gf::Field field, size_t nvars, size_t j) {
    Exponents e(nvars, 0);
    e[j] = 1;
    return monomial(field, e, field.one());
  }
  static MPoly from_map(gf::Field field, size_t nvars, const std::map<Exponents, gf::Elem, GrlexGreater>& m) {
    MPoly r(field, nvars);
    r.terms_.reserve(m.size());
    for (const auto& [e, c] : m)
      if (!c.is_zero()) r.terms_.push_back({e, c});
    return r;
  }

  gf::Field field() const { return field_; }
  size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && katoforge::total_degree(terms_[0].exp) == 0); }
  bool is_one() const { return is_constant() && !terms_.empty() && terms_[0].coeff.is_one(); }
  gf::Elem constant_value() const {
    if (terms_.empty()) return field_.zero();
    const auto& last = terms_.back();
    return katoforge::total_degree(last.exp) == 0 ? last.coeff : field_.zero();
  }
  const Term& lead() const { return terms_.front(); }
  uint32_t total_degree() const { return terms_.empty() ? 0 : katoforge::total_degree(terms_.front().exp); }
  int degree_in(size_t j) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.exp[j]));
    return d;
  }
  bool involves(size_t j) const { return degree_in(j) > 0; }
  std::vector<size_t> variables() const {
    std::vector<size_t> out;
    for (size_t j = 0; j < nvars_; ++j)
      if (involves(j)) out.push_back(j);
    return out;
  }

  MPoly scaled(const gf::Elem& s) const {
    if (s.is_zero()) return MPoly(field_, nvars_);
    MPoly r(*this);
    for (auto& t : r.terms_) t.coeff *= s;
    return r;
  }
  MPoly monic() const { return terms_.empty() ? *this : scaled(lead().coeff.inv()); }

  friend MPoly operator+(const MPoly& a, const MPoly& b) { return merge(a, b, false); }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return merge(a, b, true); }
  friend MPoly operator-(const MPoly& a) {
    MPoly r(a);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return MPoly(a.field_, a.nvars_);
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0]);
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0]);
    std::map<Exponents, gf::Elem, GrlexGreater> acc;
    Exponents e(a.nvars_);
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) {
        for (size_t j = 0; j < e.size(); ++j) e[j] = ta.exp[j] + tb.exp[j];
        auto [it, inserted] = acc.try_emplace(e, ta.coeff * tb.coeff);
        if (!inserted) it->second += ta.coeff * tb.coeff;
      }
    return from_map(a.field_, a.nvars_, acc);
  }

  MPoly pow(unsigned n) const {
    MPoly acc = one(field_, nvars_), base = *this;
    while (n) {
      if (n & 1) acc = acc * base;
      n >>= 1;
      if (n) base = base * base;
    }
    return acc;
  }

  /// Exact quotient a / b; throws NotDivisible when b does not divide a.
  friend MPoly divexact(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (b.terms_.size() == 1 && katoforge::total_degree(b.terms_[0].exp) == 0) return a.scaled(b.terms_[0].coeff.inv());
    MPoly q(a.field_, a.nvars_), r = a;
    const Term& lb = b.lead();
    const gf::Elem li = lb.coeff.inv();
    std::vector<Term> quot;
    while (!r.is_zero()) {
      const Term& lr = r.lead();
      Exponents e(a.nvars_);
      for (size_t j = 0; j < e.size(); ++j) {
        if (lr.exp[j] < lb.exp[j]) throw NotDivisible("polynomial is not divisible");
        e[j] = lr.exp[j] - lb.exp[j];
      }
      Term t{e, lr.coeff * li};
      quot.push_back(t);
      r = r - b.mul_term(t);
    }
    q.terms_ = std::move(quot);
    return q;
  }

  MPoly derivative(size_t j) const {
    std::map<Exponents, gf::Elem, GrlexGreater> acc;
    for (const auto& t : terms_) {
      if (t.exp[j] == 0) continue;
      gf::Elem c = t.coeff * field_.from_int(t.exp[j]);
      if (c.is_zero()) continue;
      Exponents e = t.exp;
      --e[j];
      acc.emplace(std::move(e), c);
    }
    return from_map(field_, nvars_, acc);
  }

  /// f^p, computed coefficient- and exponent-wise.
  MPoly frobenius() const {
    MPoly r(*this);
    const uint32_t p = field_.p();
    for (auto& t : r.terms_) {
      t.coeff = t.coeff.frobenius();
      for (auto& x : t.exp) x *= p;
    }
    return r;
  }

  /// Coefficients with respect to x_j, indexed by degree; entries do not involve x_j.
  std::vector<MPoly> to_recursive(size_t j) const {
    std::vector<MPoly> out(std::max(degree_in(j), 0) + 1, MPoly(field_, nvars_));
    for (const auto& t : terms_) {
      Exponents e = t.exp;
      const uint32_t d = e[j];
      e[j] = 0;
      out[d].terms_.push_back({std::move(e), t.coeff});
    }
    return out;
  }
  static MPoly from_recursive(size_t j, const std::vector<MPoly>& cs) {
    MPoly acc(cs.front().field_, cs.front().nvars_);
    Exponents e(acc.nvars_, 0);
    for (size_t d = 0; d < cs.size(); ++d) {
      if (cs[d].is_zero()) continue;
      e[j] = static_cast<uint32_t>(d);
      acc = acc + cs[d].mul_term({e, acc.field_.one()});
    }
    return acc;
  }

  UPoly to_upoly(size_t j) const {
    std::vector<gf::Elem> cs(std::max(degree_in(j), 0) + 1, field_.zero());
    for (const auto& t : terms_) {
      for (size_t k = 0; k < nvars_; ++k)
        if (k != j && t.exp[k] != 0) throw ConfigMismatch("polynomial involves more than one variable");
      cs[t.exp[j]] = t.coeff;
    }
    return UPoly(field_, std::move(cs));
  }
  static MPoly from_upoly(size_t nvars, size_t j, const UPoly& u) {
    MPoly r(u.field(), nvars);
    for (int k = u.degree(); k >= 0; --k) {
      if (u.coeff(k).is_zero()) continue;
      Exponents e(nvars, 0);
      e[j] = static_cast<uint32_t>(k);
      r.terms_.push_back({std::move(e), u.coeff(k)});
    }
    return r;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (size_t k = 0; k < a.terms_.size(); ++k)
      if (a.terms_[k].exp != b.terms_[k].exp || a.terms_[k].coeff != b.terms_[k].coeff) return false;
    return true;
  }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  /// Total order used for canonical sorting of containers.
  friend int compare(const MPoly& a, const MPoly& b) {
    const size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (size_t k = 0; k < n; ++k) {
      const auto& ta = a.terms_[k];
      const auto& tb = b.terms_[k];
      if (ta.exp != tb.exp) return grlex_greater(ta.exp, tb.exp) ? 1 : -1;
      if (ta.coeff != tb.coeff) return ta.coeff < tb.coeff ? -1 : 1;
    }
    if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
    return 0;
  }

  bool is_monomial_like() const {
    return terms_.size() == 1 && (terms_[0].coeff.is_one() || katoforge::total_degree(terms_[0].exp) == 0) &&
           terms_[0].coeff.is_atomic();
  }

  std::string str(const std::vector<std::string>& vars) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      std::string mono;
      for (size_t j = 0; j < nvars_; ++j) {
        if (!t.exp[j]) continue;
        if (!mono.empty()) mono += "*";
        mono += vars[j];
        if (t.exp[j] > 1) mono += "^" + std::to_string(t.exp[j]);
      }
      if (!out.empty()) out += "+";
      const std::string c = t.coeff.is_atomic() ? t.coeff.str() : "(" + t.coeff.str() + ")";
      if (mono.empty())
        out += c;
      else if (t.coeff.is_one())
        out += mono;
      else
        out += c + "*" + mono;
    }
    return out;
  }

 private:
  MPoly mul_term(const Term& t) const {
    MPoly r(*this);
    for (auto& x : r.terms_) {
      x.coeff *= t.coeff;
      for (size_t j = 0; j < nvars_; ++j) x.exp[j] += t.exp[j];
    }
    if (t.coeff.is_zero()) r.terms_.clear();
    return r;
  }

  static MPoly merge(const MPoly& a, const MPoly& b, bool subtract) {
    MPoly r(a.field_, std::max(a.nvars_, b.nvars_));
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && grlex_greater(a.terms_[i].exp, b.terms_[j].exp))) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || grlex_greater(b.terms_[j].exp, a.terms_[i].exp)) {
        r.terms_.push_back({b.terms_[j].exp, subtract ? -b.terms_[j].coeff : b.terms_[j].coeff});
        ++j;
      } else {
        gf::Elem c = subtract ? a.terms_[i].coeff - b.terms_[j].coeff : a.terms_[i].coeff + b.terms_[j].coeff;
        if (!c.is_zero()) r.terms_.push_back({a.terms_[i].exp, c});
        ++i;
        ++j;
      }
    }
    return r;
  }

  gf::Field field_;
  size_t nvars_ = 0;
  std::vector<Term> terms_;
};

inline MPoly gcd(const MPoly& a, const MPoly& b);

namespace detail {

inline MPoly content_in(const MPoly& a, size_t v) {
  MPoly g(a.field(), a.nvars());
  for (const auto& c : a.to_recursive(v)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

inline MPoly primitive_part(const MPoly& a, size_t v) { return divexact(a, content_in(a, v)); }

inline MPoly pseudo_remainder(const MPoly& a, const MPoly& b, size_t v) {
  auto r = a.to_recursive(v);
  const auto bs = b.to_recursive(v);
  const MPoly& lcb = bs.back();
  auto trim = [&r] {
    while (!r.empty() && r.back().is_zero()) r.pop_back();
  };
  trim();
  while (r.size() >= bs.size()) {
    const MPoly lcr = r.back();
    const size_t shift = r.size() - bs.size();
    for (auto& c : r) c = c * lcb;
    for (size_t k = 0; k < bs.size(); ++k) r[k + shift] = r[k + shift] - lcr * bs[k];
    trim();
  }
  if (r.empty()) return MPoly(a.field(), a.nvars());
  return MPoly::from_recursive(v, r);
}

}  // namespace detail

/// Monic (grlex) greatest common divisor; gcd(0, 0) = 0.
inline MPoly gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MPoly::one(a.field(), a.nvars());
  std::vector<size_t> vars;
  for (size_t j = 0; j < a.nvars(); ++j)
    if (a.involves(j) || b.involves(j)) vars.push_back(j);
  if (vars.size() == 1) {
    const size_t j = vars[0];
    return MPoly::from_upoly(a.nvars(), j, gcd(a.to_upoly(j), b.to_upoly(j)));
  }
  const size_t v = vars.back();
  if (!a.involves(v)) return gcd(a, detail::content_in(b, v));
  if (!b.involves(v)) return gcd(detail::content_in(a, v), b);
  const MPoly ca = detail::content_in(a, v), cb = detail::content_in(b, v);
  MPoly x = divexact(a, ca), y = divexact(b, cb);
  if (x.degree_in(v) < y.degree_in(v)) std::swap(x, y);
  while (true) {
    MPoly r = detail::pseudo_remainder(x, y, v);
    if (r.is_zero()) break;
    if (!r.involves(v)) {
      y = MPoly::one(a.field(), a.nvars());
      break;
    }
    x = std::move(y);
    y = detail::primitive_part(r, v);
  }
  MPoly g = gcd(ca, cb);
  if (!y.is_one()) g = g * detail::primitive_part(y, v);
  return g.monic();
}

}  // namespace katoforge
