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

// Rational functions F_q(x_1, ..., x_k) kept in lowest terms with a
// grlex-monic denominator.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "katoforge/error.hpp"
#include "katoforge/gf.hpp"
#include "katoforge/linalg.hpp"
#include "katoforge/mpoly.hpp"
#include "katoforge/upoly.hpp"

namespace katoforge {

/// F_q(x_1, ..., x_k): a base field plus ordered variable names.
class FunctionField {
 public:
  FunctionField() = default;
  FunctionField(gf::Field base, std::vector<std::string> vars)
      : d_(std::make_shared<const Desc>(Desc{base, std::move(vars)})) {}

  gf::Field base() const { return d_->base; }
  const std::vector<std::string>& vars() const { return d_->vars; }
  size_t nvars() const { return d_->vars.size(); }
  uint32_t characteristic() const { return d_->base.p(); }

  std::string str() const {
    std::string out = d_->base.str() + "(";
    for (size_t j = 0; j < d_->vars.size(); ++j) out += (j ? "," : "") + d_->vars[j];
    return out + ")";
  }

  friend bool operator==(const FunctionField& a, const FunctionField& b) {
    return a.d_ == b.d_ || (a.d_ && b.d_ && a.d_->base == b.d_->base && a.d_->vars == b.d_->vars);
  }
  friend bool operator!=(const FunctionField& a, const FunctionField& b) { return !(a == b); }

 private:
  struct Desc {
    gf::Field base;
    std::vector<std::string> vars;
  };
  std::shared_ptr<const Desc> d_;
};

class RatFunc {
 public:
  RatFunc() = default;
  /// num/den brought to lowest terms; throws DivisionByZero for den = 0.
  RatFunc(FunctionField field, MPoly num, MPoly den) : field_(std::move(field)), num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  static RatFunc from_poly(const FunctionField& f, MPoly num) {
    RatFunc r;
    r.field_ = f;
    r.den_ = MPoly::one(f.base(), f.nvars());
    r.num_ = std::move(num);
    return r;
  }
  static RatFunc constant(const FunctionField& f, const gf::Elem& c) {
    return from_poly(f, MPoly::constant(f.base(), f.nvars(), c));
  }
  static RatFunc variable(const FunctionField& f, size_t j) {
    return from_poly(f, MPoly::variable(f.base(), f.nvars(), j));
  }
  static RatFunc from_upoly(const FunctionField& f, size_t j, const UPoly& u) {
    return from_poly(f, MPoly::from_upoly(f.nvars(), j, u));
  }

  const FunctionField& field() const { return field_; }
  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  uint32_t characteristic() const { return field_.characteristic(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_unit() const { return !is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  gf::Elem constant_value() const { return num_.constant_value(); }

  /// The single variable index this function depends on, or nullopt for
  /// constants and for functions of several variables.
  std::optional<size_t> sole_variable() const {
    std::optional<size_t> v;
    for (size_t j = 0; j < field_.nvars(); ++j) {
      if (!num_.involves(j) && !den_.involves(j)) continue;
      if (v) return std::nullopt;
      v = j;
    }
    return v;
  }

  RatFunc zero_like() const { return constant(field_, field_.base().zero()); }
  RatFunc one_like() const { return constant(field_, field_.base().one()); }
  RatFunc from_int(long long n) const { return constant(field_, field_.base().from_int(n)); }
  RatFunc from_elem(const gf::Elem& c) const { return constant(field_, c); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    a.check(b);
    if (a.den_ == b.den_) return RatFunc(a.field_, a.num_ + b.num_, a.den_);
    return RatFunc(a.field_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a) {
    RatFunc r(a);
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    a.check(b);
    if (a.is_zero() || b.is_zero()) return a.zero_like();
    // cross-cancelled factors leave the product in lowest terms
    const MPoly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    RatFunc r;
    r.field_ = a.field_;
    r.num_ = divexact(a.num_, g1) * divexact(b.num_, g2);
    r.den_ = divexact(a.den_, g2) * divexact(b.den_, g1);
    r.make_monic();
    return r;
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  RatFunc inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero rational function");
    RatFunc r;
    r.field_ = field_;
    r.num_ = den_;
    r.den_ = num_;
    r.make_monic();
    return r;
  }

  RatFunc pow(long long n) const {
    if (n < 0) return inv().pow(-n);
    RatFunc r;
    r.field_ = field_;
    r.num_ = num_.pow(static_cast<unsigned>(n));
    r.den_ = den_.pow(static_cast<unsigned>(n));
    return r;
  }

  RatFunc frobenius() const {
    RatFunc r;
    r.field_ = field_;
    r.num_ = num_.frobenius();
    r.den_ = den_.frobenius();
    return r;
  }

  RatFunc scaled(const gf::Elem& c) const { return RatFunc(field_, num_.scaled(c), den_); }

  /// Partial derivative with respect to x_j.
  RatFunc derivative(size_t j) const {
    if (den_.is_one()) return from_poly(field_, num_.derivative(j));
    return RatFunc(field_, num_.derivative(j) * den_ - num_ * den_.derivative(j), den_ * den_);
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.field_ == b.field_ && a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
  friend bool operator<(const RatFunc& a, const RatFunc& b) {
    const int c = compare(a.den_, b.den_);
    if (c != 0) return c < 0;
    return compare(a.num_, b.num_) < 0;
  }

  /// Univariate numerator/denominator with respect to x_j.
  UPoly num_upoly(size_t j) const { return num_.to_upoly(j); }
  UPoly den_upoly(size_t j) const { return den_.to_upoly(j); }

  std::string str() const {
    const auto& v = field_.vars();
    if (den_.is_one()) return num_.str(v);
    const std::string n = num_.str(v), d = den_.str(v);
    const bool bare_num = num_.is_monomial_like();
    const bool bare_den = d.find_first_of("+-*") == std::string::npos;
    return (bare_num ? n : "(" + n + ")") + "/" + (bare_den ? d : "(" + d + ")");
  }

  /// True when str() needs no parentheses inside a product.
  bool is_atomic() const { return den_.is_one() && (num_.is_zero() || num_.is_monomial_like()); }

 private:
  void check(const RatFunc& o) const {
    if (field_ != o.field_) throw ConfigMismatch("rational functions over different fields");
  }

  void make_monic() {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    const gf::Elem lc = den_.lead().coeff;
    if (!lc.is_one()) {
      const gf::Elem li = lc.inv();
      num_ = num_.scaled(li);
      den_ = den_.scaled(li);
    }
  }

  void normalize() {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = MPoly::one(field_.base(), field_.nvars());
      return;
    }
    if (!den_.is_constant()) {
      const MPoly g = gcd(num_, den_);
      if (!g.is_one()) {
        num_ = divexact(num_, g);
        den_ = divexact(den_, g);
      }
    }
    make_monic();
  }

  FunctionField field_;
  MPoly num_;
  MPoly den_;
};

/// Evaluates a polynomial at rational-function values, one per variable.
inline RatFunc evaluate(const MPoly& m, const std::vector<RatFunc>& values) {
  RatFunc acc = values.at(0).zero_like();
  std::vector<std::vector<RatFunc>> powers(values.size());
  for (const auto& t : m.terms()) {
    RatFunc term = values[0].from_elem(t.coeff);
    for (size_t j = 0; j < values.size(); ++j) {
      const uint32_t e = t.exp[j];
      if (!e) continue;
      auto& pw = powers[j];
      if (pw.empty()) pw.push_back(values[j].one_like());
      while (pw.size() <= e) pw.push_back(pw.back() * values[j]);
      term *= pw[e];
    }
    acc += term;
  }
  return acc;
}

/// f(values): substitutes every variable of f's field.
inline RatFunc substitute(const RatFunc& f, const std::vector<RatFunc>& values) {
  return evaluate(f.num(), values) / evaluate(f.den(), values);
}

/// Unique decomposition f = sum_e g_e^p x^e over e in {0..p-1}^k. All p^k
/// components are returned, zeros included.
inline std::map<Exponents, RatFunc> p_power_decompose(const RatFunc& f) {
  const FunctionField& F = f.field();
  const uint32_t p = F.characteristic();
  const size_t k = F.nvars();
  // f = num * den^{p-1} / den^p
  const MPoly m = f.num() * f.den().pow(p - 1);
  std::map<Exponents, std::map<Exponents, gf::Elem, GrlexGreater>> parts;
  for (const auto& t : m.terms()) {
    Exponents residue(k), quotient(k);
    for (size_t j = 0; j < k; ++j) {
      residue[j] = t.exp[j] % p;
      quotient[j] = t.exp[j] / p;
    }
    parts[residue][quotient] = t.coeff.pth_root();
  }
  std::map<Exponents, RatFunc> out;
  Exponents e(k, 0);
  while (true) {
    auto it = parts.find(e);
    MPoly h = it == parts.end() ? MPoly(F.base(), k) : MPoly::from_map(F.base(), k, it->second);
    out.emplace(e, RatFunc(F, std::move(h), f.den()));
    size_t j = 0;
    while (j < k && ++e[j] == p) e[j++] = 0;
    if (j == k) break;
  }
  return out;
}

/// Solves x^p - x = a in F_q(t). A solution X/Y in lowest terms forces
/// den(a) = Y^p and X^p - X Y^{p-1} = num(a); the latter is F_p-linear in the
/// coefficients of X. Free coordinates of the solution space are set to zero.
inline std::optional<RatFunc> as_solve(const RatFunc& a) {
  const FunctionField& F = a.field();
  if (F.nvars() != 1) throw UnsupportedField("Artin-Schreier solving needs a univariate function field");
  const gf::Field k = F.base();
  const uint32_t p = k.p(), e = k.degree();
  if (a.is_zero()) return a;
  const UPoly N = a.num_upoly(0), D = a.den_upoly(0);
  UPoly Y(k);
  try {
    Y = D.pth_root();
  } catch (const NotDivisible&) {
    return std::nullopt;
  }
  const int dy = Y.degree();
  const int bound = std::max(dy, N.degree() / static_cast<int>(p));
  const UPoly Yp1 = [&] {
    UPoly acc = UPoly::constant(k.one());
    for (uint32_t j = 0; j + 1 < p; ++j) acc = acc * Y;
    return acc;
  }();
  const int rows_deg = std::max({static_cast<int>(p) * bound, bound + static_cast<int>(p - 1) * dy, N.degree()});
  const size_t nrows = static_cast<size_t>(rows_deg + 1) * e;
  const size_t ncols = static_cast<size_t>(bound + 1) * e;
  std::vector<std::vector<uint32_t>> mat(nrows, std::vector<uint32_t>(ncols, 0));
  for (int j = 0; j <= bound; ++j)
    for (uint32_t l = 0; l < e; ++l) {
      std::vector<uint32_t> digits(e, 0);
      digits[l] = 1;
      const UPoly basis = UPoly::monomial(k.from_coeffs(digits), j);
      UPoly frob = UPoly::constant(k.one());
      for (uint32_t r = 0; r < p; ++r) frob = frob * basis;
      const UPoly col = frob - basis * Yp1;
      for (int d = 0; d <= col.degree(); ++d) {
        const auto cs = col.coeff(d).coeffs();
        for (uint32_t r = 0; r < e; ++r) mat[static_cast<size_t>(d) * e + r][static_cast<size_t>(j) * e + l] = cs[r];
      }
    }
  std::vector<uint32_t> rhs(nrows, 0);
  for (int d = 0; d <= N.degree(); ++d) {
    const auto cs = N.coeff(d).coeffs();
    for (uint32_t r = 0; r < e; ++r) rhs[static_cast<size_t>(d) * e + r] = cs[r];
  }
  auto sol = linalg::solve_mod_p(std::move(mat), std::move(rhs), p);
  if (!sol) return std::nullopt;
  std::vector<gf::Elem> xs;
  for (int j = 0; j <= bound; ++j) {
    std::vector<uint32_t> digits((*sol).begin() + static_cast<long>(j) * e, (*sol).begin() + static_cast<long>(j + 1) * e);
    xs.push_back(k.from_coeffs(digits));
  }
  const UPoly X(k, std::move(xs));
  return RatFunc(F, MPoly::from_upoly(1, 0, X), MPoly::from_upoly(1, 0, Y));
}

}  // namespace katoforge
