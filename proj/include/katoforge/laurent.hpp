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

// Truncated Laurent series sum_{k >= v} c_k t^k + O(t^N) over a coefficient
// ring C. Every operation records the precision it can guarantee.

#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "katoforge/error.hpp"
#include "katoforge/gf.hpp"

namespace katoforge {

/// Coefficient rings need: + - * unary-, is_zero(), is_unit(), inv(),
/// zero_like(), one_like(), from_int(long long).
template <class C>
class Laurent {
 public:
  Laurent() = default;

  /// O(t^prec).
  static Laurent zero(const C& zero, long prec) {
    Laurent r;
    r.zero_ = zero.zero_like();
    r.val_ = prec;
    r.prec_ = prec;
    return r;
  }

  /// cs[k] is the coefficient of t^{val + k}; coefficients at or beyond prec are dropped.
  static Laurent from_coeffs(const C& zero, long val, std::vector<C> cs, long prec) {
    Laurent r;
    r.zero_ = zero.zero_like();
    r.val_ = val;
    r.prec_ = prec;
    if (prec - val < static_cast<long>(cs.size())) cs.resize(static_cast<size_t>(std::max(0L, prec - val)), r.zero_);
    r.coeffs_ = std::move(cs);
    r.normalize();
    return r;
  }

  static Laurent monomial(const C& c, long exp, long prec) { return from_coeffs(c, exp, {c}, prec); }

  long valuation() const { return val_; }
  long precision() const { return prec_; }
  long rel_precision() const { return prec_ - val_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_unit() const { return !coeffs_.empty() && coeffs_.front().is_unit(); }
  const C& zero_elem() const { return zero_; }

  /// Coefficient of t^k; PrecisionExhausted when k is at or beyond the precision.
  C coeff(long k) const {
    if (k >= prec_) throw PrecisionExhausted("coefficient of t^" + std::to_string(k) + " beyond O(t^" + std::to_string(prec_) + ")");
    if (k < val_ || k - val_ >= static_cast<long>(coeffs_.size())) return zero_;
    return coeffs_[static_cast<size_t>(k - val_)];
  }
  C lead() const { return coeffs_.empty() ? zero_ : coeffs_.front(); }

  /// Coefficient of t^{-1}.
  C residue() const { return coeff(-1); }

  Laurent zero_like() const { return zero(zero_, std::max(prec_, 1L)); }
  Laurent one_like() const { return monomial(zero_.one_like(), 0, std::max(prec_, 1L)); }
  Laurent from_int(long long n) const { return monomial(zero_.from_int(n), 0, std::max(prec_, 1L)); }
  Laurent constant(const C& c) const { return monomial(c, 0, std::max(prec_, 1L)); }

  friend Laurent operator+(const Laurent& a, const Laurent& b) { return combine(a, b, false); }
  friend Laurent operator-(const Laurent& a, const Laurent& b) { return combine(a, b, true); }
  friend Laurent operator-(const Laurent& a) {
    Laurent r(a);
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    const long val = a.val_ + b.val_;
    const long prec = std::min(a.val_ + b.prec_, b.val_ + a.prec_);
    const long rel = prec - val;
    std::vector<C> out(static_cast<size_t>(std::max(0L, rel)), a.zero_);
    for (long i = 0; i < static_cast<long>(a.coeffs_.size()) && i < rel; ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (long j = 0; j < static_cast<long>(b.coeffs_.size()) && i + j < rel; ++j)
        out[i + j] = out[i + j] + a.coeffs_[i] * b.coeffs_[j];
    }
    return from_coeffs(a.zero_, val, std::move(out), prec);
  }
  friend Laurent operator/(const Laurent& a, const Laurent& b) { return a * b.inv(); }
  Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
  Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  /// Inverse; DivisionByZero when no coefficient is significant or the leading one is not a unit.
  Laurent inv() const {
    if (coeffs_.empty()) throw DivisionByZero("inverse of O(t^" + std::to_string(prec_) + ")");
    if (!coeffs_.front().is_unit()) throw DivisionByZero("leading coefficient is not a unit");
    const long r = rel_precision();
    const C d0 = coeffs_.front().inv();
    std::vector<C> d(static_cast<size_t>(r), zero_);
    d[0] = d0;
    for (long k = 1; k < r; ++k) {
      C acc = zero_;
      for (long j = 1; j <= k && j < static_cast<long>(coeffs_.size()); ++j) acc = acc + coeffs_[j] * d[k - j];
      d[k] = -(d0 * acc);
    }
    return from_coeffs(zero_, -val_, std::move(d), -val_ + r);
  }

  Laurent pow(long long n) const {
    if (n < 0) return inv().pow(-n);
    Laurent acc = one_like(), base = *this;
    bool first = true;
    while (n) {
      if (n & 1) {
        acc = first ? base : acc * base;
        first = false;
      }
      n >>= 1;
      if (n) base = base * base;
    }
    return acc;
  }

  Laurent derivative() const {
    std::vector<C> out;
    out.reserve(coeffs_.size());
    for (size_t k = 0; k < coeffs_.size(); ++k) out.push_back(coeffs_[k] * zero_.from_int(val_ + static_cast<long>(k)));
    return from_coeffs(zero_, val_ - 1, std::move(out), prec_ - 1);
  }

  /// Multiplication by t^k.
  Laurent shifted(long k) const {
    Laurent r(*this);
    r.val_ += k;
    r.prec_ += k;
    return r;
  }

  Laurent truncated(long prec) const {
    if (prec >= prec_) return *this;
    return from_coeffs(zero_, val_, coeffs_, prec);
  }

  /// The part of the series with exponents below `bound` (exact, precision kept).
  Laurent part_below(long bound) const {
    std::vector<C> cs;
    for (long k = val_; k < std::min(bound, prec_); ++k) cs.push_back(coeff(k));
    return from_coeffs(zero_, val_, std::move(cs), prec_);
  }

  template <class D>
  Laurent<D> map(const D& dzero, const std::function<D(const C&)>& f) const {
    std::vector<D> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(f(c));
    return Laurent<D>::from_coeffs(dzero, val_, std::move(out), prec_);
  }

  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.val_ == b.val_ && a.prec_ == b.prec_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }
  friend bool operator<(const Laurent& a, const Laurent& b) {
    if (a.prec_ != b.prec_) return a.prec_ < b.prec_;
    if (a.val_ != b.val_) return a.val_ < b.val_;
    return std::lexicographical_compare(a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin(), b.coeffs_.end());
  }

  /// e.g. "t^-2 + 1 + O(t^5)".
  std::string str(const std::string& var = "t") const {
    std::string out;
    for (size_t k = 0; k < coeffs_.size(); ++k) {
      const C& c = coeffs_[k];
      if (c.is_zero()) continue;
      const long ex = val_ + static_cast<long>(k);
      std::string mono = ex == 0 ? "" : (ex == 1 ? var : var + "^" + std::to_string(ex));
      std::string cs = c.is_atomic() ? c.str() : "(" + c.str() + ")";
      std::string term = mono.empty() ? cs : (c.is_one() ? mono : cs + "*" + mono);
      out += (out.empty() ? "" : " + ") + term;
    }
    out += (out.empty() ? "" : " + ") + std::string("O(") + var + "^" + std::to_string(prec_) + ")";
    return out;
  }

  bool is_atomic() const { return false; }
  const std::vector<C>& coeffs() const { return coeffs_; }

 private:
  static Laurent combine(const Laurent& a, const Laurent& b, bool subtract) {
    const long prec = std::min(a.prec_, b.prec_);
    const long val = std::min(a.val_, b.val_);
    std::vector<C> out;
    out.reserve(static_cast<size_t>(std::max(0L, prec - val)));
    for (long k = val; k < prec; ++k) {
      const C x = a.coeff(k);
      const C y = b.coeff(k);
      out.push_back(subtract ? x - y : x + y);
    }
    return from_coeffs(a.zero_, val, std::move(out), prec);
  }

  void normalize() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead == coeffs_.size()) {
      coeffs_.clear();
      val_ = prec_;
      return;
    }
    if (lead) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
      val_ += static_cast<long>(lead);
    }
  }

  C zero_{};
  long val_ = 0;
  long prec_ = 0;
  std::vector<C> coeffs_;
};

/// F_q((t)) with the default precision given to exact inputs.
class LaurentField {
 public:
  LaurentField() = default;
  LaurentField(gf::Field base, std::string var, long default_precision)
      : base_(base), var_(std::move(var)), prec_(default_precision) {}
  gf::Field base() const { return base_; }
  const std::string& var() const { return var_; }
  long default_precision() const { return prec_; }
  uint32_t characteristic() const { return base_.p(); }
  std::string str() const { return base_.str() + "((" + var_ + "))"; }
  friend bool operator==(const LaurentField& a, const LaurentField& b) {
    return a.base_ == b.base_ && a.var_ == b.var_;
  }

 private:
  gf::Field base_;
  std::string var_ = "t";
  long prec_ = 32;
};

/// Series over F_q: the coordinate type used for F_q((t)).
class LaurentElem : public Laurent<gf::Elem> {
 public:
  LaurentElem() = default;
  LaurentElem(const Laurent<gf::Elem>& s) : Laurent<gf::Elem>(s) {}  // NOLINT(google-explicit-constructor)

  uint32_t characteristic() const { return zero_elem().characteristic(); }
  LaurentElem zero_like() const { return Laurent<gf::Elem>::zero_like(); }
  LaurentElem one_like() const { return Laurent<gf::Elem>::one_like(); }
  LaurentElem from_int(long long n) const { return Laurent<gf::Elem>::from_int(n); }
  LaurentElem from_elem(const gf::Elem& c) const { return constant(c); }
  LaurentElem pow(long long n) const { return Laurent<gf::Elem>::pow(n); }
  LaurentElem inv() const { return Laurent<gf::Elem>::inv(); }
  LaurentElem frobenius() const { return pow(characteristic()); }

  friend LaurentElem operator+(const LaurentElem& a, const LaurentElem& b) {
    return static_cast<const Laurent<gf::Elem>&>(a) + static_cast<const Laurent<gf::Elem>&>(b);
  }
  friend LaurentElem operator-(const LaurentElem& a, const LaurentElem& b) {
    return static_cast<const Laurent<gf::Elem>&>(a) - static_cast<const Laurent<gf::Elem>&>(b);
  }
  friend LaurentElem operator-(const LaurentElem& a) { return -static_cast<const Laurent<gf::Elem>&>(a); }
  friend LaurentElem operator*(const LaurentElem& a, const LaurentElem& b) {
    return static_cast<const Laurent<gf::Elem>&>(a) * static_cast<const Laurent<gf::Elem>&>(b);
  }
  friend LaurentElem operator/(const LaurentElem& a, const LaurentElem& b) {
    return static_cast<const Laurent<gf::Elem>&>(a) / static_cast<const Laurent<gf::Elem>&>(b);
  }
  LaurentElem& operator+=(const LaurentElem& o) { return *this = *this + o; }
  LaurentElem& operator-=(const LaurentElem& o) { return *this = *this - o; }
  LaurentElem& operator*=(const LaurentElem& o) { return *this = *this * o; }
  LaurentElem& operator/=(const LaurentElem& o) { return *this = *this / o; }
};

}  // namespace katoforge
