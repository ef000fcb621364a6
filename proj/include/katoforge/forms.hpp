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

// Kaehler differentials of F_q(x_1..x_k) on the basis dx_I, I a bitmask.

#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>

#include "katoforge/error.hpp"
#include "katoforge/ratfunc.hpp"

namespace katoforge {

class DiffForm {
 public:
  using Mask = uint32_t;

  DiffForm() = default;

  static DiffForm zero(const FunctionField& f, unsigned degree) {
    DiffForm r;
    r.field_ = f;
    r.degree_ = degree;
    return r;
  }
  /// Degree-0 form.
  static DiffForm function(const RatFunc& g) {
    DiffForm r = zero(g.field(), 0);
    r.put(0, g);
    return r;
  }
  /// g dx_I.
  static DiffForm monomial(const RatFunc& g, Mask mask) {
    if (mask >> g.field().nvars()) throw DegreeOverflow("index set outside the variables");
    DiffForm r = zero(g.field(), static_cast<unsigned>(std::popcount(mask)));
    r.put(mask, g);
    return r;
  }
  static DiffForm dx(const FunctionField& f, size_t j) {
    return monomial(RatFunc::constant(f, f.base().one()), Mask{1} << j);
  }

  const FunctionField& field() const { return field_; }
  unsigned degree() const { return degree_; }
  const std::map<Mask, RatFunc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  RatFunc coeff(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? RatFunc::constant(field_, field_.base().zero()) : it->second;
  }

  friend DiffForm operator+(const DiffForm& a, const DiffForm& b) {
    a.check(b);
    DiffForm r(a);
    for (const auto& [m, g] : b.terms_) r.put(m, r.coeff(m) + g);
    return r;
  }
  friend DiffForm operator-(const DiffForm& a) {
    DiffForm r(a);
    for (auto& [m, g] : r.terms_) g = -g;
    return r;
  }
  friend DiffForm operator-(const DiffForm& a, const DiffForm& b) { return a + (-b); }
  DiffForm& operator+=(const DiffForm& o) { return *this = *this + o; }

  DiffForm scaled(const RatFunc& g) const {
    DiffForm r = zero(field_, degree_);
    for (const auto& [m, c] : terms_) r.put(m, c * g);
    return r;
  }

  /// Graded wedge product; DegreeOverflow past the number of variables.
  friend DiffForm wedge(const DiffForm& a, const DiffForm& b) {
    a.check_field(b);
    if (a.degree_ + b.degree_ > a.field_.nvars())
      throw DegreeOverflow("wedge of degrees " + std::to_string(a.degree_) + " and " + std::to_string(b.degree_) +
                           " exceeds " + std::to_string(a.field_.nvars()) + " variables");
    DiffForm r = zero(a.field_, a.degree_ + b.degree_);
    for (const auto& [ma, ga] : a.terms_) {
      for (const auto& [mb, gb] : b.terms_) {
        if (ma & mb) continue;
        const RatFunc c = ga * gb;
        r.put(ma | mb, r.coeff(ma | mb) + (sign(ma, mb) < 0 ? -c : c));
      }
    }
    return r;
  }

  /// Exterior derivative.
  DiffForm d() const {
    DiffForm r = zero(field_, degree_ + 1);
    for (const auto& [m, g] : terms_) {
      for (size_t j = 0; j < field_.nvars(); ++j) {
        const Mask bit = Mask{1} << j;
        if (m & bit) continue;
        const RatFunc dj = g.derivative(j);
        if (dj.is_zero()) continue;
        // dx_j ^ dx_I
        r.put(m | bit, r.coeff(m | bit) + (sign(bit, m) < 0 ? -dj : dj));
      }
    }
    return r;
  }

  bool is_closed() const { return d().is_zero(); }

  friend bool operator==(const DiffForm& a, const DiffForm& b) {
    return a.degree_ == b.degree_ && a.field_ == b.field_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const DiffForm& a, const DiffForm& b) { return !(a == b); }

  /// e.g. "(1/t) dt", "x dx^dy + dy^dz"; zero prints "0".
  std::string str() const {
    if (terms_.empty()) return "0";
    const auto& vars = field_.vars();
    std::string out;
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
      const auto& [m, g] = *it;
      std::string basis;
      for (size_t j = 0; j < vars.size(); ++j)
        if (m >> j & 1) basis += (basis.empty() ? "d" : "^d") + vars[j];
      std::string coef;
      if (basis.empty())
        coef = g.str();
      else if (!g.is_one())
        coef = (g.is_atomic() ? g.str() : "(" + g.str() + ")") + " ";
      if (!out.empty()) out += " + ";
      out += coef + basis;
    }
    return out;
  }

  /// (-1)^(number of pairs i in a, j in b with i > j): reordering dx_a ^ dx_b.
  static int sign(Mask a, Mask b) {
    int inv = 0;
    for (Mask bb = b; bb; bb &= bb - 1) {
      const Mask bit = bb & (~bb + 1);
      inv += std::popcount(a & ~((bit << 1) - 1));
    }
    return inv % 2 ? -1 : 1;
  }

 private:
  void put(Mask m, const RatFunc& g) {
    if (g.is_zero())
      terms_.erase(m);
    else
      terms_[m] = g;
  }
  void check_field(const DiffForm& o) const {
    if (field_ != o.field_) throw ConfigMismatch("forms over different fields");
  }
  void check(const DiffForm& o) const {
    check_field(o);
    if (degree_ != o.degree_) throw DegreeMismatch("forms of different degrees");
  }

  FunctionField field_;
  unsigned degree_ = 0;
  std::map<Mask, RatFunc> terms_;
};

/// dx_1 ^ ... over the variables of the mask, as a monomial x^{(p-1) 1_I}.
inline RatFunc basis_monomial(const FunctionField& f, DiffForm::Mask m, uint32_t power) {
  Exponents e(f.nvars(), 0);
  for (size_t j = 0; j < f.nvars(); ++j)
    if (m >> j & 1) e[j] = power;
  return RatFunc::from_poly(f, MPoly::monomial(f.base(), e, f.base().one()));
}

inline DiffForm d(const RatFunc& g) { return DiffForm::function(g).d(); }

/// dg/g; DlogOfZero for g = 0.
inline DiffForm dlog(const RatFunc& g) {
  if (g.is_zero()) throw DlogOfZero("dlog of zero");
  return d(g).scaled(g.inv());
}

/// f dx_I -> f^p x^{(p-1) 1_I} dx_I, a closed representative of the class.
inline DiffForm cartier_inv(const DiffForm& w) {
  const uint32_t p = w.field().characteristic();
  DiffForm r = DiffForm::zero(w.field(), w.degree());
  for (const auto& [m, g] : w.terms())
    r += DiffForm::monomial(g.frobenius() * basis_monomial(w.field(), m, p - 1), m);
  return r;
}

/// Cartier operator on closed forms: g^p x^{(p-1) 1_I} dx_I -> g dx_I, other
/// components of the p-power decomposition contribute nothing. NotClosed otherwise.
inline DiffForm cartier(const DiffForm& w) {
  if (!w.is_closed()) throw NotClosed("Cartier operator needs a closed form: " + w.str());
  const uint32_t p = w.field().characteristic();
  DiffForm r = DiffForm::zero(w.field(), w.degree());
  for (const auto& [m, g] : w.terms()) {
    Exponents e(w.field().nvars(), 0);
    for (size_t j = 0; j < e.size(); ++j)
      if (m >> j & 1) e[j] = p - 1;
    const auto parts = p_power_decompose(g);
    r += DiffForm::monomial(parts.at(e), m);
  }
  return r;
}

/// Exact iff closed with vanishing Cartier image.
inline bool is_exact(const DiffForm& w) { return w.is_closed() && cartier(w).is_zero(); }

/// Membership in nu_n: closed and fixed by the Cartier operator.
inline bool nu_test(const DiffForm& w) { return w.is_closed() && cartier(w) == w; }

}  // namespace katoforge
