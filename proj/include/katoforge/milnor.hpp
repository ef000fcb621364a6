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

// Milnor K-theory: formal sums of symbols, the differential symbol and the
// rational Artin-Schreier extension F_q(u) / F_q(t), t = u^p - u.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "katoforge/error.hpp"
#include "katoforge/forms.hpp"
#include "katoforge/ratfunc.hpp"
#include "katoforge/upoly.hpp"

namespace katoforge {

class MilnorElement {
 public:
  using Symbol = std::vector<RatFunc>;

  MilnorElement() = default;
  static MilnorElement zero(const FunctionField& f, unsigned degree) {
    MilnorElement r;
    r.field_ = f;
    r.degree_ = degree;
    return r;
  }
  static MilnorElement symbol(const FunctionField& f, Symbol entries, long long coef = 1) {
    MilnorElement r = zero(f, static_cast<unsigned>(entries.size()));
    for (const auto& a : entries) {
      if (a.is_zero()) throw DlogOfZero("symbol entries must be nonzero");
      if (a.field() != f) throw ConfigMismatch("symbol entry over a different field");
    }
    r.add(entries, coef);
    return r;
  }

  const FunctionField& field() const { return field_; }
  unsigned degree() const { return degree_; }
  const std::map<Symbol, long long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Symbol& s, long long coef) {
    if (!coef) return;
    auto [it, inserted] = terms_.emplace(s, coef);
    if (!inserted && (it->second += coef) == 0) terms_.erase(it);
  }

  friend MilnorElement operator+(const MilnorElement& a, const MilnorElement& b) {
    a.check(b);
    MilnorElement r(a);
    for (const auto& [s, c] : b.terms_) r.add(s, c);
    return r;
  }
  friend MilnorElement operator-(const MilnorElement& a) { return a.times(-1); }
  friend MilnorElement operator-(const MilnorElement& a, const MilnorElement& b) { return a + (-b); }
  MilnorElement times(long long n) const {
    MilnorElement r = zero(field_, degree_);
    for (const auto& [s, c] : terms_) r.add(s, c * n);
    return r;
  }

  friend bool operator==(const MilnorElement& a, const MilnorElement& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  /// e.g. "{t, t+1} + 2{x, y}".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [s, c] : terms_) {
      if (!out.empty()) out += c < 0 ? " - " : " + ";
      else if (c < 0) out += "-";
      const long long m = c < 0 ? -c : c;
      if (m != 1) out += std::to_string(m);
      out += "{";
      for (size_t j = 0; j < s.size(); ++j) out += (j ? ", " : "") + s[j].str();
      out += "}";
    }
    return out;
  }

  void check(const MilnorElement& o) const {
    if (field_ != o.field_) throw ConfigMismatch("Milnor elements over different fields");
    if (degree_ != o.degree_) throw DegreeMismatch("Milnor elements of degrees " + std::to_string(degree_) + " and " + std::to_string(o.degree_));
  }

 private:
  FunctionField field_;
  unsigned degree_ = 0;
  std::map<Symbol, long long> terms_;
};

namespace detail {

/// Entry as (constant, [(irreducible, multiplicity)]) for univariate entries,
/// (1, [(entry, 1)]) otherwise.
inline std::pair<RatFunc, std::vector<std::pair<RatFunc, long long>>> split_entry(const RatFunc& a) {
  const FunctionField& F = a.field();
  auto var = a.sole_variable();
  if (a.is_constant()) return {a, {}};
  if (!var) return {a.one_like(), {{a, 1}}};
  const UPoly n = a.num_upoly(*var), d = a.den_upoly(*var);
  std::vector<std::pair<RatFunc, long long>> out;
  for (auto& [f, m] : factor(n)) out.emplace_back(RatFunc::from_upoly(F, *var, f), m);
  for (auto& [f, m] : factor(d)) out.emplace_back(RatFunc::from_upoly(F, *var, f), -static_cast<long long>(m));
  return {a.from_elem(n.lead() / d.lead()), out};
}

/// Symbols vanishing in k_n: an entry 1, a repeated entry, or a_i + a_j = 1.
inline bool trivial_symbol(const std::vector<RatFunc>& s) {
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i].is_one()) return true;
    for (size_t j = i + 1; j < s.size(); ++j)
      if (s[i] == s[j] || (s[i] + s[j]).is_one()) return true;
  }
  return false;
}

}  // namespace detail

/// Multilinear expansion over irreducible factors of univariate entries, with
/// trivial symbols removed before and after splitting. The constant factor of an
/// entry stays as its own entry. Equalities are those of k_n.
inline MilnorElement symbol_expand(const MilnorElement& x) {
  MilnorElement out = MilnorElement::zero(x.field(), x.degree());
  for (const auto& [s, c] : x.terms()) {
    if (detail::trivial_symbol(s)) continue;
    std::vector<std::pair<MilnorElement::Symbol, long long>> acc{{{}, c}};
    for (const auto& a : s) {
      auto [k, factors] = detail::split_entry(a);
      if (!k.is_one()) factors.insert(factors.begin(), {k, 1});
      std::vector<std::pair<MilnorElement::Symbol, long long>> next;
      for (const auto& [pre, m] : acc) {
        for (const auto& [f, e] : factors) {
          auto sym = pre;
          sym.push_back(f);
          next.emplace_back(std::move(sym), m * e);
        }
      }
      acc = std::move(next);
    }
    for (const auto& [sym, m] : acc)
      if (!detail::trivial_symbol(sym)) out.add(sym, m);
  }
  return out;
}

/// sum c * dlog a_1 ^ ... ^ dlog a_n; the zero form when n exceeds the number of variables.
inline DiffForm d_symbol(const MilnorElement& x) {
  const FunctionField& F = x.field();
  DiffForm acc = DiffForm::zero(F, x.degree());
  if (x.degree() > F.nvars()) return acc;
  for (const auto& [s, c] : x.terms()) {
    const RatFunc coef = RatFunc::constant(F, F.base().from_int(c));
    if (coef.is_zero()) continue;
    DiffForm w = DiffForm::function(coef);
    for (const auto& a : s) w = wedge(w, dlog(a));
    acc += w;
  }
  return acc;
}

/// Equality in K_n(F)/p through the differential symbol.
inline bool kn_equal(const MilnorElement& a, const MilnorElement& b) {
  a.check(b);
  return d_symbol(a - b).is_zero();
}

/// L = F_q(u) over F = F_q(t) with t = u^p - u and sigma(u) = u + 1.
class ASExtension {
 public:
  explicit ASExtension(gf::Field base, std::string tvar = "t", std::string uvar = "u")
      : base_(FunctionField(base, {std::move(tvar)})), ext_(FunctionField(base, {std::move(uvar)})) {}

  const FunctionField& base_field() const { return base_; }
  const FunctionField& ext_field() const { return ext_; }
  uint32_t p() const { return base_.characteristic(); }

  /// The image of t in L.
  RatFunc t_in_ext() const {
    const RatFunc u = RatFunc::variable(ext_, 0);
    return u.pow(p()) - u;
  }

  /// t -> u^p - u.
  RatFunc embed(const RatFunc& f) const {
    if (f.field() != base_) throw ConfigMismatch("element is not over the base field " + base_.str());
    return substitute(f, {t_in_ext()});
  }

  /// sigma^k: u -> u + k.
  RatFunc sigma(const RatFunc& l, long long k = 1) const {
    check_ext(l);
    const RatFunc u = RatFunc::variable(ext_, 0);
    return substitute(l, {u + u.from_int(k)});
  }

  bool in_base(const RatFunc& l) const { return sigma(l) == l; }

  /// The element of F whose image is l; ConfigMismatch when l is not sigma-invariant.
  RatFunc descend(const RatFunc& l) const {
    check_ext(l);
    if (!in_base(l)) throw ConfigMismatch(l.str() + " is not in the base field");
    return RatFunc(base_, descend_poly(l.num_upoly(0)), descend_poly(l.den_upoly(0)));
  }

  /// N_{L/F}(l) = prod_{c in F_p} sigma^c(l), as an element of F.
  RatFunc norm(const RatFunc& l) const {
    RatFunc acc = l;
    for (uint32_t c = 1; c < p(); ++c) acc = acc * sigma(l, c);
    return descend(acc);
  }

  MilnorElement restrict(const MilnorElement& x) const {
    MilnorElement out = MilnorElement::zero(ext_, x.degree());
    for (const auto& [s, c] : x.terms()) {
      MilnorElement::Symbol t;
      for (const auto& a : s) t.push_back(embed(a));
      out.add(t, c);
    }
    return out;
  }

  /// (1 - sigma){a_1..a_n} = sum_k {sigma a_1, .., sigma a_{k-1}, a_k / sigma a_k, a_{k+1}, .., a_n}.
  MilnorElement one_minus_sigma(const MilnorElement& x) const {
    MilnorElement out = MilnorElement::zero(ext_, x.degree());
    for (const auto& [s, c] : x.terms()) {
      for (size_t k = 0; k < s.size(); ++k) {
        MilnorElement::Symbol t;
        for (size_t j = 0; j < k; ++j) t.push_back(sigma(s[j]));
        t.push_back(s[k] / sigma(s[k]));
        for (size_t j = k + 1; j < s.size(); ++j) t.push_back(s[j]);
        out.add(t, c);
      }
    }
    return out;
  }

  /// Norm on symbols with at most one entry outside F (projection formula);
  /// symbols entirely from F map to p times themselves.
  MilnorElement norm_proj(const MilnorElement& x) const {
    MilnorElement out = MilnorElement::zero(base_, x.degree());
    for (const auto& [s, c] : x.terms()) {
      std::optional<size_t> special;
      for (size_t j = 0; j < s.size(); ++j) {
        if (in_base(s[j])) continue;
        if (special) throw NormShapeUnsupported("more than one entry outside the base field");
        special = j;
      }
      MilnorElement::Symbol t;
      for (size_t j = 0; j < s.size(); ++j) t.push_back(special && *special == j ? norm(s[j]) : descend(s[j]));
      out.add(t, special ? c : c * p());
    }
    return out;
  }

 private:
  void check_ext(const RatFunc& l) const {
    if (l.field() != ext_) throw ConfigMismatch("element is not over the extension field " + ext_.str());
  }

  /// P(u) = Q(u^p - u) for sigma-invariant P; digits in base u^p - u must be constants.
  MPoly descend_poly(UPoly P) const {
    const gf::Field k = ext_.base();
    std::vector<gf::Elem> uc(p() + 1, k.zero());
    uc[p()] = k.one();
    uc[1] = -k.one();
    const UPoly T(k, uc);
    std::vector<gf::Elem> q;
    while (!P.is_zero()) {
      auto [quo, rem] = divmod(P, T);
      if (rem.degree() > 0) throw ConfigMismatch("polynomial is not sigma-invariant");
      q.push_back(rem.coeff(0));
      P = quo;
    }
    return MPoly::from_upoly(1, 0, UPoly(k, q));
  }

  FunctionField base_, ext_;
};

}  // namespace katoforge
