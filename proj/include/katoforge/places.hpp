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

// Places of F_q(t), local expansions and residues of rational 1-forms g dt.
//
// A finite place f of degree d is charted by a root alpha of f in the flat
// field E = GF(p, e*d): F_q embeds into E through the least root of the
// modulus of F_q, t maps to the least root of the image of f, and the
// completion at f embeds into E((s)) through t = alpha + s. At infinity the
// chart is F_q((s)) with t = 1/s.

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "katoforge/error.hpp"
#include "katoforge/gf.hpp"
#include "katoforge/laurent.hpp"
#include "katoforge/linalg.hpp"
#include "katoforge/ratfunc.hpp"
#include "katoforge/upoly.hpp"

namespace katoforge {

class Place {
 public:
  Place() = default;

  /// Finite place of a monic irreducible polynomial.
  static Place finite(const UPoly& f) {
    if (f.degree() < 1 || !f.lead().is_one() || !is_irreducible(f))
      throw ConfigMismatch("place polynomial must be monic irreducible: " + f.str());
    Place pl;
    pl.f_ = f;
    pl.inf_ = false;
    return pl;
  }
  static Place infinity(const gf::Field& base) {
    Place pl;
    pl.f_ = UPoly(base);
    pl.inf_ = true;
    return pl;
  }

  bool is_infinity() const { return inf_; }
  const UPoly& poly() const { return f_; }
  gf::Field base() const { return f_.field(); }
  int degree() const { return inf_ ? 1 : f_.degree(); }

  std::string str(const std::string& var = "t") const { return inf_ ? "inf" : f_.str(var); }

  friend bool operator==(const Place& a, const Place& b) { return a.inf_ == b.inf_ && a.f_ == b.f_; }
  friend bool operator!=(const Place& a, const Place& b) { return !(a == b); }
  /// Finite places by (degree, coefficients); infinity last.
  friend bool operator<(const Place& a, const Place& b) {
    if (a.inf_ != b.inf_) return b.inf_;
    return a.f_ < b.f_;
  }

 private:
  UPoly f_;
  bool inf_ = true;
};

/// Embedding data for one place.
class LocalChart {
 public:
  const Place& place() const { return place_; }
  gf::Field base() const { return base_; }
  gf::Field flat() const { return flat_; }

  gf::Elem embed(const gf::Elem& c) const {
    if (identity_) return c;
    gf::Elem acc = flat_.zero(), pw = flat_.one();
    for (auto d : c.coeffs()) {
      if (d) acc = acc + pw * flat_.from_int(d);
      pw = pw * beta_;
    }
    return acc;
  }
  UPoly embed(const UPoly& u) const {
    return u.map(flat_, [this](const gf::Elem& c) { return embed(c); });
  }

  /// Image of r mod f in E (t -> alpha).
  gf::Elem embed_residue(const UPoly& r) const {
    if (place_.is_infinity()) return r.coeff(0);
    return embed(r % place_.poly()).eval(alpha_);
  }

  /// Inverse of embed_residue: the representative of degree < deg f.
  UPoly pull_back(const gf::Elem& x) const {
    if (place_.is_infinity() || identity_) return UPoly::constant(x);
    const uint32_t e = base_.degree(), d = static_cast<uint32_t>(place_.degree()), n = e * d, p = base_.p();
    std::vector<std::vector<uint32_t>> m(n, std::vector<uint32_t>(n, 0));
    for (uint32_t b = 0; b < d; ++b) {
      for (uint32_t a = 0; a < e; ++a) {
        std::vector<uint32_t> za(e, 0);
        za[a] = 1;
        const auto col = (embed(base_.from_coeffs(za)) * alpha_.pow(b)).coeffs();
        for (uint32_t r = 0; r < n; ++r) m[r][b * e + a] = col[r];
      }
    }
    auto sol = linalg::solve_mod_p(std::move(m), x.coeffs(), p);
    if (!sol) throw ConfigMismatch("element outside the embedded residue field");
    std::vector<gf::Elem> cs;
    for (uint32_t b = 0; b < d; ++b)
      cs.push_back(base_.from_coeffs(std::vector<uint32_t>(sol->begin() + b * e, sol->begin() + (b + 1) * e)));
    return UPoly(base_, std::move(cs));
  }

  /// Expansion of num/den in the local parameter with relative precision `rel`.
  Laurent<gf::Elem> expand(const UPoly& num, const UPoly& den, long rel) const {
    if (den.is_zero()) throw DivisionByZero("expansion of a function with zero denominator");
    const gf::Elem zero = flat_.zero();
    if (num.is_zero()) return Laurent<gf::Elem>::zero(zero, rel);
    UPoly n, d;
    long shift = 0;
    if (place_.is_infinity()) {
      n = reversed(num);
      d = reversed(den);
      shift = den.degree() - num.degree();
    } else {
      n = embed(num).taylor_shift(alpha_);
      d = embed(den).taylor_shift(alpha_);
    }
    auto series = [&](const UPoly& u) {
      const long ord = u.order_at_zero();
      return Laurent<gf::Elem>::from_coeffs(zero, 0, u.coeffs(), ord + rel);
    };
    return (series(n) / series(d)).shifted(shift);
  }

  Laurent<gf::Elem> expand(const RatFunc& g, long rel) const {
    check_univariate(g);
    return expand(g.num_upoly(0), g.den_upoly(0), rel);
  }

  static void check_univariate(const RatFunc& g) {
    if (g.field().nvars() != 1) throw UnsupportedField("places are defined for univariate function fields only");
  }

 private:
  static UPoly reversed(const UPoly& u) {
    std::vector<gf::Elem> cs(u.coeffs().rbegin(), u.coeffs().rend());
    return UPoly(u.field(), std::move(cs));
  }

  friend std::shared_ptr<const LocalChart> chart(const Place& place);

  Place place_;
  gf::Field base_, flat_;
  gf::Elem beta_, alpha_;
  bool identity_ = true;
};

namespace detail {
struct ChartCache {
  std::mutex mu;
  std::map<std::tuple<const gf::Config*, bool, std::vector<uint64_t>>, std::shared_ptr<const LocalChart>> charts;
};
inline ChartCache& chart_cache() {
  static ChartCache c;
  return c;
}
}  // namespace detail

/// Chart of a place, built once per (field, place).
inline std::shared_ptr<const LocalChart> chart(const Place& place) {
  const gf::Field base = place.base();
  std::vector<uint64_t> key;
  for (const auto& c : place.poly().coeffs()) key.push_back(c.packed());
  auto k = std::make_tuple(base.config(), place.is_infinity(), key);
  auto& cache = detail::chart_cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.charts.find(k);
    if (it != cache.charts.end()) return it->second;
  }
  auto ch = std::make_shared<LocalChart>();
  ch->place_ = place;
  ch->base_ = base;
  ch->flat_ = base;
  if (!place.is_infinity()) {
    if (place.degree() == 1) {
      ch->alpha_ = -place.poly().coeff(0);
    } else {
      ch->identity_ = false;
      ch->flat_ = gf::make(base.p(), base.degree() * static_cast<uint32_t>(place.degree()));
      const gf::Field E = ch->flat_;
      if (base.degree() == 1) {
        ch->beta_ = E.zero();
      } else {
        std::vector<gf::Elem> mc;
        for (auto c : base.modulus()) mc.push_back(E.from_int(c));
        ch->beta_ = roots(UPoly(E, std::move(mc))).front();
      }
      ch->alpha_ = roots(ch->embed(place.poly())).front();
    }
  }
  std::lock_guard<std::mutex> lock(cache.mu);
  auto [it, inserted] = cache.charts.emplace(k, std::move(ch));
  return it->second;
}

/// Tr_{F_q[t]/f / F_q}(r).
inline gf::Elem trace_to_base(const UPoly& r, const Place& place) {
  if (place.is_infinity()) return r.coeff(0);
  const UPoly& f = place.poly();
  gf::Elem acc = f.field().zero();
  UPoly x = r % f;
  const UPoly t = UPoly::x(f.field());
  for (int j = 0; j < f.degree(); ++j) {
    acc = acc + x.coeff(j);
    x = (x * t) % f;
  }
  return acc;
}

/// All places where g has a zero or pole, plus infinity, in ascending order.
inline std::vector<Place> places_of(const std::vector<UPoly>& polys, const gf::Field& base) {
  std::set<Place> out;
  for (const auto& u : polys) {
    if (u.degree() < 1) continue;
    for (auto& [f, m] : factor(u)) out.insert(Place::finite(f));
  }
  out.insert(Place::infinity(base));
  return {out.begin(), out.end()};
}
inline std::vector<Place> places_of(const RatFunc& g) {
  LocalChart::check_univariate(g);
  return places_of({g.num_upoly(0), g.den_upoly(0)}, g.field().base());
}

namespace detail {

/// Residue through the chart: works for every pole order.
inline UPoly residue_by_expansion(const UPoly& num, const UPoly& den, const Place& place) {
  auto ch = chart(place);
  const gf::Field base = place.base();
  if (num.is_zero()) return UPoly(base);
  if (place.is_infinity()) {
    // g(t) dt = -g(1/s) s^-2 ds
    const long v = den.degree() - num.degree();
    const long rel = std::max(1L, 2 - v);
    const auto series = ch->expand(num, den, rel).shifted(-2);
    return UPoly::constant(-series.residue());
  }
  const UPoly dpart = den;
  int order = 0;
  UPoly rest = dpart;
  while (true) {
    auto [q, r] = divmod(rest, place.poly());
    if (!r.is_zero()) break;
    rest = q;
    ++order;
  }
  if (order == 0) return UPoly(base);
  const auto series = ch->expand(num, den, order + 1);
  return ch->pull_back(series.residue());
}

}  // namespace detail

/// Res_place(g dt) as an element of F_q[t]/f (a constant at infinity).
inline UPoly residue_at(const UPoly& num, const UPoly& den, const Place& place) {
  if (den.is_zero()) throw DivisionByZero("zero denominator");
  if (num.is_zero()) return UPoly(place.base());
  if (place.is_infinity()) return detail::residue_by_expansion(num, den, place);
  const UPoly& f = place.poly();
  auto [c, r] = divmod(den, f);
  if (!r.is_zero()) return UPoly(place.base());
  if (!(c % f).is_zero()) {
    // g = N/(f*C) with f prime to C: Res = N / (f' C) mod f
    return (num * inv_mod((f.derivative() * c) % f, f)) % f;
  }
  return detail::residue_by_expansion(num, den, place);
}

inline UPoly residue_at(const RatFunc& g, const Place& place) {
  LocalChart::check_univariate(g);
  return residue_at(g.num_upoly(0), g.den_upoly(0), place);
}

}  // namespace katoforge
