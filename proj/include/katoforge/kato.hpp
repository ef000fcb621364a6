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

// Kato cohomology H_{p^i}^{n+1}(F) as sums of Witt symbols [w | b_1, ..., b_n)
// modulo the relations (F w - w | b), ([a] | a, ...), (w | .., b, .., b, ..).
// Equality is decided through invariants on F_q, F_q(t) and F_q((t)).

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "katoforge/error.hpp"
#include "katoforge/galois_ring.hpp"
#include "katoforge/laurent.hpp"
#include "katoforge/milnor.hpp"
#include "katoforge/places.hpp"
#include "katoforge/witt.hpp"

namespace katoforge {

namespace detail {

/// Non-constant multiplicative pieces of an entry; constants of F_q have
/// order prime to p and vanish in H.
inline std::vector<std::pair<gf::Elem, long long>> split_slot(const gf::Elem&) { return {}; }

inline std::vector<std::pair<RatFunc, long long>> split_slot(const RatFunc& b) {
  if (b.is_constant()) return {};
  if (!b.sole_variable()) return {{b / b.from_elem(b.num().lead().coeff), 1}};
  return split_entry(b).second;
}

/// t^j * c * u with u a principal unit.
inline std::vector<std::pair<LaurentElem, long long>> split_slot(const LaurentElem& b) {
  const long j = b.valuation();
  const gf::Elem c = b.lead();
  std::vector<std::pair<LaurentElem, long long>> out;
  const LaurentElem u = LaurentElem(b.shifted(-j)) * LaurentElem(b.shifted(-j).constant(c.inv()));
  if (j != 0) out.emplace_back(LaurentElem(Laurent<gf::Elem>::monomial(c.one_like(), 1, std::max(2L, u.precision() + 1))), j);
  const bool one = u.coeffs().size() == 1 && u.valuation() == 0 && u.coeffs()[0].is_one();
  if (!one) out.emplace_back(u, 1);
  return out;
}

inline bool is_one(const gf::Elem& a) { return a.is_one(); }
inline bool is_one(const RatFunc& a) { return a.is_one(); }
inline bool is_one(const LaurentElem& a) { return a.coeffs().size() == 1 && a.valuation() == 0 && a.coeffs()[0].is_one(); }

/// True when w is a value of F - id; false when undecidable for the field.
template <class T>
bool is_wp_image(const WittVector<T>& w) {
  try {
    return witt_as_solve(w).has_value();
  } catch (const UnsupportedField&) {
    return false;
  } catch (const PrecisionExhausted&) {
    return false;
  }
}

template <class T>
std::string entry_str(const T& a) {
  return a.str();
}

}  // namespace detail

/// Formal sum of Witt symbols of a fixed level and degree, normalized.
template <class T>
class HClass {
 public:
  using Entries = std::vector<T>;

  HClass() = default;

  static HClass zero(const T& like, uint32_t level, unsigned degree) {
    HClass c;
    c.like_ = like.zero_like();
    c.level_ = level;
    c.degree_ = degree;
    return c;
  }

  /// [w | b_1, ..., b_n) after normalization.
  static HClass build(const WittVector<T>& w, const Entries& b) {
    HClass c = zero(w.coord(0), static_cast<uint32_t>(w.length()), static_cast<unsigned>(b.size()));
    c.insert(w, b);
    c.cleanup();
    return c;
  }

  uint32_t level() const { return level_; }
  unsigned degree() const { return degree_; }
  const T& like() const { return like_; }
  const std::map<Entries, WittVector<T>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend HClass operator+(const HClass& a, const HClass& b) {
    a.check(b);
    HClass r(a);
    for (const auto& [e, w] : b.terms_) r.accumulate(e, w);
    r.cleanup();
    return r;
  }
  friend HClass operator-(const HClass& a) {
    HClass r(a);
    for (auto& [e, w] : r.terms_) w = -w;
    return r;
  }
  friend HClass operator-(const HClass& a, const HClass& b) { return a + (-b); }
  HClass times(long long n) const {
    HClass r = zero(like_, level_, degree_);
    for (const auto& [e, w] : terms_) r.accumulate(e, w.times(n));
    r.cleanup();
    return r;
  }

  friend bool operator==(const HClass& a, const HClass& b) {
    return a.level_ == b.level_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  /// e.g. "[[1/t] | t+1)"; zero prints "0".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, w] : terms_) {
      if (!out.empty()) out += " + ";
      out += "[" + w.str() + " |";
      for (size_t j = 0; j < e.size(); ++j) out += (j ? ", " : " ") + detail::entry_str(e[j]);
      out += ")";
    }
    return out;
  }

  void check(const HClass& o) const {
    if (level_ != o.level_) throw ConfigMismatch("classes of levels " + std::to_string(level_) + " and " + std::to_string(o.level_));
    if (degree_ != o.degree_) throw DegreeMismatch("classes of degrees " + std::to_string(degree_) + " and " + std::to_string(o.degree_));
  }

 private:
  static bool relation_pattern(const WittVector<T>& w, const Entries& b) {
    for (size_t i = 0; i < b.size(); ++i) {
      if (detail::is_one(b[i])) return true;
      for (size_t j = i + 1; j < b.size(); ++j)
        if (b[i] == b[j] || detail::is_one(b[i] + b[j])) return true;
    }
    if (!b.empty() && w.coord(0) == b[0]) {
      bool teich = true;
      for (size_t j = 1; j < w.length(); ++j) teich = teich && w.coord(j).is_zero();
      if (teich) return true;
    }
    return false;
  }

  void insert(const WittVector<T>& w, const Entries& b) {
    for (const auto& x : b)
      if (x.is_zero()) throw DlogOfZero("symbol entries must be nonzero");
    if (w.is_zero() || relation_pattern(w, b)) return;
    std::vector<std::pair<Entries, long long>> acc{{{}, 1}};
    for (const auto& x : b) {
      const auto pieces = detail::split_slot(x);
      std::vector<std::pair<Entries, long long>> next;
      for (const auto& [pre, m] : acc) {
        for (const auto& [f, e] : pieces) {
          auto ent = pre;
          ent.push_back(f);
          next.emplace_back(std::move(ent), m * e);
        }
      }
      acc = std::move(next);
    }
    for (auto& [ent, m] : acc) {
      if (relation_pattern(w, ent)) continue;
      // alternating in the entries
      long long sign = 1;
      for (size_t i = 0; i < ent.size(); ++i)
        for (size_t j = 0; j + 1 < ent.size() - i; ++j)
          if (ent[j + 1] < ent[j]) {
            std::swap(ent[j], ent[j + 1]);
            sign = -sign;
          }
      accumulate(ent, w.times(m * sign));
    }
  }

  void accumulate(const Entries& e, const WittVector<T>& w) {
    auto it = terms_.find(e);
    if (it == terms_.end())
      terms_.emplace(e, w);
    else
      it->second = it->second + w;
  }

  void cleanup() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second.is_zero() || detail::is_wp_image(it->second))
        it = terms_.erase(it);
      else
        ++it;
    }
  }

  T like_{};
  uint32_t level_ = 1;
  unsigned degree_ = 0;
  std::map<Entries, WittVector<T>> terms_;
};

/// (w, {b_1..b_n}) -> [w | b_1, ..., b_n), extended additively over the symbols.
inline HClass<RatFunc> pair(const WittVector<RatFunc>& w, const MilnorElement& s) {
  HClass<RatFunc> acc = HClass<RatFunc>::zero(w.coord(0), static_cast<uint32_t>(w.length()), s.degree());
  for (const auto& [sym, c] : s.terms()) acc = acc + HClass<RatFunc>::build(w.times(c), sym);
  return acc;
}

/// Pads every Witt vector with leading zeros up to `level`.
template <class T>
HClass<T> level_shift(const HClass<T>& c, uint32_t level) {
  if (level < c.level()) throw LevelDecrease("cannot shift from level " + std::to_string(c.level()) + " to " + std::to_string(level));
  HClass<T> out = HClass<T>::zero(c.like(), level, c.degree());
  for (const auto& [e, w] : c.terms()) out = out + HClass<T>::build(w.shifted(level), e);
  return out;
}

struct LocalInvariant {
  Place place;
  uint64_t value = 0;
  uint64_t modulus = 1;
  uint32_t level = 1;
};

namespace detail {

/// Tr Res(G db/b) with G = sum_j p^j w_j^(p^(m-1-j)) over lifts to GR(p^m, E).
/// Absent coordinates are zero.
inline uint64_t schmid_witt(const std::vector<std::optional<Laurent<gf::Elem>>>& w, const Laurent<gf::Elem>& b,
                            const gf::Field& E, uint32_t m) {
  auto R = GaloisRing::make(E, m);
  const GRElem gz = GRElem::zero(R);
  const uint32_t p = E.p();
  auto lift = [&](const Laurent<gf::Elem>& s) {
    return s.map<GRElem>(gz, [&](const gf::Elem& c) { return GRElem::lift(R, c); });
  };
  std::optional<Laurent<GRElem>> G;
  uint64_t pj = 1, pw = 1;
  for (uint32_t j = 1; j < m; ++j) pw *= p;
  for (uint32_t j = 0; j < m; ++j) {
    if (w[j]) {
      Laurent<GRElem> term = lift(*w[j]).pow(static_cast<long long>(pw));
      if (pj != 1) {
        const GRElem scale = gz.from_int(static_cast<long long>(pj));
        term = term.map<GRElem>(gz, [&](const GRElem& c) { return c * scale; });
      }
      G = G ? *G + term : term;
    }
    pj *= p;
    pw /= p;
  }
  if (!G) return 0;
  const Laurent<GRElem> bh = lift(b);
  return ((*G) * (bh.derivative() / bh)).residue().trace();
}

inline uint64_t power_of(uint32_t p, uint32_t m) {
  uint64_t r = 1;
  for (uint32_t j = 0; j < m; ++j) r *= p;
  return r;
}

inline void require_degree_one(unsigned degree) {
  if (degree != 1) throw UnsupportedDegree("local invariants are defined for n = 1, got n = " + std::to_string(degree));
}

}  // namespace detail

/// Schmid-Witt local invariant in Z/p^i of a class over F_q(t).
inline LocalInvariant local_invariant(const HClass<RatFunc>& c, const Place& place) {
  detail::require_degree_one(c.degree());
  if (c.like().field().nvars() != 1) throw UnsupportedField("local invariants need F_q(t)");
  if (place.base() != c.like().field().base()) throw ConfigMismatch("place over a different constant field");
  const auto ch = chart(place);
  const uint32_t m = c.level(), p = c.like().characteristic();
  LocalInvariant out{place, 0, detail::power_of(p, m), m};
  for (const auto& [e, w] : c.terms()) {
    std::vector<std::optional<Laurent<gf::Elem>>> series(m);
    std::optional<long> g;
    std::vector<long> need(m, 0);
    uint64_t pw = detail::power_of(p, m - 1);
    for (uint32_t j = 0; j < m; ++j, pw /= p) {
      const RatFunc& x = w.coord(j);
      if (x.is_zero()) continue;
      const long v = ch->expand(x, 1).valuation();
      const long nv = static_cast<long>(pw) * v;
      need[j] = std::max(1L, 1 - nv) + 1;
      g = g ? std::min(*g, nv) : nv;
    }
    if (!g) continue;
    for (uint32_t j = 0; j < m; ++j)
      if (!w.coord(j).is_zero()) series[j] = ch->expand(w.coord(j), need[j]);
    const auto bs = ch->expand(e.at(0), std::max(1L, 1 - *g) + 2);
    out.value = (out.value + detail::schmid_witt(series, bs, ch->flat(), m)) % out.modulus;
  }
  return out;
}

/// The invariant at the place t of F_q((t)).
inline LocalInvariant local_invariant(const HClass<LaurentElem>& c, const Place& place) {
  detail::require_degree_one(c.degree());
  const gf::Field k(c.like().zero_elem().config());
  if (place.is_infinity() || place.degree() != 1 || !place.poly().coeff(0).is_zero())
    throw UnsupportedField("F_q((t)) has the single place t");
  const uint32_t m = c.level(), p = k.p();
  LocalInvariant out{place, 0, detail::power_of(p, m), m};
  for (const auto& [e, w] : c.terms()) {
    std::vector<std::optional<Laurent<gf::Elem>>> series(m);
    for (uint32_t j = 0; j < m; ++j)
      if (!w.coord(j).is_zero()) series[j] = w.coord(j);
    out.value = (out.value + detail::schmid_witt(series, e.at(0), k, m)) % out.modulus;
  }
  return out;
}

inline LocalInvariant local_invariant(const HClass<gf::Elem>&, const Place&) {
  throw UnsupportedField("local invariants need a function field");
}

/// The place t of F_q((t)).
inline Place laurent_place(const gf::Field& k) { return Place::finite(UPoly::x(k)); }

struct ReciprocityReport {
  bool holds = true;
  std::vector<LocalInvariant> table;
  uint64_t sum = 0;
  uint64_t modulus = 1;
};

/// Places where some entry or Witt coordinate has a zero or pole, plus infinity.
inline std::vector<Place> places_of(const HClass<RatFunc>& c) {
  if (c.like().field().nvars() != 1) throw UnsupportedField("places need F_q(t)");
  std::vector<UPoly> polys;
  for (const auto& [e, w] : c.terms()) {
    for (const auto& x : w.coords())
      if (!x.is_zero()) {
        polys.push_back(x.num_upoly(0));
        polys.push_back(x.den_upoly(0));
      }
    for (const auto& b : e) {
      polys.push_back(b.num_upoly(0));
      polys.push_back(b.den_upoly(0));
    }
  }
  return places_of(polys, c.like().field().base());
}

/// Invariant table over all relevant places and whether it sums to zero.
inline ReciprocityReport reciprocity_check(const HClass<RatFunc>& c) {
  detail::require_degree_one(c.degree());
  ReciprocityReport r;
  r.modulus = detail::power_of(c.like().characteristic(), c.level());
  for (const auto& pl : places_of(c)) {
    r.table.push_back(local_invariant(c, pl));
    r.sum = (r.sum + r.table.back().value) % r.modulus;
  }
  r.holds = r.sum == 0;
  return r;
}

/// Accumulated Witt vector of a degree-0 class.
template <class T>
WittVector<T> degree_zero_vector(const HClass<T>& c) {
  if (c.degree() != 0) throw UnsupportedDegree("expected a class of degree 0");
  auto it = c.terms().find({});
  return it == c.terms().end() ? WittVector<T>::zero(c.like(), c.level()) : it->second;
}

/// Z/p^i value of a degree-0 class over F_q: its Witt trace.
inline uint64_t h1_value(const HClass<gf::Elem>& c) { return witt_trace_int(degree_zero_vector(c)); }

inline bool h_zero_test(const HClass<gf::Elem>& c) {
  if (c.degree() >= 1) return true;
  return h1_value(c) == 0;
}

inline bool h_zero_test(const HClass<RatFunc>& c) {
  if (c.like().field().nvars() != 1) throw UnsupportedField("zero test needs F_q, F_q(t) or F_q((t))");
  if (c.degree() == 0) {
    const auto w = degree_zero_vector(c);
    return w.is_zero() || witt_as_solve(w).has_value();
  }
  if (c.degree() > 1) throw UnsupportedDegree("zero test over F_q(t) supports n <= 1");
  for (const auto& pl : places_of(c))
    if (local_invariant(c, pl).value != 0) return false;
  return true;
}

inline bool h_zero_test(const HClass<LaurentElem>& c) {
  if (c.degree() == 0) {
    const auto w = degree_zero_vector(c);
    return w.is_zero() || witt_as_solve(w).has_value();
  }
  if (c.degree() > 1) throw UnsupportedDegree("zero test over F_q((t)) supports n <= 1");
  if (c.is_zero()) return true;
  return local_invariant(c, laurent_place(gf::Field(c.like().zero_elem().config()))).value == 0;
}

/// Equality in the direct limit over levels.
template <class T>
bool colimit_equal(const HClass<T>& a, const HClass<T>& b) {
  const uint32_t L = std::max(a.level(), b.level());
  return h_zero_test(level_shift(a, L) - level_shift(b, L));
}

/// Removes poles of order divisible by p coordinate by coordinate with
/// F - id of Teichmueller lifts; WildClass if a pole of order prime to p remains.
inline WittVector<LaurentElem> integral_standard_form(WittVector<LaurentElem> w) {
  const uint32_t p = w.characteristic();
  for (size_t level = 0; level < w.length(); ++level) {
    while (true) {
      const LaurentElem& x = w.coord(level);
      if (x.is_zero() || x.valuation() >= 0) break;
      const long k = x.valuation();
      if ((-k) % static_cast<long>(p) != 0) throw WildClass(w.str());
      const LaurentElem y = Laurent<gf::Elem>::monomial(x.lead().pth_root(), k / static_cast<long>(p), x.precision());
      std::vector<LaurentElem> v(w.length(), x.zero_like());
      v[level] = y;
      w = w - WittVector<LaurentElem>(v).wp();
    }
  }
  return w;
}

struct Theorem3Parts {
  HClass<gf::Elem> specialization;
  std::optional<HClass<gf::Elem>> residue;
};

/// Components in H^{n+1}(k) and H^n(k) of a class over k((t)), n <= 1. A term
/// [w | t^j u) with w integral contributes j [w(0)) to the residue and
/// [w(0) | u(0)) to the specialization. Degree 0 classes have no residue component.
inline Theorem3Parts theorem3_decompose(const HClass<LaurentElem>& c) {
  if (c.degree() > 1) throw UnsupportedDegree("decomposition supports n <= 1");
  const gf::Field k(c.like().zero_elem().config());
  const uint32_t m = c.level();
  Theorem3Parts out{HClass<gf::Elem>::zero(k.zero(), m, c.degree()), std::nullopt};
  if (c.degree() == 1) out.residue = HClass<gf::Elem>::zero(k.zero(), m, 0);
  for (const auto& [e, w] : c.terms()) {
    const auto wi = integral_standard_form(w);
    std::vector<gf::Elem> w0;
    for (const auto& x : wi.coords()) w0.push_back(x.coeff(0));
    const WittVector<gf::Elem> wbar(w0);
    if (c.degree() == 0) {
      out.specialization = out.specialization + HClass<gf::Elem>::build(wbar, {});
      continue;
    }
    const LaurentElem& b = e.at(0);
    out.residue = *out.residue + HClass<gf::Elem>::build(wbar.times(b.valuation()), {});
    out.specialization = out.specialization + HClass<gf::Elem>::build(wbar, {b.lead()});
  }
  return out;
}

}  // namespace katoforge
