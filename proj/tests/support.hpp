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

// Random generators shared by the test suites.

#pragma once

#include <random>
#include <vector>

#include "katoforge/kato.hpp"

namespace kft {

using namespace katoforge;

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(uint64_t seed) : gen(seed) {}

  uint64_t below(uint64_t n) { return gen() % n; }

  gf::Elem elem(const gf::Field& k) { return k.element(below(k.size())); }
  gf::Elem unit(const gf::Field& k) {
    while (true) {
      auto a = elem(k);
      if (!a.is_zero()) return a;
    }
  }

  UPoly upoly(const gf::Field& k, int max_deg) {
    std::vector<gf::Elem> cs;
    const int deg = static_cast<int>(below(static_cast<uint64_t>(max_deg) + 1));
    for (int j = 0; j <= deg; ++j) cs.push_back(elem(k));
    return UPoly(k, cs);
  }

  MPoly mpoly(const gf::Field& k, size_t nvars, int terms, uint32_t max_exp) {
    MPoly acc(k, nvars);
    for (int j = 0; j < terms; ++j) {
      Exponents e(nvars);
      for (auto& x : e) x = static_cast<uint32_t>(below(max_exp + 1));
      acc = acc + MPoly::monomial(k, e, elem(k));
    }
    return acc;
  }

  RatFunc ratfunc(const FunctionField& F, int terms = 3, uint32_t max_exp = 3) {
    const auto k = F.base();
    MPoly den = mpoly(k, F.nvars(), terms, max_exp);
    while (den.is_zero()) den = mpoly(k, F.nvars(), terms, max_exp);
    return RatFunc(F, mpoly(k, F.nvars(), terms, max_exp), den);
  }

  RatFunc nonzero(const FunctionField& F, int terms = 3, uint32_t max_exp = 3) {
    while (true) {
      auto r = ratfunc(F, terms, max_exp);
      if (!r.is_zero()) return r;
    }
  }

  /// Univariate rational function with numerator and denominator of bounded degree.
  RatFunc univariate(const FunctionField& F, int max_deg) {
    UPoly den = upoly(F.base(), max_deg);
    while (den.is_zero()) den = upoly(F.base(), max_deg);
    return RatFunc::from_upoly(F, 0, upoly(F.base(), max_deg)) / RatFunc::from_upoly(F, 0, den);
  }
};

/// Monic polynomials of degree d over k, in a fixed order.
inline std::vector<UPoly> monic_polys(const gf::Field& k, int d) {
  std::vector<UPoly> out;
  uint64_t count = 1;
  for (int j = 0; j < d; ++j) count *= k.size();
  for (uint64_t idx = 0; idx < count; ++idx) {
    std::vector<gf::Elem> cs;
    uint64_t x = idx;
    for (int j = 0; j < d; ++j) {
      cs.push_back(k.element(x % k.size()));
      x /= k.size();
    }
    cs.push_back(k.one());
    out.emplace_back(k, cs);
  }
  return out;
}

/// Trial division by every monic polynomial of degree <= deg/2.
inline bool brute_irreducible(const UPoly& f) {
  if (f.degree() < 1) return false;
  for (int d = 1; 2 * d <= f.degree(); ++d)
    for (const auto& g : monic_polys(f.field(), d))
      if ((f % g).is_zero()) return false;
  return true;
}

}  // namespace kft
