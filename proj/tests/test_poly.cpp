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

#include <gtest/gtest.h>

#include "support.hpp"

using namespace katoforge;

namespace {

TEST(UPoly, DivisionIdentity) {
  kft::Rng rng(1);
  for (auto [p, e] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    const auto k = gf::make(p, e);
    for (int r = 0; r < 100; ++r) {
      const UPoly a = rng.upoly(k, 8), b = rng.upoly(k, 4);
      if (b.is_zero()) continue;
      auto [q, rem] = divmod(a, b);
      EXPECT_EQ(q * b + rem, a);
      EXPECT_TRUE(rem.is_zero() || rem.degree() < b.degree());
    }
  }
}

TEST(UPoly, BezoutIdentity) {
  kft::Rng rng(2);
  const auto k = gf::make(3, 2);
  for (int r = 0; r < 100; ++r) {
    const UPoly a = rng.upoly(k, 6), b = rng.upoly(k, 6);
    auto [g, s, t] = xgcd(a, b);
    EXPECT_EQ(s * a + t * b, g);
    if (!g.is_zero()) {
      EXPECT_TRUE((a % g).is_zero());
      EXPECT_TRUE((b % g).is_zero());
      EXPECT_EQ(g, gcd(a, b));
    }
  }
}

TEST(UPoly, FactorizationReconstructsAndIsIrreducible) {
  kft::Rng rng(3);
  for (auto [p, e] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {3, 1}, {2, 2}}) {
    const auto k = gf::make(p, e);
    for (int r = 0; r < 60; ++r) {
      UPoly f = rng.upoly(k, 7) * rng.upoly(k, 3);
      if (f.degree() < 1) continue;
      UPoly prod = UPoly::constant(f.lead());
      for (const auto& [g, m] : factor(f)) {
        EXPECT_TRUE(kft::brute_irreducible(g)) << g.str();
        EXPECT_TRUE(g.lead().is_one());
        for (unsigned j = 0; j < m; ++j) prod = prod * g;
      }
      EXPECT_EQ(prod, f) << f.str();
    }
  }
}

TEST(UPoly, InseparableFactorization) {
  const auto k = gf::make(2, 1);
  const UPoly t = UPoly::x(k), one = UPoly::constant(k.one());
  const UPoly f = (t + one) * (t + one) * (t * t + t + one) * (t * t + t + one);  // (t^3+1)^2 over F_2
  const auto fac = factor(f);
  ASSERT_EQ(fac.size(), 2u);
  EXPECT_EQ(fac[0].first, t + one);
  EXPECT_EQ(fac[0].second, 2u);
  EXPECT_EQ(fac[1].first, t * t + t + one);
  EXPECT_EQ(fac[1].second, 2u);
}

TEST(UPoly, RootsMatchEvaluation) {
  kft::Rng rng(4);
  const auto k = gf::make(3, 2);
  for (int r = 0; r < 40; ++r) {
    const UPoly f = rng.upoly(k, 6);
    if (f.degree() < 1) continue;
    std::vector<gf::Elem> expected;
    for (const auto& x : k.elements())
      if (f.eval(x).is_zero()) expected.push_back(x);
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(roots(f), expected);
  }
}

TEST(UPoly, IrreducibleCountMatchesNecklaceFormula) {
  // Number of monic irreducibles of degree 4 over F_2 is (2^4 - 2^2)/4 = 3.
  const auto k = gf::make(2, 1);
  int count = 0;
  for (const auto& f : kft::monic_polys(k, 4)) count += is_irreducible(f) ? 1 : 0;
  EXPECT_EQ(count, 3);
  EXPECT_THROW(factor(UPoly(k)), ZeroPolynomial);
}

TEST(MPoly, GcdRecoversCommonFactor) {
  kft::Rng rng(5);
  const auto k = gf::make(3, 1);
  for (int r = 0; r < 40; ++r) {
    const MPoly g = rng.mpoly(k, 2, 2, 2), a = rng.mpoly(k, 2, 3, 2), b = rng.mpoly(k, 2, 3, 2);
    if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
    const MPoly h = gcd(a * g, b * g);
    EXPECT_TRUE(divexact(a * g, h) * h == a * g);
    EXPECT_TRUE(divexact(b * g, h) * h == b * g);
    EXPECT_TRUE(divexact(h, gcd(h, g.monic())) * gcd(h, g.monic()) == h);
    EXPECT_EQ(gcd(h, g.monic()), g.monic());
  }
}

TEST(RatFunc, FieldAxiomsRandom) {
  kft::Rng rng(6);
  for (auto [p, e] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {3, 1}, {2, 2}}) {
    const FunctionField F(gf::make(p, e), {"x", "y"});
    for (int r = 0; r < 40; ++r) {
      const RatFunc a = rng.ratfunc(F), b = rng.ratfunc(F), c = rng.nonzero(F);
      EXPECT_EQ((a + b) * c, a * c + b * c);
      EXPECT_EQ(a / c * c, a);
      EXPECT_EQ((a + b).frobenius(), a.frobenius() + b.frobenius());
      EXPECT_TRUE(c.den().lead().coeff.is_one());
    }
  }
}

TEST(RatFunc, Printing) {
  const FunctionField F(gf::make(2, 1), {"x", "y"});
  const RatFunc x = RatFunc::variable(F, 0), y = RatFunc::variable(F, 1);
  EXPECT_EQ((x.one_like() / (x * y)).str(), "1/(x*y)");
  EXPECT_EQ(((x + x.one_like()) / y).str(), "(x+1)/y");
  EXPECT_EQ(x.zero_like().str(), "0");
}

TEST(RatFunc, PPowerDecompositionReconstructs) {
  kft::Rng rng(7);
  for (uint32_t p : {2u, 3u}) {
    const FunctionField F(gf::make(p, 1), {"x", "y"});
    for (int r = 0; r < 30; ++r) {
      const RatFunc f = rng.ratfunc(F);
      const auto parts = p_power_decompose(f);
      EXPECT_EQ(parts.size(), static_cast<size_t>(p * p));
      RatFunc acc = f.zero_like();
      for (const auto& [e, g] : parts)
        acc += g.pow(p) * RatFunc::variable(F, 0).pow(e[0]) * RatFunc::variable(F, 1).pow(e[1]);
      EXPECT_EQ(acc, f);
    }
  }
}

TEST(RatFunc, ArtinSchreierSolve) {
  kft::Rng rng(8);
  for (auto [p, e] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {3, 1}, {2, 2}}) {
    const FunctionField F(gf::make(p, e), {"t"});
    for (int r = 0; r < 30; ++r) {
      const RatFunc x = rng.univariate(F, 3);
      const RatFunc a = x.pow(p) - x;
      const auto sol = as_solve(a);
      ASSERT_TRUE(sol) << a.str();
      EXPECT_EQ(sol->pow(p) - *sol, a);
    }
    // 1/t has a simple pole, never of the form x^p - x.
    EXPECT_FALSE(as_solve(RatFunc::variable(F, 0).inv()));
  }
  const FunctionField G(gf::make(2, 1), {"x", "y"});
  EXPECT_THROW(as_solve(RatFunc::variable(G, 0)), UnsupportedField);
}

}  // namespace
