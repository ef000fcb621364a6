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

MilnorElement sym(const FunctionField& F, std::vector<RatFunc> e, long long c = 1) { return MilnorElement::symbol(F, std::move(e), c); }

TEST(Milnor, StoredSymbolsAndPrinting) {
  const FunctionField F(gf::make(2, 1), {"t"});
  const RatFunc t = RatFunc::variable(F, 0), one = t.one_like();
  const auto a = sym(F, {t, t + one});
  EXPECT_EQ((a + a).str(), "2{t, t+1}");
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_THROW(sym(F, {t, t.zero_like()}), DlogOfZero);
  EXPECT_THROW(a + sym(F, {t}), DegreeMismatch);
}

TEST(Milnor, DifferentialSymbolKillsRelations) {
  kft::Rng rng(51);
  for (uint32_t p : {2u, 3u}) {
    const FunctionField F(gf::make(p, 1), {"x", "y"});
    for (int r = 0; r < 40; ++r) {
      const RatFunc a = rng.nonzero(F), b = rng.nonzero(F), c = rng.nonzero(F);
      if (!(a.one_like() - a).is_zero()) {
        EXPECT_TRUE(d_symbol(sym(F, {a, a.one_like() - a})).is_zero());
      }
      EXPECT_TRUE(d_symbol(sym(F, {a * b, c}) - sym(F, {a, c}) - sym(F, {b, c})).is_zero());
      EXPECT_TRUE(d_symbol(sym(F, {a, b}) + sym(F, {b, a})).is_zero());
      EXPECT_TRUE(d_symbol(sym(F, {a.pow(p), b})).is_zero());
      const auto s = sym(F, {a, b});
      EXPECT_EQ(d_symbol(symbol_expand(s)), d_symbol(s));
      EXPECT_TRUE(nu_test(d_symbol(s)));
    }
  }
}

TEST(Milnor, SymbolOrderDependsOnCharacteristic) {
  for (uint32_t p : {2u, 3u}) {
    const FunctionField F(gf::make(p, 1), {"x", "y"});
    const RatFunc x = RatFunc::variable(F, 0), y = RatFunc::variable(F, 1);
    EXPECT_EQ(kn_equal(sym(F, {x, y}), sym(F, {y, x})), p == 2);
    EXPECT_FALSE(kn_equal(sym(F, {x, y}), MilnorElement::zero(F, 2)));
  }
}

TEST(Milnor, ExpansionFactorsEntries) {
  const FunctionField F(gf::make(2, 1), {"t"});
  const RatFunc t = RatFunc::variable(F, 0), one = t.one_like();
  // {t^2 + t} = {t} + {t+1}.
  EXPECT_EQ(symbol_expand(sym(F, {t * t + t})).str(), "{t} + {t+1}");
  EXPECT_TRUE(symbol_expand(sym(F, {t, one - t})).is_zero());
  EXPECT_TRUE(d_symbol(sym(F, {t, t + one})).is_zero());  // n exceeds the number of variables
}

TEST(ASExtension, NormsAndConjugates) {
  kft::Rng rng(52);
  for (uint32_t p : {2u, 3u}) {
    const ASExtension L(gf::make(p, 1));
    const RatFunc u = RatFunc::variable(L.ext_field(), 0);
    const RatFunc t = RatFunc::variable(L.base_field(), 0);
    EXPECT_EQ(L.norm(u), t);
    EXPECT_EQ(L.embed(t), u.pow(p) - u);
    EXPECT_EQ(L.sigma(u), u + u.one_like());
    for (int r = 0; r < 20; ++r) {
      const RatFunc a = rng.univariate(L.ext_field(), 3), b = rng.univariate(L.ext_field(), 3);
      if (a.is_zero() || b.is_zero()) continue;
      EXPECT_EQ(L.sigma(a, p), a);
      EXPECT_EQ(L.norm(a * b), L.norm(a) * L.norm(b));
      const RatFunc f = rng.univariate(L.base_field(), 3);
      EXPECT_EQ(L.descend(L.embed(f)), f);
      if (!f.is_zero()) {
        EXPECT_EQ(L.norm(L.embed(f)), f.pow(p));
      }
    }
  }
}

TEST(ASExtension, TheoremSevenComposites) {
  kft::Rng rng(53);
  for (uint32_t p : {2u, 3u}) {
    const ASExtension L(gf::make(p, 1));
    const FunctionField& E = L.ext_field();
    const FunctionField& F = L.base_field();
    for (int r = 0; r < 15; ++r) {
      const RatFunc l = rng.univariate(E, 3);
      const RatFunc f = rng.univariate(F, 3);
      if (l.is_zero() || f.is_zero()) continue;
      const auto x = sym(E, {l, L.embed(f)});
      EXPECT_TRUE(kn_equal(L.norm_proj(L.one_minus_sigma(x)), MilnorElement::zero(F, 2)));
      const auto y = sym(F, {f});
      EXPECT_TRUE(kn_equal(L.one_minus_sigma(L.restrict(y)), MilnorElement::zero(E, 1)));
    }
    const RatFunc u = RatFunc::variable(E, 0);
    EXPECT_THROW(L.norm_proj(sym(E, {u, u + u.one_like()})), NormShapeUnsupported);
  }
}

}  // namespace
