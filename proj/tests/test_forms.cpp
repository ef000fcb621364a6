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

struct Plane {
  FunctionField F;
  RatFunc x, y;
  explicit Plane(uint32_t p, uint32_t e = 1) : F(gf::make(p, e), {"x", "y"}), x(RatFunc::variable(F, 0)), y(RatFunc::variable(F, 1)) {}
};

DiffForm random_one_form(kft::Rng& rng, const FunctionField& F) {
  return DiffForm::dx(F, 0).scaled(rng.ratfunc(F, 2, 3)) + DiffForm::dx(F, 1).scaled(rng.ratfunc(F, 2, 3));
}

TEST(Forms, WedgeIsAlternating) {
  const Plane s(3);
  const DiffForm dx = DiffForm::dx(s.F, 0), dy = DiffForm::dx(s.F, 1);
  EXPECT_EQ(wedge(dx, dy), -wedge(dy, dx));
  EXPECT_TRUE(wedge(dx, dx).is_zero());
  EXPECT_THROW(wedge(wedge(dx, dy), dx), DegreeOverflow);
  EXPECT_EQ(wedge(dx, dy).str(), "dx^dy");
  EXPECT_EQ(wedge(dy, dx).str(), "2 dx^dy");
}

TEST(Forms, LeibnizAndSquareZero) {
  kft::Rng rng(41);
  for (uint32_t p : {2u, 3u}) {
    const Plane s(p);
    for (int r = 0; r < 40; ++r) {
      const RatFunc f = rng.ratfunc(s.F), g = rng.ratfunc(s.F);
      EXPECT_EQ(d(f * g), d(g).scaled(f) + d(f).scaled(g));
      EXPECT_TRUE(d(f).d().is_zero());
      EXPECT_TRUE(d(f.pow(p)).is_zero());
      const DiffForm w = random_one_form(rng, s.F);
      EXPECT_TRUE(w.d().d().is_zero());
    }
  }
}

TEST(Forms, CartierOnMonomials) {
  const Plane s(3);
  const DiffForm dx = DiffForm::dx(s.F, 0);
  // C(x^2 dx) = dx, C(x^5 dx) = x dx, C(x dx) = 0 in characteristic 3.
  EXPECT_EQ(cartier(dx.scaled(s.x.pow(2))), dx);
  EXPECT_EQ(cartier(dx.scaled(s.x.pow(5))), dx.scaled(s.x));
  EXPECT_TRUE(cartier(dx.scaled(s.x)).is_zero());
  EXPECT_EQ(cartier(dlog(s.x)), dlog(s.x));
  EXPECT_THROW(cartier(DiffForm::dx(s.F, 1).scaled(s.x)), NotClosed);
}

TEST(Forms, CartierInvertsInverse) {
  kft::Rng rng(42);
  for (auto [p, e] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {3, 1}, {2, 2}}) {
    const Plane s(p, e);
    for (int r = 0; r < 30; ++r) {
      const DiffForm w = random_one_form(rng, s.F);
      EXPECT_EQ(cartier(cartier_inv(w)), w);
      const RatFunc g = rng.ratfunc(s.F);
      EXPECT_TRUE(cartier(d(g)).is_zero());
      EXPECT_TRUE(is_exact(d(g)));
      // C is p^{-1}-linear: C(h^p w) = h C(w).
      const DiffForm c = cartier_inv(w);
      EXPECT_EQ(cartier(c.scaled(g.frobenius())), w.scaled(g));
    }
  }
}

TEST(Forms, LogarithmicForms) {
  kft::Rng rng(43);
  for (uint32_t p : {2u, 3u}) {
    const Plane s(p);
    for (int r = 0; r < 30; ++r) {
      const RatFunc f = rng.nonzero(s.F), g = rng.nonzero(s.F);
      EXPECT_TRUE(nu_test(dlog(f)));
      EXPECT_TRUE(nu_test(wedge(dlog(f), dlog(g))));
      EXPECT_TRUE(nu_test(dlog(f) + dlog(g).scaled(s.x.from_int(p - 1))));
    }
    // dx = x dlog x is closed but C(dx) = 0.
    EXPECT_FALSE(nu_test(DiffForm::dx(s.F, 0)));
    EXPECT_THROW(dlog(s.x.zero_like()), DlogOfZero);
  }
}

TEST(Forms, Printing) {
  const FunctionField F(gf::make(2, 1), {"t"});
  const RatFunc t = RatFunc::variable(F, 0);
  EXPECT_EQ(dlog(t).str(), "(1/t) dt");
  EXPECT_EQ(DiffForm::zero(F, 1).str(), "0");
  EXPECT_EQ(DiffForm::function(t).str(), "t");
}

}  // namespace
