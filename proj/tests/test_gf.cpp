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

std::vector<std::pair<uint32_t, uint32_t>> small_fields() { return {{2, 1}, {3, 1}, {5, 1}, {2, 2}, {2, 3}, {3, 2}, {2, 4}}; }

TEST(FiniteField, FieldAxiomsExhaustive) {
  for (auto [p, e] : small_fields()) {
    const auto k = gf::make(p, e);
    const auto all = k.elements();
    ASSERT_EQ(all.size(), k.size());
    for (const auto& a : all) {
      EXPECT_EQ(a + (-a), k.zero());
      if (!a.is_zero()) {
        EXPECT_EQ(a * a.inv(), k.one());
        EXPECT_EQ(a.pow(static_cast<long long>(k.size() - 1)), k.one());
      }
      for (const auto& b : all) {
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b).pow(p), a.pow(p) + b.pow(p));
      }
    }
  }
}

TEST(FiniteField, DistributivityRandom) {
  kft::Rng rng(11);
  for (auto [p, e] : small_fields()) {
    const auto k = gf::make(p, e);
    for (int r = 0; r < 200; ++r) {
      auto a = rng.elem(k), b = rng.elem(k), c = rng.elem(k);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a * b) * c, a * (b * c));
    }
  }
}

// The canonical modulus is the first irreducible in the order that reads
// (c_0, ..., c_{e-1}) as a base-p number with c_0 most significant.
TEST(FiniteField, CanonicalModulusMatchesBruteForce) {
  for (auto [p, e] : small_fields()) {
    if (e == 1) continue;
    const auto fp = gf::make(p, 1);
    std::optional<std::vector<uint32_t>> expected;
    uint64_t q = 1;
    for (uint32_t j = 0; j < e; ++j) q *= p;
    for (uint64_t idx = 0; idx < q && !expected; ++idx) {
      std::vector<uint32_t> c(e + 1, 0);
      c[e] = 1;
      uint64_t x = idx;
      for (uint32_t j = e; j-- > 0;) {
        c[j] = static_cast<uint32_t>(x % p);
        x /= p;
      }
      std::vector<gf::Elem> cs;
      for (auto v : c) cs.push_back(fp.from_int(v));
      if (kft::brute_irreducible(UPoly(fp, cs))) expected = c;
    }
    ASSERT_TRUE(expected);
    EXPECT_EQ(gf::make(p, e).modulus(), *expected) << p << "^" << e;
  }
  EXPECT_EQ(gf::make(2, 2).modulus_str(), gf::make(2, 2).modulus_str());
}

TEST(FiniteField, GeneratorSatisfiesModulus) {
  for (auto [p, e] : small_fields()) {
    const auto k = gf::make(p, e);
    const auto z = e == 1 ? k.zero() : k.gen();
    gf::Elem acc = k.zero();
    for (uint32_t j = 0; j <= e; ++j) acc += k.from_int(k.modulus()[j]) * z.pow(j);
    EXPECT_TRUE(acc.is_zero());
  }
}

TEST(FiniteField, AsSolveMatchesExhaustiveSearch) {
  for (auto [p, e] : small_fields()) {
    const auto k = gf::make(p, e);
    const auto all = k.elements();
    for (const auto& c : all) {
      std::optional<gf::Elem> least;
      for (const auto& x : all)
        if (x.pow(p) - x == c && (!least || x.coeffs() < least->coeffs())) least = x;
      const auto got = gf::as_solve(c);
      ASSERT_EQ(got.has_value(), least.has_value());
      if (got) EXPECT_EQ(*got, *least);
      EXPECT_EQ(got.has_value(), c.trace().is_zero());
    }
  }
}

TEST(FiniteField, TraceIsSumOfConjugates) {
  for (auto [p, e] : small_fields()) {
    const auto k = gf::make(p, e);
    for (const auto& a : k.elements()) {
      gf::Elem acc = k.zero(), x = a;
      for (uint32_t j = 0; j < e; ++j, x = x.frobenius()) acc += x;
      EXPECT_EQ(a.trace(), acc);
      EXPECT_EQ(a.pth_root().pow(p), a);
    }
  }
}

TEST(FiniteField, PrintsPolynomialsInZ) {
  const auto k = gf::make(2, 2);
  EXPECT_EQ((k.gen() + k.one()).str(), "z+1");
  EXPECT_EQ(k.zero().str(), "0");
  EXPECT_EQ((gf::make(3, 2).gen() * gf::make(3, 2).from_int(2)).str(), "2*z");
}

TEST(FiniteField, Errors) {
  EXPECT_THROW(gf::make(4, 1), NonPrime);
  EXPECT_THROW(gf::make(2, 2).zero().inv(), DivisionByZero);
  EXPECT_THROW(gf::make(2, 2).one() + gf::make(2, 3).one(), ConfigMismatch);
  EXPECT_THROW(gf::make(2, 80), ResourceLimit);
}

}  // namespace
