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

// Acceptance driver: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <unistd.h>

#include "katoforge/cli/session.hpp"
#include "support.hpp"

using namespace katoforge;

namespace {

using W = WittVector<gf::Elem>;
using HR = HClass<RatFunc>;
using HL = HClass<LaurentElem>;
using WR = WittVector<RatFunc>;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

uint64_t ipow(uint64_t p, uint32_t k) {
  uint64_t r = 1;
  while (k--) r *= p;
  return r;
}

// ---- 1. Witt ring ----------------------------------------------------------

// Independent sparse integer polynomial product, used for the ghost identities.
using Poly = std::map<std::vector<uint32_t>, mpz_class>;

Poly pmul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      auto e = ea;
      for (size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
      out[e] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Poly ppow(const Poly& a, uint64_t n, size_t nv) {
  Poly acc{{std::vector<uint32_t>(nv, 0), mpz_class(1)}};
  for (uint64_t j = 0; j < n; ++j) acc = pmul(acc, a);
  return acc;
}

Poly padd(Poly a, const Poly& b, const mpz_class& s = 1) {
  for (const auto& [e, c] : b) a[e] += s * c;
  std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
  return a;
}

Poly var(size_t nv, size_t j) {
  std::vector<uint32_t> e(nv, 0);
  e[j] = 1;
  return {{e, mpz_class(1)}};
}

// w_n(x) = sum_j p^j x_j^(p^(n-j)) for polynomial coordinates x.
Poly ghost(uint32_t p, const std::vector<Poly>& x, uint32_t n, size_t nv) {
  Poly acc;
  mpz_class pj = 1;
  for (uint32_t j = 0; j <= n; ++j) {
    acc = padd(acc, ppow(x[j], ipow(p, n - j), nv), pj);
    pj *= p;
  }
  return acc;
}

void criterion1() {
  // Exact polynomial identities w_n(S) = w_n(a) + w_n(b), w_n(P) = w_n(a) w_n(b).
  for (uint32_t p : {2u, 3u})
    for (uint32_t i = 1; i <= 3; ++i) {
      const auto ws = WittStructure::compute(p, i);
      const size_t nv = 2 * i;
      std::vector<Poly> a, b, s, m;
      for (uint32_t j = 0; j < i; ++j) {
        a.push_back(var(nv, j));
        b.push_back(var(nv, i + j));
        s.emplace_back(ws->sums()[j].begin(), ws->sums()[j].end());
        m.emplace_back(ws->products()[j].begin(), ws->products()[j].end());
      }
      for (uint32_t n = 0; n < i; ++n) {
        require(ghost(p, s, n, nv) == padd(ghost(p, a, n, nv), ghost(p, b, n, nv)),
                "sum ghost identity p=" + std::to_string(p) + " n=" + std::to_string(n));
        require(ghost(p, m, n, nv) == pmul(ghost(p, a, n, nv), ghost(p, b, n, nv)),
                "product ghost identity p=" + std::to_string(p) + " n=" + std::to_string(n));
      }
    }
  kft::Rng rng(1001);
  for (uint32_t p : {2u, 3u})
    for (uint32_t e : {1u, 2u}) {
      const auto k = gf::make(p, e);
      for (uint32_t i = 1; i <= 3; ++i) {
        auto rand = [&] {
          std::vector<gf::Elem> c;
          for (uint32_t j = 0; j < i; ++j) c.push_back(rng.elem(k));
          return W(c);
        };
        for (int r = 0; r < 500; ++r) {
          const W x = rand(), y = rand(), z = rand();
          require((x + y) + z == x + (y + z), "additive associativity " + x.str());
          require((x * y) * z == x * (y * z), "multiplicative associativity " + x.str());
          require(x * (y + z) == x * y + x * z, "distributivity " + x.str());
          require(x.verschiebung().frobenius() == x.times(p), "FV = p at " + x.str());
        }
      }
    }
  for (uint32_t p : {2u, 3u})
    for (uint32_t i = 1; i <= 3; ++i) {
      const auto fp = gf::make(p, 1);
      const W one = W::teichmuller(fp.one(), i);
      W acc = one;
      uint64_t order = 1;
      while (!acc.is_zero()) {
        acc = acc + one;
        ++order;
      }
      require(order == ipow(p, i), "order of teichmuller(1) in W_" + std::to_string(i) + "(F_" + std::to_string(p) + ")");
    }
}

// ---- 2. Artin-Schreier-Witt ---------------------------------------------------

std::vector<W> all_vectors(const gf::Field& k, uint32_t i) {
  const auto elems = k.elements();
  std::vector<W> out;
  std::vector<size_t> idx(i, 0);
  while (true) {
    std::vector<gf::Elem> c;
    for (auto j : idx) c.push_back(elems[j]);
    out.emplace_back(c);
    size_t j = 0;
    while (j < i && ++idx[j] == elems.size()) idx[j++] = 0;
    if (j == i) break;
  }
  return out;
}

void criterion2() {
  for (auto [p, e] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}}) {
    const auto k = gf::make(p, e);
    for (uint32_t i = 1; ipow(k.size(), i) <= 256 && ipow(p, i - 1) <= 27; ++i) {
      const auto vecs = all_vectors(k, i);
      std::set<W> image;
      for (const auto& x : vecs) image.insert(x.wp());
      const std::string where = "W_" + std::to_string(i) + "(F_" + std::to_string(k.size()) + ")";
      require(vecs.size() % image.size() == 0 && vecs.size() / image.size() == ipow(p, i), "class count in " + where);
      for (const auto& v : vecs) {
        const auto sol = witt_as_solve(v);
        require(sol.has_value() == (image.count(v) == 1), "solvability of " + v.str() + " in " + where);
        require(!sol || sol->wp() == v, "solution of " + v.str());
        require(sol.has_value() == (witt_trace_int(v) == 0), "trace kernel at " + v.str());
      }
    }
  }
}

// ---- 3. Cartier ----------------------------------------------------------------

bool ker_phi(const DiffForm& w) { return is_exact(cartier_inv(w) - w); }
bool cartier_fixed(const DiffForm& w) { return w.is_closed() && cartier(w) == w; }

void criterion3() {
  kft::Rng rng(3003);
  for (uint32_t q : {2u, 3u, 4u}) {
    const auto k = gf::make(q == 4 ? 2 : q, q == 4 ? 2 : 1);
    const uint32_t p = k.p();
    for (const std::vector<std::string>& vars : {std::vector<std::string>{"t"}, std::vector<std::string>{"x", "y"}}) {
      const FunctionField F(k, vars);
      const size_t nv = vars.size();
      auto small = [&] { return nv == 1 ? rng.univariate(F, 3) : rng.ratfunc(F, 2, 3); };
      auto nonzero = [&] {
        while (true) {
          auto r = small();
          if (!r.is_zero()) return r;
        }
      };
      auto one_form = [&] {
        DiffForm w = DiffForm::dx(F, 0).scaled(small());
        if (nv == 2) w = w + DiffForm::dx(F, 1).scaled(small());
        return w;
      };
      int logarithmic = 0;
      for (int r = 0; r < 300; ++r) {
        DiffForm w = DiffForm::zero(F, 1);
        bool expect_log = false;
        switch (r % 4) {
          case 0:
            w = one_form();
            break;
          case 1:  // F_p-combination of dlogs
            w = dlog(nonzero()) + dlog(nonzero()).scaled(RatFunc::constant(F, k.from_int(1 + rng.below(p - 1))));
            expect_log = true;
            break;
          case 2:
            w = nv == 2 ? wedge(one_form(), one_form()) : one_form();
            break;
          default:
            w = nv == 2 ? wedge(dlog(nonzero()), dlog(nonzero())) : dlog(nonzero()).scaled(small());
            expect_log = nv == 2;
        }
        const std::string ctx = w.str() + " over " + F.str();
        require(cartier(cartier_inv(w)) == w, "C C^-1 = id at " + ctx);
        const RatFunc g = small();
        require(cartier(d(g)).is_zero(), "C kills d(" + g.str() + ")");
        require(d(g).d().is_zero(), "dd = 0 at " + g.str());
        if (w.degree() == 1) {
          require(w.d().d().is_zero(), "dd = 0 at " + ctx);
          require(cartier(w.d()).is_zero(), "C kills d(" + ctx + ")");
        }
        const bool a = ker_phi(w), b = cartier_fixed(w);
        require(a == b, "nu characterizations disagree at " + ctx);
        if (expect_log) require(a, "logarithmic form not detected: " + ctx);
        logarithmic += a;
      }
      require(logarithmic >= 75, "too few logarithmic samples over " + F.str());
    }
  }
}

// ---- 4. Differential symbol ------------------------------------------------------

MilnorElement sym(const FunctionField& F, std::vector<RatFunc> e) { return MilnorElement::symbol(F, std::move(e), 1); }

void criterion4() {
  kft::Rng rng(4004);
  int relations = 0;
  for (uint32_t p : {2u, 3u}) {
    const FunctionField F(gf::make(p, 1), {"x", "y"});
    while (relations < (p == 2 ? 100 : 200)) {
      const RatFunc a = rng.nonzero(F), b = rng.nonzero(F), c = rng.nonzero(F);
      const RatFunc one = a.one_like();
      switch (relations % 4) {
        case 0:
          if ((one - a).is_zero()) continue;
          require(d_symbol(sym(F, {a, one - a})).is_zero(), "Steinberg {a, 1-a} at " + a.str());
          break;
        case 1:
          require(d_symbol(sym(F, {a * b, c}) - sym(F, {a, c}) - sym(F, {b, c})).is_zero(), "left bilinearity");
          break;
        case 2:
          require(d_symbol(sym(F, {c, a * b}) - sym(F, {c, a}) - sym(F, {c, b})).is_zero(), "right bilinearity");
          break;
        default:
          require(d_symbol(sym(F, {a, a.pow(p) * b}) - sym(F, {a, b})).is_zero(), "p-th powers vanish");
      }
      ++relations;
      const auto img = d_symbol(sym(F, {a, b}));
      require(nu_test(img), "image fails nu_test: " + img.str());
      require(nu_test(d_symbol(sym(F, {c}))), "degree 1 image fails nu_test");
    }
  }
  for (uint32_t p : {2u, 3u}) {
    const FunctionField F(gf::make(p, 1), {"x", "y"});
    const RatFunc x = RatFunc::variable(F, 0), y = RatFunc::variable(F, 1);
    require(kn_equal(sym(F, {x, y}), sym(F, {y, x})) == (p == 2), "kn_equal {x,y} vs {y,x} in char " + std::to_string(p));
  }
}

// ---- 5. Reciprocity ------------------------------------------------------------------

uint64_t residue_trace(const RatFunc& w, const RatFunc& b, const Place& pl) {
  const DiffForm form = dlog(b).scaled(w);
  return trace_to_base(residue_at(form.coeff(1), pl), pl).trace().coeff(0);
}

void criterion5() {
  kft::Rng rng(5005);
  int count = 0;
  for (int r = 0; count < 200; ++r) {
    const uint32_t q = 2 + r % 3;
    const FunctionField F(gf::make(q == 4 ? 2 : q, q == 4 ? 2 : 1), {"t"});
    const RatFunc w = rng.univariate(F, 3), b = rng.univariate(F, 3);
    if (w.is_zero() || b.is_zero()) continue;
    const HR c = HR::build(WR({w}), {b});
    std::vector<UPoly> polys{w.num_upoly(0), w.den_upoly(0), b.num_upoly(0), b.den_upoly(0)};
    uint64_t sum = 0;
    for (const auto& pl : places_of(polys, F.base())) {
      const uint64_t v = residue_trace(w, b, pl);
      require(local_invariant(c, pl).value == v, "level-1 invariant of " + c.str() + " at " + pl.str());
      sum += v;
    }
    require(sum % F.characteristic() == 0, "sum of Tr Res for " + c.str());
    require(reciprocity_check(c).holds, "reciprocity report for " + c.str());
    ++count;
  }
  const FunctionField F2(gf::make(2, 1), {"t"});
  for (count = 0; count < 100;) {
    const RatFunc w0 = rng.univariate(F2, 2), w1 = rng.univariate(F2, 2), b = rng.univariate(F2, 2);
    if (b.is_zero()) continue;
    const HR c = HR::build(WR({w0, w1}), {b});
    const auto rep = reciprocity_check(c);
    uint64_t sum = 0;
    for (const auto& row : rep.table) sum += row.value;
    require(rep.modulus == 4 && sum % 4 == 0, "level-2 reciprocity for " + c.str());
    ++count;
  }
  const RatFunc t = RatFunc::variable(F2, 0), one = t.one_like();
  const auto rep = reciprocity_check(HR::build(WR({one / t}), {one + t}));
  std::vector<std::pair<std::string, uint64_t>> table;
  for (const auto& row : rep.table) table.emplace_back(row.place.str(), row.value);
  require(table == std::vector<std::pair<std::string, uint64_t>>{{"t", 1}, {"t+1", 1}, {"inf", 0}}, "worked table");
}

// ---- 6. Decomposition -------------------------------------------------------------

// True when the polar part of w is F(y) - y for a polar y; searched exhaustively.
bool tame_by_search(const Laurent<gf::Elem>& w, const gf::Field& k) {
  const uint32_t p = k.p();
  const long poles = w.valuation() < 0 ? -w.valuation() : 0;
  const long K = poles / static_cast<long>(p);
  const auto elems = k.elements();
  std::vector<size_t> idx(static_cast<size_t>(K), 0);
  while (true) {
    Laurent<gf::Elem> y = Laurent<gf::Elem>::zero(k.zero(), 8);
    for (long j = 0; j < K; ++j) y = y + Laurent<gf::Elem>::monomial(elems[idx[static_cast<size_t>(j)]], -(j + 1), 8);
    const Laurent<gf::Elem> diff = w - (y.pow(p) - y);
    bool polar = false;
    for (long j = -poles; j < 0; ++j) polar = polar || !diff.coeff(j).is_zero();
    if (!polar) return true;
    size_t j = 0;
    while (j < idx.size() && ++idx[j] == elems.size()) idx[j++] = 0;
    if (j == idx.size()) return false;
  }
}

void criterion6() {
  kft::Rng rng(6006);
  int count = 0;
  for (int r = 0; count < 100; ++r) {
    const uint32_t q = 2 + r % 3;
    const auto k = gf::make(q == 4 ? 2 : q, q == 4 ? 2 : 1);
    const uint32_t p = k.p(), level = (p == 2 && r % 2) ? 2 : 1;
    const auto t = Laurent<gf::Elem>::monomial(k.one(), 1, 32);
    std::vector<LaurentElem> wc;
    for (uint32_t l = 0; l < level; ++l) {
      std::vector<gf::Elem> cs;
      for (int j = 0; j < 5; ++j) cs.push_back(rng.elem(k));
      wc.push_back(Laurent<gf::Elem>::from_coeffs(k.zero(), 0, cs, 32));
    }
    std::vector<gf::Elem> uc{rng.unit(k)};
    for (int j = 0; j < 4; ++j) uc.push_back(rng.elem(k));
    const long j = static_cast<long>(rng.below(6));
    const LaurentElem b = LaurentElem(Laurent<gf::Elem>::from_coeffs(k.zero(), 0, uc, 32)) * LaurentElem(t.pow(j));
    const HL c = HL::build(WittVector<LaurentElem>(wc), {b});
    const auto parts = theorem3_decompose(c);
    require(parts.residue.has_value(), "missing residue for " + c.str());
    const uint64_t res = parts.residue->is_zero() ? 0 : h1_value(*parts.residue);
    require(local_invariant(c, laurent_place(k)).value == res, "decomposition vs invariant for " + c.str());
    // Oracle: the residue component is j times the trace of the constant Witt vector.
    std::vector<gf::Elem> w0;
    for (const auto& x : wc) w0.push_back(x.coeff(0));
    const uint64_t mod = ipow(p, level);
    require(res == witt_trace_int(W(w0)) * static_cast<uint64_t>(j) % mod, "residue formula for " + c.str());
    ++count;
  }
  int wild = 0, tame = 0;
  for (int r = 0; r < 150; ++r) {
    const uint32_t q = 2 + r % 3;
    const auto k = gf::make(q == 4 ? 2 : q, q == 4 ? 2 : 1);
    std::vector<gf::Elem> cs;
    const long lo = -1 - static_cast<long>(rng.below(6));
    for (long e = lo; e < 3; ++e) cs.push_back(e == lo ? rng.unit(k) : rng.elem(k));
    // Make p-divisible pole structure common so both outcomes occur.
    if (r % 2)
      for (long e = lo; e < 0; ++e)
        if ((-e) % static_cast<long>(k.p()) != 0) cs[static_cast<size_t>(e - lo)] = k.zero();
    const Laurent<gf::Elem> w = Laurent<gf::Elem>::from_coeffs(k.zero(), lo, cs, 32);
    const auto t = Laurent<gf::Elem>::monomial(k.one(), 1, 32);
    const bool expect_tame = w.is_zero() || tame_by_search(w, k);
    bool raised = false;
    try {
      theorem3_decompose(HL::build(WittVector<LaurentElem>({LaurentElem(w)}), {LaurentElem(t)}));
    } catch (const WildClass&) {
      raised = true;
    }
    require(raised == !expect_tame, "WildClass mismatch at " + w.str());
    (raised ? wild : tame)++;
  }
  require(wild > 10 && tame > 10, "wildness samples are one-sided");
}

// ---- 7. Level maps -----------------------------------------------------------------------

void criterion7() {
  kft::Rng rng(7007);
  for (auto [p, from, to] : std::vector<std::tuple<uint32_t, uint32_t, uint32_t>>{{2, 1, 2}, {2, 1, 3}, {2, 2, 3}, {3, 1, 2}}) {
    const FunctionField F(gf::make(p, 1), {"t"});
    auto random_class = [&] {
      while (true) {
        std::vector<RatFunc> w;
        for (uint32_t l = 0; l < from; ++l) w.push_back(rng.univariate(F, 2));
        const RatFunc b = rng.univariate(F, 2);
        if (!b.is_zero()) return HR::build(WR(w), {b});
      }
    };
    const uint64_t factor = ipow(p, to - from);
    std::vector<std::pair<HR, std::vector<uint64_t>>> seen;
    for (int r = 0; r < 12; ++r) {
      const HR a = random_class(), b = random_class();
      const HR sa = level_shift(a, to), sb = level_shift(b, to);
      require(h_zero_test(level_shift(a + b, to) - sa - sb), "additivity at " + a.str() + ", " + b.str());
      std::vector<uint64_t> inv;
      for (const auto& pl : places_of(a)) {
        const auto lo = local_invariant(a, pl), hi = local_invariant(sa, pl);
        require(hi.modulus == ipow(p, to) && hi.value == lo.value * factor % hi.modulus, "invariant factor at " + pl.str());
        inv.push_back(lo.value);
      }
      const bool nonzero = std::any_of(inv.begin(), inv.end(), [](uint64_t v) { return v != 0; });
      if (nonzero) require(!h_zero_test(sa), "shift killed " + a.str());
      require(h_zero_test(sa.times(static_cast<long long>(ipow(p, from)))), "p^i kills shifted " + a.str());
      for (const auto& [other, other_inv] : seen) {
        bool distinguishable = false;
        for (const auto& pl : places_of(a - other)) distinguishable = distinguishable || local_invariant(a - other, pl).value != 0;
        if (distinguishable) require(!h_zero_test(sa - level_shift(other, to)), "shift identified distinct classes");
      }
      seen.emplace_back(a, inv);
    }
  }
}

// ---- 8. Extension composites ---------------------------------------------------------------

HR restrict_class(const HR& h, const ASExtension& L) {
  auto out = HR::zero(L.embed(h.like()), h.level(), h.degree());
  for (const auto& [entries, w] : h.terms()) {
    std::vector<RatFunc> e;
    for (const auto& b : entries) e.push_back(L.embed(b));
    out = out + HR::build(w.template map<RatFunc>([&](const RatFunc& x) { return L.embed(x); }), e);
  }
  return out;
}

void criterion8() {
  kft::Rng rng(8008);
  for (uint32_t p : {2u, 3u}) {
    const ASExtension L(gf::make(p, 1));
    const FunctionField& E = L.ext_field();
    const FunctionField& F = L.base_field();
    const RatFunc t = RatFunc::variable(F, 0);
    int n = 0;
    while (n < 50) {
      const RatFunc l = rng.univariate(E, 3), f = rng.univariate(F, 3);
      if (l.is_zero() || f.is_zero()) continue;
      const auto x = sym(E, {l, L.embed(f)});
      require(kn_equal(L.norm_proj(L.one_minus_sigma(x)), MilnorElement::zero(F, 2)), "norm(1 - sigma) at " + x.str());
      ++n;
    }
    for (n = 0; n < 20;) {
      const RatFunc b = rng.univariate(F, 3), l = rng.univariate(E, 2);
      if (b.is_zero() || l.is_zero()) continue;
      require(h_zero_test(restrict_class(HR::build(WR({t}), {b}), L)), "restriction of (t | " + b.str() + ")");
      const HR c = HR::build(WR({t}), {L.norm(l)});
      for (const auto& row : reciprocity_check(c).table) require(row.value == 0, "(t | N(" + l.str() + ")) at " + row.place.str());
      ++n;
    }
  }
}

// ---- 9. CLI ---------------------------------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  require(static_cast<bool>(in), "cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void criterion9() {
  namespace fs = std::filesystem;
  const fs::path dir = KATOFORGE_TEST_DIR;
  const std::string script = slurp(dir / "golden" / "session.kf"), expected = slurp(dir / "golden" / "session.jsonl");
  std::vector<std::string> runs;
  for (int r = 0; r < 2; ++r) {
    cli::Options opt;
    opt.json = true;
    cli::Session s(opt);
    std::istringstream in(script);
    std::ostringstream out, err;
    require(s.run_script(in, out, err) == 0, "golden script failed: " + err.str());
    runs.push_back(out.str());
  }
  require(runs[0] == runs[1], "golden output differs across runs");
  require(runs[0] == expected, "golden output differs from the recorded file");
  const fs::path cache = fs::temp_directory_path() / ("katoforge-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(cache);
  cli::cache_manage(cache.string(), "warm");
  cli::cache_manage(cache.string(), "verify");
  fs::remove_all(cache);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void()>>> criteria{
      {"Witt ring identities", criterion1},
      {"Artin-Schreier-Witt solvability", criterion2},
      {"Cartier operator suite", criterion3},
      {"differential symbol", criterion4},
      {"residue theorem and reciprocity", criterion5},
      {"local decomposition and wild classes", criterion6},
      {"level maps", criterion7},
      {"Artin-Schreier extension composites", criterion8},
      {"CLI golden session and cache", criterion9},
  };
  int failed = 0, n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    try {
      fn();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << n << " [" << name << "]: " << (detail.empty() ? "PASS" : "FAIL") << " (" << std::fixed
              << std::setprecision(1) << secs << "s)";
    if (!detail.empty()) {
      std::cout << ": " << detail;
      ++failed;
    }
    std::cout << std::endl;
  }
  return failed ? 1 : 0;
}
