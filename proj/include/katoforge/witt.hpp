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

// Witt vectors of finite length over fields of characteristic p.
//
// Sum and product structure polynomials S_n, P_n in Z[a_0..a_{i-1}, b_0..b_{i-1}]
// satisfy sum_{j<=n} p^j X_j^{p^{n-j}} = ghost_n(a) (+ or *) ghost_n(b).

#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "katoforge/error.hpp"
#include "katoforge/gf.hpp"
#include "katoforge/laurent.hpp"
#include "katoforge/ratfunc.hpp"

namespace katoforge {

/// Sparse integer polynomial: exponent vector -> nonzero coefficient.
using IntPoly = std::map<std::vector<uint32_t>, mpz_class>;

namespace intpoly {

inline IntPoly variable(size_t nvars, size_t j) {
  std::vector<uint32_t> e(nvars, 0);
  e[j] = 1;
  return {{e, mpz_class(1)}};
}

inline void add_to(IntPoly& acc, const IntPoly& b, const mpz_class& scale = 1) {
  for (const auto& [e, c] : b) {
    auto [it, inserted] = acc.emplace(e, c * scale);
    if (!inserted) {
      it->second += c * scale;
      if (it->second == 0) acc.erase(it);
    }
  }
}

inline IntPoly mul(const IntPoly& a, const IntPoly& b) {
  IntPoly out;
  std::vector<uint32_t> e;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      e = ea;
      for (size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
      auto [it, inserted] = out.emplace(e, ca * cb);
      if (!inserted) {
        it->second += ca * cb;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  return out;
}

inline IntPoly pow(const IntPoly& a, uint64_t n, size_t nvars) {
  IntPoly acc{{std::vector<uint32_t>(nvars, 0), mpz_class(1)}};
  IntPoly base = a;
  while (n) {
    if (n & 1) acc = mul(acc, base);
    n >>= 1;
    if (n) base = mul(base, base);
  }
  return acc;
}

/// Exact division of every coefficient; IntegralityViolation otherwise.
inline IntPoly divexact(const IntPoly& a, const mpz_class& d) {
  IntPoly out;
  for (const auto& [e, c] : a) {
    if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
      throw IntegralityViolation("structure polynomial coefficient " + c.get_str() + " not divisible by " + d.get_str());
    out.emplace(e, c / d);
  }
  return out;
}

}  // namespace intpoly

/// Ghost components of the variables a (offset 0) or b (offset i), as polynomials.
inline IntPoly ghost_poly(uint32_t p, uint32_t i, uint32_t n, uint32_t offset) {
  IntPoly acc;
  mpz_class pj = 1;
  for (uint32_t j = 0; j <= n; ++j) {
    mpz_class exp;
    mpz_ui_pow_ui(exp.get_mpz_t(), p, n - j);
    intpoly::add_to(acc, intpoly::pow(intpoly::variable(2 * i, offset + j), exp.get_ui(), 2 * i), pj);
    pj *= p;
  }
  return acc;
}

/// Ghost component of a list of polynomials X_0..X_n.
inline IntPoly ghost_of(uint32_t p, uint32_t nvars, const std::vector<IntPoly>& xs, uint32_t n) {
  IntPoly acc;
  mpz_class pj = 1;
  for (uint32_t j = 0; j <= n; ++j) {
    mpz_class exp;
    mpz_ui_pow_ui(exp.get_mpz_t(), p, n - j);
    intpoly::add_to(acc, intpoly::pow(xs[j], exp.get_ui(), nvars), pj);
    pj *= p;
  }
  return acc;
}

class WittStructure {
 public:
  /// Largest supported p^(i-1).
  static constexpr uint64_t kMaxWeight = 27;

  struct ModTerm {
    uint32_t coeff;
    std::vector<uint32_t> exp;
  };

  uint32_t p() const { return p_; }
  uint32_t length() const { return i_; }
  const std::vector<IntPoly>& sums() const { return s_; }
  const std::vector<IntPoly>& products() const { return m_; }
  /// S_n and P_n with coefficients reduced mod p (zero terms dropped).
  const std::vector<ModTerm>& sum_mod_p(uint32_t n) const { return s_mod_[n]; }
  const std::vector<ModTerm>& product_mod_p(uint32_t n) const { return m_mod_[n]; }

  /// Solves the ghost equations; IntegralityViolation if a division by p^n is inexact.
  static std::shared_ptr<WittStructure> compute(uint32_t p, uint32_t i) {
    check_bounds(p, i);
    auto ws = std::shared_ptr<WittStructure>(new WittStructure());
    ws->p_ = p;
    ws->i_ = i;
    const size_t nv = 2 * i;
    mpz_class pn = 1;
    for (uint32_t n = 0; n < i; ++n) {
      const IntPoly ga = ghost_poly(p, i, n, 0), gb = ghost_poly(p, i, n, i);
      IntPoly rs = ga, rm = intpoly::mul(ga, gb);
      intpoly::add_to(rs, gb);
      mpz_class pj = 1;
      for (uint32_t j = 0; j < n; ++j) {
        mpz_class exp;
        mpz_ui_pow_ui(exp.get_mpz_t(), p, n - j);
        intpoly::add_to(rs, intpoly::pow(ws->s_[j], exp.get_ui(), nv), -pj);
        intpoly::add_to(rm, intpoly::pow(ws->m_[j], exp.get_ui(), nv), -pj);
        pj *= p;
      }
      ws->s_.push_back(intpoly::divexact(rs, pn));
      ws->m_.push_back(intpoly::divexact(rm, pn));
      pn *= p;
    }
    ws->reduce();
    return ws;
  }

  /// Cache file text: header then one monomial per line, S before P, n ascending,
  /// exponent vectors ascending.
  std::string serialize() const {
    std::ostringstream out;
    out << "WITTPOLY v1 p=" << p_ << " i=" << i_ << "\n";
    auto emit = [&](char tag, const std::vector<IntPoly>& polys) {
      for (uint32_t n = 0; n < polys.size(); ++n) {
        for (const auto& [e, c] : polys[n]) {
          out << tag << ' ' << n << ' ' << c.get_str();
          for (auto x : e) out << ' ' << x;
          out << '\n';
        }
      }
    };
    emit('S', s_);
    emit('P', m_);
    return out.str();
  }

  /// Parses cache text and checks the ghost identities at random points modulo a large prime.
  static std::shared_ptr<WittStructure> parse(const std::string& text, uint32_t p, uint32_t i) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "WITTPOLY v1 p=" + std::to_string(p) + " i=" + std::to_string(i))
      throw IoError("bad Witt cache header");
    auto ws = std::shared_ptr<WittStructure>(new WittStructure());
    ws->p_ = p;
    ws->i_ = i;
    ws->s_.assign(i, {});
    ws->m_.assign(i, {});
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      char tag = 0;
      uint32_t n = 0;
      std::string coef;
      if (!(ls >> tag >> n >> coef) || (tag != 'S' && tag != 'P') || n >= i) throw IoError("bad Witt cache line: " + line);
      std::vector<uint32_t> e(2 * i);
      for (auto& x : e)
        if (!(ls >> x)) throw IoError("bad Witt cache line: " + line);
      mpz_class c;
      if (c.set_str(coef, 10) != 0 || c == 0) throw IoError("bad Witt cache coefficient: " + line);
      (tag == 'S' ? ws->s_ : ws->m_)[n][e] = c;
    }
    if (!ws->ghost_check()) throw IoError("Witt cache fails the ghost identities");
    ws->reduce();
    return ws;
  }

  /// Evaluates ghost identities at random points modulo a 61-bit prime.
  bool ghost_check(int rounds = 4) const {
    const mpz_class mod("2305843009213693951");
    std::mt19937_64 rng(0x7769747467686f73ULL);
    for (int r = 0; r < rounds; ++r) {
      std::vector<mpz_class> pt(2 * i_);
      for (auto& x : pt) x = mpz_class(std::to_string(rng() % 2305843009213693951ULL));
      auto eval = [&](const IntPoly& f) {
        mpz_class acc = 0;
        for (const auto& [e, c] : f) {
          mpz_class term = c;
          for (size_t k = 0; k < e.size(); ++k) {
            if (!e[k]) continue;
            mpz_class pw;
            mpz_powm_ui(pw.get_mpz_t(), pt[k].get_mpz_t(), e[k], mod.get_mpz_t());
            term = term * pw % mod;
          }
          acc = (acc + term) % mod;
        }
        return acc;
      };
      auto ghost_vals = [&](const std::vector<mpz_class>& xs, uint32_t n) {
        mpz_class acc = 0, pj = 1;
        for (uint32_t j = 0; j <= n; ++j) {
          mpz_class pw;
          mpz_class exp;
          mpz_ui_pow_ui(exp.get_mpz_t(), p_, n - j);
          mpz_powm(pw.get_mpz_t(), xs[j].get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
          acc = (acc + pj * pw) % mod;
          pj *= p_;
        }
        return acc;
      };
      std::vector<mpz_class> a(pt.begin(), pt.begin() + i_), b(pt.begin() + i_, pt.end()), sv, mv;
      for (uint32_t n = 0; n < i_; ++n) {
        sv.push_back(eval(s_[n]));
        mv.push_back(eval(m_[n]));
      }
      for (uint32_t n = 0; n < i_; ++n) {
        mpz_class ga = ghost_vals(a, n), gb = ghost_vals(b, n);
        mpz_class ds = (ghost_vals(sv, n) - ga - gb) % mod, dm = (ghost_vals(mv, n) - ga * gb) % mod;
        if (ds != 0 || dm != 0) return false;
      }
    }
    return true;
  }

  static void check_bounds(uint32_t p, uint32_t i) {
    if (!gf::detail::is_prime(p)) throw NonPrime(std::to_string(p) + " is not prime");
    if (i < 1) throw ResourceLimit("Witt length must be at least 1");
    uint64_t w = 1;
    for (uint32_t k = 1; k < i; ++k) {
      w *= p;
      if (w > kMaxWeight) throw ResourceLimit("Witt structure W_" + std::to_string(i) + " over p=" + std::to_string(p) + " exceeds p^(i-1) <= 27");
    }
  }

 private:
  WittStructure() = default;

  void reduce() {
    auto red = [&](const std::vector<IntPoly>& polys, std::vector<std::vector<ModTerm>>& out) {
      out.clear();
      for (const auto& f : polys) {
        std::vector<ModTerm> terms;
        for (const auto& [e, c] : f) {
          mpz_class r = c % p_;
          if (r < 0) r += p_;
          if (r != 0) terms.push_back({static_cast<uint32_t>(r.get_ui()), e});
        }
        out.push_back(std::move(terms));
      }
    };
    red(s_, s_mod_);
    red(m_, m_mod_);
  }

  uint32_t p_ = 0, i_ = 0;
  std::vector<IntPoly> s_, m_;
  std::vector<std::vector<ModTerm>> s_mod_, m_mod_;
};

namespace detail {

struct WittRegistry {
  std::mutex mu;
  std::map<std::pair<uint32_t, uint32_t>, std::shared_ptr<const WittStructure>> table;
  std::optional<std::string> cache_dir;
};

inline WittRegistry& witt_registry() {
  static WittRegistry r;
  return r;
}

inline std::string witt_cache_name(uint32_t p, uint32_t i) {
  return "wittpoly-v1-p" + std::to_string(p) + "-i" + std::to_string(i) + ".txt";
}

inline void write_atomically(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  const auto tmp = path.string() + ".tmp" + std::to_string(std::random_device{}());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp);
    out << text;
    if (!out.flush()) throw IoError("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

inline std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

/// Directory for structure files; defaults to $KATOFORGE_CACHE, empty disables disk caching.
inline void set_witt_cache_dir(std::optional<std::string> dir) {
  auto& reg = detail::witt_registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  reg.cache_dir = dir ? std::move(dir) : std::optional<std::string>(std::string());
}

inline std::string witt_cache_dir() {
  auto& reg = detail::witt_registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  if (!reg.cache_dir) {
    const char* env = std::getenv("KATOFORGE_CACHE");
    reg.cache_dir = env ? std::string(env) : std::string();
  }
  return *reg.cache_dir;
}

inline std::string witt_cache_path(const std::string& dir, uint32_t p, uint32_t i) {
  return (std::filesystem::path(dir) / detail::witt_cache_name(p, i)).string();
}

/// Structure polynomials for W_i over characteristic p. Built once per process;
/// the registry lock serializes first use, so readers only see complete structures.
inline std::shared_ptr<const WittStructure> witt_structure(uint32_t p, uint32_t i) {
  WittStructure::check_bounds(p, i);
  const std::string dir = witt_cache_dir();
  auto& reg = detail::witt_registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto it = reg.table.find({p, i});
  if (it != reg.table.end()) return it->second;
  std::shared_ptr<const WittStructure> ws;
  if (!dir.empty()) {
    const auto path = witt_cache_path(dir, p, i);
    if (auto text = detail::read_file(path)) {
      try {
        ws = WittStructure::parse(*text, p, i);
      } catch (const IoError&) {
        ws = nullptr;
      }
    }
    if (!ws) {
      auto fresh = WittStructure::compute(p, i);
      detail::write_atomically(path, fresh->serialize());
      ws = fresh;
    }
  } else {
    ws = WittStructure::compute(p, i);
  }
  reg.table.emplace(std::make_pair(p, i), ws);
  return ws;
}

/// Coordinates (a_0, ..., a_{i-1}) over a field T of characteristic p.
template <class T>
class WittVector {
 public:
  WittVector() = default;
  explicit WittVector(std::vector<T> coords) : c_(std::move(coords)) {
    if (c_.empty()) throw ConfigMismatch("Witt vector needs at least one coordinate");
    s_ = witt_structure(c_[0].characteristic(), static_cast<uint32_t>(c_.size()));
  }

  static WittVector zero(const T& like, size_t len) { return WittVector(std::vector<T>(len, like.zero_like())); }
  static WittVector teichmuller(const T& a, size_t len) {
    std::vector<T> c(len, a.zero_like());
    c[0] = a;
    return WittVector(std::move(c));
  }

  size_t length() const { return c_.size(); }
  uint32_t characteristic() const { return s_->p(); }
  const T& coord(size_t j) const { return c_.at(j); }
  const std::vector<T>& coords() const { return c_; }
  bool is_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend WittVector operator+(const WittVector& a, const WittVector& b) {
    check(a, b);
    std::vector<T> out;
    for (uint32_t n = 0; n < a.c_.size(); ++n) out.push_back(eval(a.s_->sum_mod_p(n), a.c_, b.c_, a.c_[0]));
    return WittVector(a.s_, std::move(out));
  }

  /// Coordinates w_n = u_n - v_n - R_n(v, w), R_n = S_n - a_n - b_n.
  friend WittVector operator-(const WittVector& u, const WittVector& v) {
    check(u, v);
    const size_t len = u.c_.size();
    const T zero = u.c_[0].zero_like();
    std::vector<T> w(len, zero);
    for (uint32_t n = 0; n < len; ++n) {
      std::vector<T> a(v.c_), b(w);
      a[n] = zero;
      b[n] = zero;
      w[n] = u.c_[n] - v.c_[n] - eval(u.s_->sum_mod_p(n), a, b, zero);
    }
    return WittVector(u.s_, std::move(w));
  }
  friend WittVector operator-(const WittVector& a) { return zero(a.c_[0], a.c_.size()) - a; }

  friend WittVector operator*(const WittVector& a, const WittVector& b) {
    check(a, b);
    std::vector<T> out;
    for (uint32_t n = 0; n < a.c_.size(); ++n) out.push_back(eval(a.s_->product_mod_p(n), a.c_, b.c_, a.c_[0]));
    return WittVector(a.s_, std::move(out));
  }

  WittVector& operator+=(const WittVector& o) { return *this = *this + o; }
  WittVector& operator-=(const WittVector& o) { return *this = *this - o; }

  /// n * w by repeated doubling.
  WittVector times(long long n) const {
    if (n < 0) return (-*this).times(-n);
    WittVector acc = zero(c_[0], c_.size()), base = *this;
    while (n) {
      if (n & 1) acc = acc + base;
      n >>= 1;
      if (n) base = base + base;
    }
    return acc;
  }

  /// Coordinatewise p-th power.
  WittVector frobenius() const {
    std::vector<T> out;
    for (const auto& x : c_) out.push_back(x.frobenius());
    return WittVector(s_, std::move(out));
  }

  /// (a_0, ..., a_{i-1}) -> (0, a_0, ..., a_{i-2}).
  WittVector verschiebung() const {
    std::vector<T> out{c_[0].zero_like()};
    out.insert(out.end(), c_.begin(), c_.end() - 1);
    return WittVector(s_, std::move(out));
  }

  /// F - id.
  WittVector wp() const { return frobenius() - *this; }

  /// Length len >= length(): len - length() leading zeros.
  WittVector shifted(size_t len) const {
    if (len < c_.size()) throw LevelDecrease("cannot shift from length " + std::to_string(c_.size()) + " to " + std::to_string(len));
    std::vector<T> out(len - c_.size(), c_[0].zero_like());
    out.insert(out.end(), c_.begin(), c_.end());
    return WittVector(std::move(out));
  }

  /// First len coordinates (the restriction W_i -> W_len).
  WittVector truncated(size_t len) const { return WittVector(std::vector<T>(c_.begin(), c_.begin() + len)); }

  template <class U>
  WittVector<U> map(const std::function<U(const T&)>& f) const {
    std::vector<U> out;
    for (const auto& x : c_) out.push_back(f(x));
    return WittVector<U>(std::move(out));
  }

  friend bool operator==(const WittVector& a, const WittVector& b) { return a.c_ == b.c_; }
  friend bool operator!=(const WittVector& a, const WittVector& b) { return !(a == b); }
  friend bool operator<(const WittVector& a, const WittVector& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
  }

  std::string str() const {
    std::string out = "[";
    for (size_t j = 0; j < c_.size(); ++j) out += (j ? ", " : "") + c_[j].str();
    return out + "]";
  }

 private:
  WittVector(std::shared_ptr<const WittStructure> s, std::vector<T> c) : s_(std::move(s)), c_(std::move(c)) {}

  static void check(const WittVector& a, const WittVector& b) {
    if (a.c_.size() != b.c_.size()) throw ConfigMismatch("Witt vectors of different lengths");
  }

  /// Evaluates a mod-p structure polynomial at (a, b).
  static T eval(const std::vector<WittStructure::ModTerm>& terms, const std::vector<T>& a, const std::vector<T>& b,
                const T& like) {
    const size_t len = a.size();
    std::vector<std::vector<T>> powers(2 * len);
    auto power = [&](size_t var, uint32_t e) -> const T& {
      auto& tab = powers[var];
      const T& base = var < len ? a[var] : b[var - len];
      if (tab.empty()) tab.push_back(base);
      while (tab.size() < e) tab.push_back(tab.back() * base);
      return tab[e - 1];
    };
    std::optional<T> acc;
    for (const auto& term : terms) {
      bool zero = false;
      for (size_t k = 0; k < term.exp.size() && !zero; ++k)
        if (term.exp[k] && (k < len ? a[k] : b[k - len]).is_zero()) zero = true;
      if (zero) continue;
      std::optional<T> m;
      for (size_t k = 0; k < term.exp.size(); ++k)
        if (term.exp[k]) m = m ? *m * power(k, term.exp[k]) : power(k, term.exp[k]);
      T v = m ? *m : like.one_like();
      // Coefficients are residues mod p; repeated addition keeps the precision of v.
      T sum = v;
      for (uint64_t c = 1; c < term.coeff; ++c) sum = sum + v;
      acc = acc ? *acc + sum : sum;
    }
    if (!acc) return like.zero_like();
    return *acc;
  }

  std::shared_ptr<const WittStructure> s_;
  std::vector<T> c_;
};

/// Z/p^i value of a Witt vector whose coordinates lie in F_p: sum_j p^j tau(c_j),
/// tau(c) = c^(p^(i-1)) mod p^i.
inline uint64_t witt_to_int(const WittVector<gf::Elem>& w) {
  const uint64_t p = w.characteristic(), len = w.length();
  uint64_t mod = 1;
  for (uint64_t k = 0; k < len; ++k) mod *= p;
  auto powmod = [&](uint64_t b, uint64_t e) {
    uint64_t r = 1 % mod;
    b %= mod;
    while (e) {
      if (e & 1) r = static_cast<uint64_t>(static_cast<unsigned __int128>(r) * b % mod);
      b = static_cast<uint64_t>(static_cast<unsigned __int128>(b) * b % mod);
      e >>= 1;
    }
    return r;
  };
  uint64_t acc = 0, pj = 1;
  for (uint64_t j = 0; j < len; ++j) {
    const auto& c = w.coord(j);
    for (uint32_t k = 1; k < c.config()->e; ++k)
      if (c.coeff(k)) throw ConfigMismatch("Witt coordinate outside the prime field");
    acc = (acc + pj * powmod(c.coeff(0), mod / p)) % mod;
    pj *= p;
  }
  return acc;
}

/// Inverse of witt_to_int over F_p.
inline WittVector<gf::Elem> witt_from_int(const gf::Field& fp, uint32_t len, long long value) {
  const auto one = WittVector<gf::Elem>::teichmuller(fp.one(), len);
  return one.times(value);
}

/// sum_{j<e} F^j(w) over F_{p^e}; coordinates lie in F_p.
inline WittVector<gf::Elem> witt_trace(const WittVector<gf::Elem>& w) {
  const uint32_t e = w.coord(0).config()->e;
  WittVector<gf::Elem> acc = WittVector<gf::Elem>::zero(w.coord(0), w.length()), cur = w;
  for (uint32_t j = 0; j < e; ++j) {
    acc = acc + cur;
    cur = cur.frobenius();
  }
  return acc;
}

/// The trace read in Z/p^i.
inline uint64_t witt_trace_int(const WittVector<gf::Elem>& w) { return witt_to_int(witt_trace(w)); }

/// Canonical solution of x^p - x = c in F_q((t)): poles of order divisible by p are
/// replaced through p-th roots, the constant term by the finite-field solver,
/// the positive part by x_+ = -sum_k c_+^(p^k). Other poles have no solution.
inline std::optional<LaurentElem> as_solve(const LaurentElem& c) {
  const gf::Elem zero = c.zero_elem();
  const uint32_t p = zero.characteristic();
  const long prec = c.precision();
  if (prec <= 0) throw PrecisionExhausted("Artin-Schreier solving needs precision above 0");
  std::map<long, gf::Elem> pole;
  for (long k = c.valuation(); k < 0; ++k)
    if (!c.coeff(k).is_zero()) pole[k] = c.coeff(k);
  std::map<long, gf::Elem> x;
  gf::Elem c0 = c.coeff(0);
  while (!pole.empty()) {
    auto it = pole.begin();
    const long k = it->first;
    const gf::Elem a = it->second;
    pole.erase(it);
    if ((-k) % static_cast<long>(p) != 0) return std::nullopt;
    // y = a^(1/p) t^(k/p): y^p - y = a t^k - y
    const long kk = k / static_cast<long>(p);
    const gf::Elem y = a.pth_root();
    x[kk] = (x.count(kk) ? x[kk] : zero) + y;
    if (kk < 0) {
      gf::Elem& slot = pole.emplace(kk, zero).first->second;
      slot = slot + y;
      if (slot.is_zero()) pole.erase(kk);
    }
  }
  auto x0 = gf::as_solve(c0);
  if (!x0) return std::nullopt;
  std::vector<gf::Elem> pos;
  for (long k = 1; k < prec; ++k) pos.push_back(c.coeff(k));
  LaurentElem cp = Laurent<gf::Elem>::from_coeffs(zero, 1, pos, prec);
  LaurentElem acc = Laurent<gf::Elem>::zero(zero, prec), term = cp;
  while (!term.is_zero()) {
    acc = acc - term;
    term = term.frobenius().truncated(prec);
  }
  std::vector<gf::Elem> neg;
  const long lo = x.empty() ? 0 : std::min(0L, x.begin()->first);
  for (long k = lo; k <= 0; ++k) neg.push_back(k == 0 ? *x0 : (x.count(k) ? x[k] : zero));
  return acc + LaurentElem(Laurent<gf::Elem>::from_coeffs(zero, lo, neg, prec));
}

/// w with F(w) - w = v, lifted along the V-filtration with the canonical
/// Artin-Schreier root at each step; nullopt when no solution exists.
template <class T>
std::optional<WittVector<T>> witt_as_solve(const WittVector<T>& v) {
  const size_t len = v.length();
  const T zero = v.coord(0).zero_like();
  std::vector<T> result;
  WittVector<T> rest = v;
  for (size_t level = 0; level < len; ++level) {
    auto x = as_solve(rest.coord(level));
    if (!x) return std::nullopt;
    result.push_back(*x);
    // subtract wp(V^level [x]) from rest
    std::vector<T> lifted(len, zero);
    lifted[level] = *x;
    rest = rest - WittVector<T>(lifted).wp();
  }
  return WittVector<T>(std::move(result));
}

}  // namespace katoforge
