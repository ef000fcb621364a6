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

// Finite fields F_{p^e} = F_p[z]/(m(z)).
//
// Elements are packed into one machine word: the coefficient c_j of z^j is
// the j-th base-p digit. Fields with at most 2^16 elements get Zech-style
// exp/log tables; larger ones fall back to schoolbook multiplication.
// Configs are interned for the lifetime of the process, so an Elem is a
// plain (pointer, word) pair and two elements share a field iff their
// config pointers are equal.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "katoforge/error.hpp"
#include "katoforge/linalg.hpp"

namespace katoforge::gf {

inline constexpr uint32_t kMaxPrime = 1u << 15;
inline constexpr uint64_t kMaxFieldSize = uint64_t{1} << 62;
inline constexpr uint64_t kTableLimit = uint64_t{1} << 16;

struct Config {
  uint32_t p = 0;
  uint32_t e = 0;
  std::vector<uint32_t> modulus;  // monic, low degree first, size e + 1
  uint64_t q = 0;
  std::vector<uint64_t> pow_p;    // pow_p[j] = p^j, j <= e
  std::vector<uint32_t> exp_table;
  std::vector<uint32_t> log_table;
  std::vector<uint16_t> add_table;  // only for odd p and q <= 256
  bool has_tables() const { return !exp_table.empty(); }
};

namespace detail {

inline bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using Raw = std::vector<uint32_t>;  // dense polynomial over Z/p, low degree first

inline void trim(Raw& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline uint32_t inv_mod(uint32_t a, uint32_t p) {
  uint64_t r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(r);
}

inline Raw raw_mod(Raw a, const Raw& m, uint32_t p) {
  trim(a);
  const size_t dm = m.size() - 1;
  const uint32_t li = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const uint64_t c = uint64_t{a.back()} * li % p;
    const size_t shift = a.size() - m.size();
    for (size_t k = 0; k <= dm; ++k)
      a[shift + k] = static_cast<uint32_t>((a[shift + k] + (p - c) * m[k]) % p);
    trim(a);
  }
  return a;
}

inline Raw raw_mulmod(const Raw& a, const Raw& b, const Raw& m, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Raw r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<uint32_t>((r[i + j] + uint64_t{a[i]} * b[j]) % p);
  return raw_mod(std::move(r), m, p);
}

inline Raw raw_gcd(Raw a, Raw b, uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Raw r = raw_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// f monic of degree e over F_p: irreducible iff gcd(f, x^{p^j} - x) = 1 for j <= e/2.
inline bool raw_irreducible(const Raw& f, uint32_t p) {
  const size_t e = f.size() - 1;
  if (e == 1) return true;
  Raw h = {0, 1};
  for (size_t j = 1; 2 * j <= e; ++j) {
    Raw acc = {1};
    Raw base = h;
    uint64_t ex = p;
    while (ex) {
      if (ex & 1) acc = raw_mulmod(acc, base, f, p);
      base = raw_mulmod(base, base, f, p);
      ex >>= 1;
    }
    h = acc;
    Raw g = h;
    if (g.size() < 2) g.resize(2, 0);
    g[1] = (g[1] + p - 1) % p;
    trim(g);
    Raw d = raw_gcd(f, g, p);
    if (d.size() > 1) return false;
  }
  return true;
}

inline uint64_t checked_power(uint32_t p, uint32_t e) {
  uint64_t q = 1;
  for (uint32_t j = 0; j < e; ++j) {
    if (q > kMaxFieldSize / p) throw ResourceLimit("field size p^e exceeds 2^62");
    q *= p;
  }
  return q;
}

inline uint64_t slow_mul(const Config& c, uint64_t a, uint64_t b) {
  const uint32_t p = c.p, e = c.e;
  if (e == 1) return a * b % p;
  uint64_t da[64], db[64], prod[128] = {};
  for (uint32_t j = 0; j < e; ++j) {
    da[j] = a % p;
    a /= p;
    db[j] = b % p;
    b /= p;
  }
  for (uint32_t i = 0; i < e; ++i) {
    if (!da[i]) continue;
    for (uint32_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  }
  for (uint32_t k = 2 * e - 2; k >= e; --k) {
    const uint64_t t = prod[k];
    if (!t) continue;
    prod[k] = 0;
    for (uint32_t j = 0; j < e; ++j)
      prod[k - e + j] = (prod[k - e + j] + (p - t) * c.modulus[j]) % p;
  }
  uint64_t r = 0;
  for (uint32_t j = e; j-- > 0;) r = r * p + prod[j];
  return r;
}

inline uint64_t slow_pow(const Config& c, uint64_t a, uint64_t n) {
  uint64_t r = 1;
  while (n) {
    if (n & 1) r = slow_mul(c, r, a);
    a = slow_mul(c, a, a);
    n >>= 1;
  }
  return r;
}

inline uint64_t digit_add(const Config& c, uint64_t a, uint64_t b) {
  if (c.p == 2) return a ^ b;
  if (!c.add_table.empty()) return c.add_table[a * c.q + b];
  uint64_t r = 0;
  for (uint32_t j = 0; j < c.e; ++j) {
    r += ((a % c.p + b % c.p) % c.p) * c.pow_p[j];
    a /= c.p;
    b /= c.p;
  }
  return r;
}

inline uint64_t digit_neg(const Config& c, uint64_t a) {
  if (c.p == 2) return a;
  uint64_t r = 0;
  for (uint32_t j = 0; j < c.e; ++j) {
    r += ((c.p - a % c.p) % c.p) * c.pow_p[j];
    a /= c.p;
  }
  return r;
}

inline void build_tables(Config& c) {
  if (c.p != 2 && c.q <= 256) {
    c.add_table.resize(c.q * c.q);
    for (uint64_t a = 0; a < c.q; ++a)
      for (uint64_t b = 0; b < c.q; ++b) {
        uint64_t r = 0, x = a, y = b;
        for (uint32_t j = 0; j < c.e; ++j) {
          r += ((x % c.p + y % c.p) % c.p) * c.pow_p[j];
          x /= c.p;
          y /= c.p;
        }
        c.add_table[a * c.q + b] = static_cast<uint16_t>(r);
      }
  }
  if (c.q > kTableLimit || c.q <= 2) return;
  const uint64_t order = c.q - 1;
  std::vector<uint64_t> primes;
  uint64_t m = order;
  for (uint64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      primes.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) primes.push_back(m);
  uint64_t g = 1;
  for (uint64_t cand = 2; cand < c.q; ++cand) {
    bool primitive = true;
    for (uint64_t r : primes)
      if (slow_pow(c, cand, order / r) == 1) {
        primitive = false;
        break;
      }
    if (primitive) {
      g = cand;
      break;
    }
  }
  c.exp_table.resize(order);
  c.log_table.assign(c.q, 0);
  uint64_t x = 1;
  for (uint64_t k = 0; k < order; ++k) {
    c.exp_table[k] = static_cast<uint32_t>(x);
    c.log_table[x] = static_cast<uint32_t>(k);
    x = slow_mul(c, x, g);
  }
}

struct Registry {
  std::mutex mu;
  std::map<std::pair<uint32_t, std::vector<uint32_t>>, std::unique_ptr<Config>> by_modulus;
  std::map<std::pair<uint32_t, uint32_t>, const Config*> canonical;
};

inline Registry& registry() {
  static Registry r;
  return r;
}

inline const Config* intern(uint32_t p, const std::vector<uint32_t>& modulus) {
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto key = std::make_pair(p, modulus);
  auto it = reg.by_modulus.find(key);
  if (it != reg.by_modulus.end()) return it->second.get();
  auto cfg = std::make_unique<Config>();
  cfg->p = p;
  cfg->e = static_cast<uint32_t>(modulus.size() - 1);
  cfg->modulus = modulus;
  cfg->q = checked_power(p, cfg->e);
  cfg->pow_p.resize(cfg->e + 1);
  cfg->pow_p[0] = 1;
  for (uint32_t j = 1; j <= cfg->e; ++j) cfg->pow_p[j] = cfg->pow_p[j - 1] * p;
  build_tables(*cfg);
  const Config* out = cfg.get();
  reg.by_modulus.emplace(std::move(key), std::move(cfg));
  return out;
}

}  // namespace detail

class Elem {
 public:
  Elem() = default;
  Elem(const Config* cfg, uint64_t packed) : cfg_(cfg), v_(packed) {}

  const Config* config() const { return cfg_; }
  uint64_t packed() const { return v_; }
  uint32_t characteristic() const { return cfg_->p; }

  uint32_t coeff(uint32_t j) const { return static_cast<uint32_t>(v_ / cfg_->pow_p[j] % cfg_->p); }
  std::vector<uint32_t> coeffs() const {
    std::vector<uint32_t> out(cfg_->e);
    uint64_t x = v_;
    for (auto& d : out) {
      d = static_cast<uint32_t>(x % cfg_->p);
      x /= cfg_->p;
    }
    return out;
  }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_unit() const { return v_ != 0; }

  Elem zero_like() const { return {cfg_, 0}; }
  Elem one_like() const { return {cfg_, 1}; }
  Elem from_int(long long n) const {
    const long long p = cfg_->p;
    return {cfg_, static_cast<uint64_t>(((n % p) + p) % p)};
  }

  friend Elem operator+(const Elem& a, const Elem& b) {
    check(a, b);
    return {a.cfg_, detail::digit_add(*a.cfg_, a.v_, b.v_)};
  }
  friend Elem operator-(const Elem& a) { return {a.cfg_, detail::digit_neg(*a.cfg_, a.v_)}; }
  friend Elem operator-(const Elem& a, const Elem& b) {
    check(a, b);
    return {a.cfg_, detail::digit_add(*a.cfg_, a.v_, detail::digit_neg(*a.cfg_, b.v_))};
  }
  friend Elem operator*(const Elem& a, const Elem& b) {
    check(a, b);
    const Config& c = *a.cfg_;
    if (a.v_ == 0 || b.v_ == 0) return {a.cfg_, 0};
    if (c.has_tables()) {
      const uint64_t k = (uint64_t{c.log_table[a.v_]} + c.log_table[b.v_]) % (c.q - 1);
      return {a.cfg_, c.exp_table[k]};
    }
    return {a.cfg_, detail::slow_mul(c, a.v_, b.v_)};
  }
  friend Elem operator/(const Elem& a, const Elem& b) { return a * b.inv(); }
  Elem& operator+=(const Elem& o) { return *this = *this + o; }
  Elem& operator-=(const Elem& o) { return *this = *this - o; }
  Elem& operator*=(const Elem& o) { return *this = *this * o; }
  Elem& operator/=(const Elem& o) { return *this = *this / o; }

  Elem inv() const {
    if (v_ == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(cfg_->q) + ")");
    const Config& c = *cfg_;
    if (c.has_tables()) return {cfg_, c.exp_table[(c.q - 1 - c.log_table[v_]) % (c.q - 1)]};
    return {cfg_, detail::slow_pow(c, v_, c.q - 2)};
  }

  Elem pow(long long n) const {
    if (n < 0) return inv().pow(-n);
    if (n == 0) return one_like();
    if (v_ == 0) return *this;
    const Config& c = *cfg_;
    const uint64_t order = c.q - 1;
    if (c.has_tables()) {
      const unsigned __int128 k = static_cast<unsigned __int128>(c.log_table[v_]) * (uint64_t(n) % order);
      return {cfg_, c.exp_table[static_cast<uint64_t>(k % order)]};
    }
    if (order == 0) return *this;
    return {cfg_, detail::slow_pow(c, v_, static_cast<uint64_t>(n) % order == 0 ? order
                                                                                : uint64_t(n) % order)};
  }

  Elem frobenius() const { return pow(cfg_->p); }
  /// The unique b with b^p = a, computed as a^{p^{e-1}}.
  Elem pth_root() const { return pow(static_cast<long long>(cfg_->pow_p[cfg_->e - 1])); }

  /// Absolute trace to F_p, returned as an element of the same field.
  Elem trace() const {
    Elem acc = zero_like(), x = *this;
    for (uint32_t j = 0; j < cfg_->e; ++j) {
      acc += x;
      x = x.frobenius();
    }
    return acc;
  }
  uint32_t trace_value() const { return static_cast<uint32_t>(trace().v_); }

  friend bool operator==(const Elem& a, const Elem& b) { return a.cfg_ == b.cfg_ && a.v_ == b.v_; }
  friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }

  /// Lexicographic order on (c_0, c_1, ..., c_{e-1}).
  friend bool operator<(const Elem& a, const Elem& b) {
    if (a.cfg_ != b.cfg_) return a.cfg_ < b.cfg_;
    uint64_t x = a.v_, y = b.v_;
    for (uint32_t j = 0; j < a.cfg_->e; ++j) {
      const uint64_t dx = x % a.cfg_->p, dy = y % a.cfg_->p;
      if (dx != dy) return dx < dy;
      x /= a.cfg_->p;
      y /= a.cfg_->p;
    }
    return false;
  }

  /// Polynomial in the generator, highest power first, e.g. "z+1", "2*z^2+z".
  std::string str(const std::string& gen = "z") const {
    if (v_ == 0) return "0";
    const auto cs = coeffs();
    std::string out;
    for (size_t j = cs.size(); j-- > 0;) {
      if (!cs[j]) continue;
      if (!out.empty()) out += "+";
      if (j == 0) {
        out += std::to_string(cs[j]);
        continue;
      }
      if (cs[j] != 1) out += std::to_string(cs[j]) + "*";
      out += gen;
      if (j > 1) out += "^" + std::to_string(j);
    }
    return out;
  }

  /// True when the element prints without needing parentheses in a product.
  bool is_atomic() const {
    const auto cs = coeffs();
    int nonzero = 0;
    for (auto d : cs) nonzero += d != 0;
    return nonzero <= 1;
  }

 private:
  static void check(const Elem& a, const Elem& b) {
    if (a.cfg_ != b.cfg_) throw ConfigMismatch("finite field elements from different fields");
  }

  const Config* cfg_ = nullptr;
  uint64_t v_ = 0;
};

/// Handle to an interned finite field.
class Field {
 public:
  Field() = default;
  explicit Field(const Config* cfg) : cfg_(cfg) {}

  const Config* config() const { return cfg_; }
  uint32_t p() const { return cfg_->p; }
  uint32_t degree() const { return cfg_->e; }
  uint64_t size() const { return cfg_->q; }
  const std::vector<uint32_t>& modulus() const { return cfg_->modulus; }

  Elem zero() const { return {cfg_, 0}; }
  Elem one() const { return {cfg_, 1}; }
  /// The class of z; equals 0 in a prime field (modulus z).
  Elem gen() const {
    if (cfg_->e == 1) return Elem(cfg_, 0).from_int(-static_cast<long long>(cfg_->modulus[0]));
    return {cfg_, cfg_->p};
  }
  Elem from_int(long long n) const { return zero().from_int(n); }
  Elem from_coeffs(const std::vector<uint32_t>& cs) const {
    if (cs.size() > cfg_->e) throw ConfigMismatch("too many coefficients for GF element");
    uint64_t v = 0;
    for (size_t j = cs.size(); j-- > 0;) v = v * cfg_->p + cs[j] % cfg_->p;
    return {cfg_, v};
  }
  Elem element(uint64_t packed) const { return {cfg_, packed}; }

  /// All elements, ascending in coefficient-sequence order. Only for small fields.
  std::vector<Elem> elements() const {
    std::vector<Elem> out;
    out.reserve(cfg_->q);
    for (uint64_t v = 0; v < cfg_->q; ++v) out.emplace_back(cfg_, v);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string modulus_str() const {
    std::string out;
    for (size_t j = cfg_->modulus.size(); j-- > 0;) {
      const uint32_t c = cfg_->modulus[j];
      if (!c) continue;
      if (!out.empty()) out += "+";
      if (j == 0) {
        out += std::to_string(c);
        continue;
      }
      if (c != 1) out += std::to_string(c) + "*";
      out += "z";
      if (j > 1) out += "^" + std::to_string(j);
    }
    return out;
  }

  std::string str() const {
    return cfg_->e == 1 ? "GF(" + std::to_string(cfg_->p) + ")"
                        : "GF(" + std::to_string(cfg_->p) + "," + std::to_string(cfg_->e) + ")";
  }

  friend bool operator==(const Field& a, const Field& b) { return a.cfg_ == b.cfg_; }
  friend bool operator!=(const Field& a, const Field& b) { return a.cfg_ != b.cfg_; }

 private:
  const Config* cfg_ = nullptr;
};

/// F_{p^e} with the lexicographically least monic irreducible modulus, ordering
/// candidates by their coefficient sequence (c_0, ..., c_{e-1}).
inline Field make(uint32_t p, uint32_t e) {
  if (!detail::is_prime(p)) throw NonPrime(std::to_string(p) + " is not prime");
  if (p > kMaxPrime) throw ResourceLimit("characteristic above supported bound");
  if (e < 1) throw ResourceLimit("extension degree must be at least 1");
  const uint64_t q = detail::checked_power(p, e);
  {
    auto& reg = detail::registry();
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.canonical.find({p, e});
    if (it != reg.canonical.end()) return Field(it->second);
  }
  std::vector<uint32_t> mod(e + 1, 0);
  mod[e] = 1;
  if (e > 1) {
    // index enumerates (c_0, ..., c_{e-1}) with c_0 most significant; c_0 = 0 is reducible.
    bool found = false;
    for (uint64_t idx = q / p; idx < q && !found; ++idx) {
      uint64_t x = idx;
      for (uint32_t j = e; j-- > 0;) {
        mod[j] = static_cast<uint32_t>(x % p);
        x /= p;
      }
      found = detail::raw_irreducible(mod, p);
    }
    if (!found) throw ResourceLimit("no irreducible modulus found");
  }
  const Config* cfg = detail::intern(p, mod);
  auto& reg = detail::registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  reg.canonical.emplace(std::make_pair(p, e), cfg);
  return Field(cfg);
}

/// F_p[z]/(modulus) for an explicit monic irreducible modulus.
inline Field make_with_modulus(uint32_t p, const std::vector<uint32_t>& modulus) {
  if (!detail::is_prime(p)) throw NonPrime(std::to_string(p) + " is not prime");
  if (modulus.size() < 2 || modulus.back() != 1) throw ConfigMismatch("modulus must be monic of degree >= 1");
  if (!detail::raw_irreducible(modulus, p)) throw ConfigMismatch("modulus is reducible");
  return Field(detail::intern(p, modulus));
}

/// Canonical solution of x^p - x = c: exists iff Tr(c) = 0; among the p
/// solutions x + F_p the one with c_0 = 0 is lexicographically least.
inline std::optional<Elem> as_solve(const Elem& c) {
  const Config& cfg = *c.config();
  const uint32_t e = cfg.e, p = cfg.p;
  std::vector<std::vector<uint32_t>> a(e, std::vector<uint32_t>(e, 0));
  for (uint32_t j = 0; j < e; ++j) {
    const Elem basis(&cfg, cfg.pow_p[j]);
    const auto img = (basis.frobenius() - basis).coeffs();
    for (uint32_t r = 0; r < e; ++r) a[r][j] = img[r];
  }
  auto sol = linalg::solve_mod_p(std::move(a), c.coeffs(), p);
  if (!sol) return std::nullopt;
  (*sol)[0] = 0;
  return Field(&cfg).from_coeffs(*sol);
}

inline Elem trace(const Elem& a) { return a.trace(); }
inline Elem pth_root(const Elem& a) { return a.pth_root(); }

}  // namespace katoforge::gf
