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

// Galois rings GR(p^m, n) = (Z/p^m)[z]/(M) where M lifts the modulus of a
// finite field digit-wise to [0, p).

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "katoforge/error.hpp"
#include "katoforge/gf.hpp"

namespace katoforge {

class GaloisRing {
 public:
  /// Ring lifting `residue` to characteristic p^m.
  static std::shared_ptr<const GaloisRing> make(const gf::Field& residue, uint32_t m) {
    auto r = std::shared_ptr<GaloisRing>(new GaloisRing());
    r->residue_ = residue;
    r->p_ = residue.p();
    r->m_ = m;
    r->n_ = residue.degree();
    unsigned __int128 mod = 1;
    for (uint32_t i = 0; i < m; ++i) {
      mod *= r->p_;
      if (mod > (static_cast<unsigned __int128>(1) << 62)) throw ResourceLimit("p^m exceeds 2^62");
    }
    r->mod_ = static_cast<uint64_t>(mod);
    for (auto c : residue.modulus()) r->modulus_.push_back(c);
    r->build_traces();
    return r;
  }

  uint32_t p() const { return p_; }
  uint32_t level() const { return m_; }
  uint32_t degree() const { return n_; }
  uint64_t modulus_int() const { return mod_; }
  const gf::Field& residue_field() const { return residue_; }
  /// Tr(z^j) for j < n.
  const std::vector<uint64_t>& basis_traces() const { return traces_; }

  uint64_t add(uint64_t a, uint64_t b) const {
    const uint64_t s = a + b;
    return s >= mod_ ? s - mod_ : s;
  }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + mod_ - b; }
  uint64_t mul(uint64_t a, uint64_t b) const {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % mod_);
  }

  /// Product of coefficient vectors of length n, reduced modulo M.
  std::vector<uint64_t> mul_vec(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) const {
    std::vector<uint64_t> prod(2 * n_ - 1, 0);
    for (uint32_t i = 0; i < n_; ++i) {
      if (!a[i]) continue;
      for (uint32_t j = 0; j < n_; ++j) prod[i + j] = add(prod[i + j], mul(a[i], b[j]));
    }
    for (size_t k = prod.size(); k-- > n_;) {
      const uint64_t t = prod[k];
      if (!t) continue;
      for (uint32_t j = 0; j < n_; ++j) prod[k - n_ + j] = sub(prod[k - n_ + j], mul(t, modulus_[j]));
      prod[k] = 0;
    }
    prod.resize(n_);
    return prod;
  }

 private:
  GaloisRing() = default;

  void build_traces() {
    traces_.assign(n_, 0);
    // Tr(z^j) is the trace of multiplication by z^j on the basis z^k.
    for (uint32_t j = 0; j < n_; ++j) {
      uint64_t t = 0;
      for (uint32_t k = 0; k < n_; ++k) {
        std::vector<uint64_t> a(n_, 0), b(n_, 0);
        a[j] = 1;
        b[k] = 1;
        t = add(t, mul_vec(a, b)[k]);
      }
      traces_[j] = t;
    }
  }

  gf::Field residue_;
  uint32_t p_ = 0, m_ = 0, n_ = 0;
  uint64_t mod_ = 0;
  std::vector<uint64_t> modulus_;
  std::vector<uint64_t> traces_;

  friend class GRElem;
};

class GRElem {
 public:
  GRElem() = default;
  GRElem(std::shared_ptr<const GaloisRing> ring, std::vector<uint64_t> c) : ring_(std::move(ring)), c_(std::move(c)) {}

  static GRElem zero(std::shared_ptr<const GaloisRing> ring) {
    const uint32_t n = ring->degree();
    return GRElem(std::move(ring), std::vector<uint64_t>(n, 0));
  }

  /// Digit-wise lift of a residue field element.
  static GRElem lift(std::shared_ptr<const GaloisRing> ring, const gf::Elem& a) {
    std::vector<uint64_t> c;
    for (auto d : a.coeffs()) c.push_back(d);
    return GRElem(std::move(ring), std::move(c));
  }

  const GaloisRing& ring() const { return *ring_; }
  const std::vector<uint64_t>& coeffs() const { return c_; }

  gf::Elem reduce() const {
    std::vector<uint32_t> d;
    for (auto x : c_) d.push_back(static_cast<uint32_t>(x % ring_->p_));
    return ring_->residue_.from_coeffs(d);
  }

  bool is_zero() const {
    for (auto x : c_)
      if (x) return false;
    return true;
  }
  bool is_one() const {
    for (size_t j = 0; j < c_.size(); ++j)
      if (c_[j] != (j == 0 ? 1u : 0u)) return false;
    return true;
  }
  bool is_unit() const { return !reduce().is_zero(); }

  GRElem zero_like() const { return zero(ring_); }
  GRElem one_like() const { return from_int(1); }
  GRElem from_int(long long n) const {
    const long long mod = static_cast<long long>(ring_->mod_);
    GRElem r = zero(ring_);
    r.c_[0] = static_cast<uint64_t>(((n % mod) + mod) % mod);
    return r;
  }

  friend GRElem operator+(const GRElem& a, const GRElem& b) {
    GRElem r(a);
    for (size_t j = 0; j < r.c_.size(); ++j) r.c_[j] = a.ring_->add(a.c_[j], b.c_[j]);
    return r;
  }
  friend GRElem operator-(const GRElem& a, const GRElem& b) {
    GRElem r(a);
    for (size_t j = 0; j < r.c_.size(); ++j) r.c_[j] = a.ring_->sub(a.c_[j], b.c_[j]);
    return r;
  }
  friend GRElem operator-(const GRElem& a) { return a.zero_like() - a; }
  friend GRElem operator*(const GRElem& a, const GRElem& b) { return GRElem(a.ring_, a.ring_->mul_vec(a.c_, b.c_)); }

  GRElem pow(unsigned long long n) const {
    GRElem acc = one_like(), base = *this;
    while (n) {
      if (n & 1) acc = acc * base;
      n >>= 1;
      if (n) base = base * base;
    }
    return acc;
  }

  /// Inverse of a unit by Newton iteration from the residue field inverse.
  GRElem inv() const {
    const gf::Elem r = reduce();
    if (r.is_zero()) throw DivisionByZero("non-unit in Galois ring");
    GRElem x = lift(ring_, r.inv());
    const GRElem two = from_int(2);
    for (uint32_t prec = 1; prec < ring_->m_; prec *= 2) x = x * (two - *this * x);
    return x;
  }

  /// Tr to Z/p^m.
  uint64_t trace() const {
    uint64_t t = 0;
    for (size_t j = 0; j < c_.size(); ++j) t = ring_->add(t, ring_->mul(c_[j], ring_->traces_[j]));
    return t;
  }

  friend bool operator==(const GRElem& a, const GRElem& b) { return a.c_ == b.c_; }
  friend bool operator!=(const GRElem& a, const GRElem& b) { return !(a == b); }

  std::string str() const {
    std::string out;
    for (size_t j = c_.size(); j-- > 0;) {
      if (!c_[j]) continue;
      if (!out.empty()) out += "+";
      std::string mono = j == 0 ? "" : (j == 1 ? "z" : "z^" + std::to_string(j));
      if (mono.empty()) out += std::to_string(c_[j]);
      else out += (c_[j] == 1 ? "" : std::to_string(c_[j]) + "*") + mono;
    }
    return out.empty() ? "0" : out;
  }
  bool is_atomic() const { return true; }

 private:
  std::shared_ptr<const GaloisRing> ring_;
  std::vector<uint64_t> c_;
};

}  // namespace katoforge
