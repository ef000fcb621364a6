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

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace katoforge::linalg {

/// Solves A x = b over Z/p by Gauss-Jordan elimination. A is given row-major
/// (rows x cols). Free variables are set to zero. Returns nullopt when the
/// system is inconsistent.
inline std::optional<std::vector<uint32_t>> solve_mod_p(std::vector<std::vector<uint32_t>> a,
                                                        std::vector<uint32_t> b, uint32_t p) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  auto inv = [p](uint64_t v) {
    uint64_t r = 1, base = v % p, e = p - 2;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return r;
  };
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    const uint64_t s = inv(a[r][c]);
    for (size_t k = c; k < cols; ++k) a[r][k] = static_cast<uint32_t>(a[r][k] * s % p);
    b[r] = static_cast<uint32_t>(b[r] * s % p);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const uint64_t f = a[i][c];
      for (size_t k = c; k < cols; ++k)
        a[i][k] = static_cast<uint32_t>((a[i][k] + (p - f) * a[r][k]) % p);
      b[i] = static_cast<uint32_t>((b[i] + (p - f) * b[r]) % p);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<uint32_t> x(cols, 0);
  for (size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

}  // namespace katoforge::linalg
