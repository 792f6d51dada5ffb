// Copyright 2026 The chimpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "chimpe/dense_state.hpp"
#include "chimpe/tensor.hpp"

namespace chimpe::testing {

inline std::vector<Complex> random_values(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> out(count);
  for (auto& z : out) z = {g(rng), g(rng)};
  return out;
}

inline ComplexTensor random_tensor(std::vector<std::size_t> shape, std::uint64_t seed) {
  std::size_t count = 1;
  for (auto d : shape) count *= d;
  return ComplexTensor(std::move(shape), random_values(count, seed));
}

inline DenseState random_state(std::size_t n, std::uint64_t seed) {
  return DenseState::normalized(n, random_values(std::size_t{1} << n, seed));
}

// Gram-Schmidt on the columns of a random complex matrix; independent of the
// library's QR.
inline ComplexTensor random_unitary(std::size_t n, std::uint64_t seed) {
  auto v = random_values(n * n, seed);
  std::vector<std::vector<Complex>> cols(n, std::vector<Complex>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) cols[j][i] = v[i * n + j];
    for (std::size_t k = 0; k < j; ++k) {
      Complex dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(cols[k][i]) * cols[j][i];
      for (std::size_t i = 0; i < n; ++i) cols[j][i] -= dot * cols[k][i];
    }
    double nrm = 0.0;
    for (auto z : cols[j]) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    for (auto& z : cols[j]) z /= nrm;
  }
  ComplexTensor u({n, n});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) u.at({i, j}) = cols[j][i];
  }
  return u;
}

inline ComplexTensor naive_matmul(const ComplexTensor& a, const ComplexTensor& b) {
  const std::size_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
  ComplexTensor c({m, n});
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t l = 0; l < k; ++l) s += a.at({i, l}) * b.at({l, j});
      c.at({i, j}) = s;
    }
  }
  return c;
}

inline double max_abs_diff(const ComplexTensor& a, const ComplexTensor& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

// |<a|b>|^2 by direct summation.
inline double dense_fidelity(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return std::norm(s);
}

}  // namespace chimpe::testing
