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

#include "chimpe/dense_state.hpp"

#include <cmath>
#include <string>

#include "chimpe/error.hpp"

namespace chimpe {

DenseState::DenseState(std::size_t n_qubits, std::vector<Complex> amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_ == 0) throw std::invalid_argument("a state needs at least one qubit");
  if (n_ >= 63 || amps_.size() != (std::size_t{1} << n_)) {
    throw DimensionError("expected 2^" + std::to_string(n_) + " amplitudes, got " +
                         std::to_string(amps_.size()));
  }
  for (const auto& z : amps_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NumericalError("state amplitudes must be finite");
    }
  }
}

DenseState DenseState::normalized(std::size_t n_qubits, std::vector<Complex> amplitudes) {
  DenseState psi(n_qubits, std::move(amplitudes));
  const double nrm = psi.norm();
  if (nrm == 0.0) throw NumericalError("cannot normalize the zero vector");
  for (auto& z : psi.amps_) z /= nrm;
  return psi;
}

DenseState DenseState::basis(std::size_t n_qubits, std::uint64_t index) {
  if (n_qubits == 0 || n_qubits > kDefaultDenseCap) {
    throw std::invalid_argument("qubit count out of range");
  }
  std::vector<Complex> amps(std::size_t{1} << n_qubits);
  if (index >= amps.size()) throw std::invalid_argument("basis index out of range");
  amps[index] = 1.0;
  return DenseState(n_qubits, std::move(amps));
}

DenseState DenseState::ghz(std::size_t n_qubits) {
  DenseState psi = zero(n_qubits);
  psi.amps_.front() = M_SQRT1_2;
  psi.amps_.back() = M_SQRT1_2;
  return psi;
}

DenseState DenseState::w_state(std::size_t n_qubits) {
  std::vector<Complex> amps(std::size_t{1} << n_qubits);
  for (std::size_t q = 0; q < n_qubits; ++q) amps[std::size_t{1} << q] = 1.0;
  return normalized(n_qubits, std::move(amps));
}

DenseState DenseState::product(std::span<const std::array<Complex, 2>> qubits) {
  std::vector<Complex> amps{1.0};
  for (const auto& q : qubits) {
    std::vector<Complex> next(amps.size() * 2);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      next[2 * i] = amps[i] * q[0];
      next[2 * i + 1] = amps[i] * q[1];
    }
    amps = std::move(next);
  }
  return normalized(qubits.size(), std::move(amps));
}

double DenseState::norm() const {
  double acc = 0.0;
  for (const auto& z : amps_) acc += std::norm(z);
  return std::sqrt(acc);
}

bool DenseState::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

DenseState DenseState::scaled(Complex factor) const {
  DenseState out = *this;
  for (auto& z : out.amps_) z *= factor;
  return out;
}

Complex inner(const DenseState& a, const DenseState& b) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionError("inner product of unequal sizes");
  Complex acc{0.0, 0.0};
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double fidelity(const DenseState& a, const DenseState& b) {
  const double na = a.norm();
  const double nb = b.norm();
  return std::norm(inner(a, b)) / (na * na * nb * nb);
}

void require_normalized(const DenseState& psi, const char* op) {
  if (!psi.is_normalized(1e-10)) {
    throw std::invalid_argument(std::string(op) + " requires a normalized state");
  }
}

}  // namespace chimpe
