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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chimpe/tensor.hpp"

namespace chimpe {

/// Largest qubit count for which dense 2^N vectors are materialized.
inline constexpr std::size_t kDefaultDenseCap = 24;

/// Pure state of N qubits as 2^N amplitudes; basis index bits read
/// |s_1 s_2 ... s_N> with s_1 the most significant.
///
/// The container accepts any finite, nonzero vector; operations that need a
/// unit vector check `is_normalized()`.
class DenseState {
 public:
  DenseState(std::size_t n_qubits, std::vector<Complex> amplitudes);

  /// Scales `amplitudes` to unit norm. Throws NumericalError on zero norm.
  static DenseState normalized(std::size_t n_qubits, std::vector<Complex> amplitudes);
  static DenseState basis(std::size_t n_qubits, std::uint64_t index);
  static DenseState zero(std::size_t n_qubits) { return basis(n_qubits, 0); }
  static DenseState ghz(std::size_t n_qubits);
  static DenseState w_state(std::size_t n_qubits);
  /// Product state from one (unnormalized) 2-vector per qubit.
  static DenseState product(std::span<const std::array<Complex, 2>> qubits);

  std::size_t n_qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  std::span<Complex> amplitudes() noexcept { return amps_; }

  double norm() const;
  bool is_normalized(double tol = 1e-12) const;
  /// Multiplies every amplitude by `factor`.
  DenseState scaled(Complex factor) const;

 private:
  std::size_t n_;
  std::vector<Complex> amps_;
};

/// <a|b>.
Complex inner(const DenseState& a, const DenseState& b);
/// |<a|b>|^2 / (|a|^2 |b|^2).
double fidelity(const DenseState& a, const DenseState& b);

void require_normalized(const DenseState& psi, const char* op);

}  // namespace chimpe
