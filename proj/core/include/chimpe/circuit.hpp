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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chimpe/dense_state.hpp"
#include "chimpe/tensor.hpp"

namespace chimpe {

inline constexpr double kUnitarityTol = 1e-10;

/// D layers of N-1 two-qubit gates. Within a layer gate p acts on qubits
/// (p, p+1), applied in ascending p; every layer repeats the same stair.
///
/// Gates are 4x4 matrices in the basis |q_p q_{p+1}> = 00, 01, 10, 11,
/// row = output, column = input.
class StaircaseCircuit {
 public:
  /// All-identity circuit.
  StaircaseCircuit(std::size_t n_qubits, std::size_t depth);
  StaircaseCircuit(std::size_t n_qubits, std::size_t depth, std::vector<ComplexTensor> gates);

  std::size_t n_qubits() const noexcept { return n_; }
  std::size_t depth() const noexcept { return depth_; }
  std::size_t gates_per_layer() const noexcept { return n_ - 1; }
  std::size_t gate_count() const noexcept { return gates_.size(); }

  const ComplexTensor& gate(std::size_t layer, std::size_t pos) const;
  /// Throws if `g` is not a 4x4 unitary within kUnitarityTol.
  void set_gate(std::size_t layer, std::size_t pos, ComplexTensor g);

  /// Gate in application order k = layer * (N-1) + pos.
  const ComplexTensor& gate_at(std::size_t k) const { return gates_.at(k); }
  void set_gate_at(std::size_t k, ComplexTensor g);

  /// Appends `extra` identity layers after the existing ones.
  StaircaseCircuit padded(std::size_t extra) const;

 private:
  std::size_t index(std::size_t layer, std::size_t pos) const;

  std::size_t n_;
  std::size_t depth_;
  std::vector<ComplexTensor> gates_;
};

/// Applies `g` (4x4, row-major) to qubits (q, q+1) in place.
void apply_two_qubit(std::span<Complex> amps, std::size_t n_qubits, std::size_t q,
                     const ComplexTensor& g);
/// Applies g^dagger to qubits (q, q+1) in place.
void apply_two_qubit_adjoint(std::span<Complex> amps, std::size_t n_qubits, std::size_t q,
                             const ComplexTensor& g);

DenseState apply_circuit(const StaircaseCircuit& c, const DenseState& input);
/// The prepared state U|0...0>.
DenseState prepare(const StaircaseCircuit& c);

/// Each gate is the unitary factor of a complex Gaussian 4x4 matrix
/// (QR with the R diagonal phases absorbed, i.e. Haar distributed).
StaircaseCircuit random_circuit(std::size_t n_qubits, std::size_t depth, std::uint64_t seed);

/// E with <psi|Phi> = tr(W E) when gate (layer, pos) is replaced by W and
/// all other gates are held fixed; Phi prepared from |0...0>.
ComplexTensor gate_environment(const StaircaseCircuit& c, const DenseState& psi,
                               std::size_t layer, std::size_t pos);

struct FitOptions {
  int restarts = 5;
  std::uint64_t seed = 0;
  int max_sweeps = 300;
  double tol_bits = 1e-9;
  /// Optional starting point used as restart 0 (must match N and depth).
  std::optional<StaircaseCircuit> initial;
  /// Record |<psi|Phi>| after every single-gate update (tests only).
  bool record_updates = false;
};

struct FitResult {
  StaircaseCircuit circuit;
  /// F in bits; nullopt if the best prepared state is orthogonal to psi.
  std::optional<double> f_bits;
  bool converged = false;
  int sweeps_used = 0;
  std::size_t best_restart = 0;
  /// F after each sweep of the best restart; entry 0 is the initial value.
  std::vector<double> history;
  /// Per-update overlap moduli of the best restart, if requested.
  std::vector<double> update_overlaps;
};

/// Maximizes |<psi|U|0...0>| over D-layer staircase circuits by sweeping
/// gates forward then backward, replacing each by the polar factor of its
/// environment.
FitResult fit_circuit(const DenseState& psi, std::size_t depth, const FitOptions& options = {});

}  // namespace chimpe
