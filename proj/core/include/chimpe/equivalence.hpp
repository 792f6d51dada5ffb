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

// Exact correspondence between bond-dimension-2 MPSs and single-layer
// staircase circuits acting on |0...0>.
//
// Gate p of the layer takes qubit p (carrying the incoming bond a_{p-1}) and
// a fresh |0> on qubit p+1, and outputs the final value of qubit p together
// with the outgoing bond a_p on qubit p+1:
//
//   A[p]_{s, l, r} = <s r| G_p |l 0>,   A[N-1]_{s, l} = delta_{s l}.
//
// For p = 0 the incoming bond is the boundary, i.e. qubit 0 starts in |0>.

#include <vector>

#include "chimpe/circuit.hpp"
#include "chimpe/mps.hpp"

namespace chimpe {

/// Completion data of one synthesized gate.
struct KernelCompletion {
  /// M = B B^dagger over the specified gate columns B (4 x k).
  ComplexTensor m_matrix;
  std::vector<double> eigenvalues;  // ascending
  /// Orthonormal basis of ker M (4 - k vectors, each 4 entries), in the
  /// order they were written into the free gate columns.
  std::vector<ComplexTensor> kernel_vectors;
};

/// Fills the columns of a unitary not given by `specified`: `free_columns`
/// receive, in order, the zero-eigenvalue eigenvectors of B B^dagger
/// (ascending eigenvalue, largest component made real-positive, then
/// Gram-Schmidt against B and each other).
/// `specified` maps column index -> 4-vector; the block must be an isometry.
ComplexTensor complete_gate(const std::vector<std::pair<std::size_t, Eigen::Vector4cd>>& specified,
                            KernelCompletion* completion = nullptr);

/// Site tensors read off a depth-1 circuit. Throws for depth != 1.
MatrixProductState circuit_to_mps(const StaircaseCircuit& c);

/// Right-canonical representative with every internal bond exactly 2 and
/// last site equal to the 2x2 identity. Throws if any bond exceeds 2.
MatrixProductState gauge_fix_last_tensor(const MatrixProductState& phi);

struct CircuitSynthesis {
  StaircaseCircuit circuit;
  /// One entry per gate position.
  std::vector<KernelCompletion> completions;
};

/// Single-layer circuit preparing `phi` (bonds <= 2, normalized).
CircuitSynthesis synthesize_circuit(const MatrixProductState& phi);
StaircaseCircuit mps_to_circuit(const MatrixProductState& phi);

}  // namespace chimpe
