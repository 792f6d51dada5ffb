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
#include <vector>

#include "chimpe/dense_state.hpp"
#include "chimpe/mps.hpp"

namespace chimpe {

/// Overlaps below this modulus are reported as orthogonal.
inline constexpr double kOrthogonalOverlap = 1e-15;

/// -log2 |<a|b>|^2, or nullopt if the overlap vanishes.
std::optional<double> log_fidelity_distance(Complex overlap_amplitude);

struct MpeOptions {
  int restarts = 10;
  std::uint64_t seed = 0;
  int max_sweeps = 500;
  double tol_bits = 1e-10;
};

/// One variational sweep run from a given initial MPS.
struct SweepRun {
  MatrixProductState mps;
  /// Objective -log2|<psi|phi>|^2 after each full (left-right-left) sweep;
  /// the first entry is the value of the initial state.
  std::vector<double> history;
  bool converged = false;
  bool orthogonal = false;
};

/// Overlap maximizer against a fixed target, by alternating exact
/// single-site updates in mixed-canonical gauge.
///
/// The target is held as an exact (untruncated) right-canonical MPS so every
/// local environment is a small tensor-network contraction.
class OverlapSweeper {
 public:
  explicit OverlapSweeper(const DenseState& target);
  explicit OverlapSweeper(MatrixProductState target);

  const MatrixProductState& target() const noexcept { return target_; }

  /// Sweeps from `initial` (any gauge, nonzero norm); bonds never change.
  SweepRun run(const MatrixProductState& initial, int max_sweeps, double tol_bits) const;

 private:
  MatrixProductState target_;
};

struct MpeResult {
  std::size_t chi = 1;
  /// E_chi in bits; nullopt is the orthogonal outcome.
  std::optional<double> value_bits;
  MatrixProductState best_mps = MatrixProductState::zero(1);
  int restarts_used = 0;
  int sweeps_used = 0;
  /// False when the best restart stopped at max_sweeps.
  bool converged = false;
  std::size_t best_restart = 0;
};

/// chi-specified matrix product entanglement: the minimum over restarts of
/// -log2|<psi|phi>|^2 across normalized MPSs phi with bonds <= chi. Restart 0
/// starts from the truncated exact MPS of psi; the rest from random MPSs.
MpeResult chi_mpe(const DenseState& psi, std::size_t chi, const MpeOptions& options = {});

struct GeOracleOptions {
  int restarts = 64;
  std::uint64_t seed = 0;
  int max_sweeps = 5000;
  double tol = 1e-14;
};

/// Geometric entanglement in bits by coordinate ascent over single-qubit
/// states directly on the dense amplitudes, multi-start. Limited to N <= 8.
double ge_oracle(const DenseState& psi, const GeOracleOptions& options = {});

inline constexpr std::size_t kGeOracleMaxQubits = 8;

/// Negative log fidelity -log2|<psi|phi>|^2, nullopt when orthogonal.
std::optional<double> nlf(const DenseState& psi, const DenseState& phi);

}  // namespace chimpe
