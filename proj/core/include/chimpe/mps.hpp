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
#include "chimpe/linalg.hpp"
#include "chimpe/tensor.hpp"

namespace chimpe {

enum class CanonicalForm { kNone, kLeft, kRight, kMixed };

/// Open-boundary matrix product state of N qubits.
///
/// Site n is a rank-3 tensor with index order (physical s_n, left bond,
/// right bond). The outer bonds of the first and last site have dimension 1.
class MatrixProductState {
 public:
  explicit MatrixProductState(std::vector<ComplexTensor> sites,
                              CanonicalForm form = CanonicalForm::kNone, std::size_t center = 0);

  /// Product state from one 2-vector per qubit (not normalized).
  static MatrixProductState product(std::span<const std::array<Complex, 2>> qubits);
  static MatrixProductState zero(std::size_t n_qubits);

  std::size_t size() const noexcept { return sites_.size(); }
  const ComplexTensor& site(std::size_t n) const { return sites_.at(n); }
  std::span<const ComplexTensor> sites() const noexcept { return sites_; }
  /// Replaces a site; the canonical flag is reset to none.
  void set_site(std::size_t n, ComplexTensor tensor);

  std::size_t left_dim(std::size_t n) const { return sites_.at(n).dim(1); }
  std::size_t right_dim(std::size_t n) const { return sites_.at(n).dim(2); }
  /// Internal bond dimensions, N-1 of them.
  std::vector<std::size_t> bond_dims() const;
  std::size_t max_bond() const;

  CanonicalForm canonical_form() const noexcept { return form_; }
  std::size_t center() const noexcept { return center_; }

  /// Slice A[s] of site n as a (left x right) matrix.
  Matrix slice(std::size_t n, std::size_t s) const;

 private:
  std::vector<ComplexTensor> sites_;
  CanonicalForm form_;
  std::size_t center_;
};

/// Site tensor of shape (2, left, right) from its two slices.
ComplexTensor site_from_slices(const Matrix& a0, const Matrix& a1);

/// Successive SVDs from the left, keeping at most `chi_max` values per cut
/// (and dropping exact zeros), then right-canonicalized.
MatrixProductState from_dense(const DenseState& psi,
                              std::optional<std::size_t> chi_max = std::nullopt);

/// Raw contraction of the tensor train into 2^N amplitudes.
std::vector<Complex> to_amplitudes(const MatrixProductState& phi,
                                   std::size_t max_qubits = kDefaultDenseCap);
DenseState to_dense(const MatrixProductState& phi, std::size_t max_qubits = kDefaultDenseCap);

/// Right-canonical, unit-norm representative of the same state. Bond
/// dimensions never grow and shrink only where a bond exceeds what its
/// neighbours can support.
MatrixProductState canonicalize_right(const MatrixProductState& phi);

struct TruncationResult {
  MatrixProductState state;
  /// Squared Schmidt weight discarded at each cut, relative to the state at
  /// that step (index = cut - 1).
  std::vector<double> discarded_weight;
};

TruncationResult truncate_with_report(const MatrixProductState& phi, std::size_t chi);
MatrixProductState truncate_to_chi(const MatrixProductState& phi, std::size_t chi);

/// <a|b>.
Complex overlap(const MatrixProductState& a, const MatrixProductState& b);
double norm(const MatrixProductState& phi);

/// Schmidt values across the cut between sites `cut` and `cut + 1`
/// (1-based cut, 1 <= cut <= N-1), descending, for the normalized state.
std::vector<double> schmidt_values(const MatrixProductState& phi, std::size_t cut);
/// Von Neumann entropy of the Schmidt spectrum at `cut`, in bits.
double entanglement_entropy(const MatrixProductState& phi, std::size_t cut);

/// Max over sites of the right-isometry residual |sum_{s,r} A A^* - I|.
double right_canonical_residual(const MatrixProductState& phi);
double left_canonical_residual(const MatrixProductState& phi);

/// Normalized right-canonical MPS with Gaussian random tensors and bond
/// dimension exactly min(chi, 2^min(n, N-n)) at every cut.
MatrixProductState random_mps(std::size_t n_qubits, std::size_t chi, std::uint64_t seed);

}  // namespace chimpe
