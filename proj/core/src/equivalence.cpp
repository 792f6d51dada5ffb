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

#include "chimpe/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chimpe/error.hpp"
#include "chimpe/linalg.hpp"

namespace chimpe {
namespace {

// Gauge-fixed tensors must be isometries to this accuracy before their
// entries are written into gate columns.
constexpr double kSynthesisIsometryTol = 1e-8;

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

// Makes the largest-modulus entry real and positive.
Eigen::Vector4cd fix_phase(Eigen::Vector4cd v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  const Complex p = v(arg);
  if (std::abs(p) > 0.0) v *= std::conj(p) / std::abs(p);
  return v;
}

// Unit vector orthogonal to the rows of `rows` (k x d, k < d): the
// normalized residual of the standard basis vector least covered by them.
Eigen::VectorXcd orthogonal_complement_row(const Matrix& rows) {
  const Eigen::Index d = rows.cols();
  Eigen::VectorXcd best;
  double best_norm = -1.0;
  for (Eigen::Index e = 0; e < d; ++e) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Unit(d, e);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index r = 0; r < rows.rows(); ++r) {
        const Eigen::VectorXcd u = rows.row(r).adjoint();
        v -= u * u.dot(v);
      }
    }
    if (v.norm() > best_norm) {
      best_norm = v.norm();
      best = v;
    }
  }
  return best / best.norm();
}

// Widens bond `cut` (between sites cut-1 and cut, 0-based sites) from 1 to 2:
// zero column on the left site, orthonormal extra row on the right site.
void pad_bond(std::vector<ComplexTensor>& sites, std::size_t cut) {
  ComplexTensor& left = sites[cut - 1];
  ComplexTensor& right = sites[cut];
  const std::size_t ll = left.dim(1);
  ComplexTensor wider_left({2, ll, 2});
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t l = 0; l < ll; ++l) wider_left.at({s, l, 0}) = left.at({s, l, 0});
  }
  left = std::move(wider_left);

  const std::size_t rr = right.dim(2);
  Matrix row(1, 2 * rr);
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t r = 0; r < rr; ++r) row(0, idx(s * rr + r)) = right.at({s, 0, r});
  }
  const Eigen::VectorXcd extra = orthogonal_complement_row(row);
  ComplexTensor taller({2, 2, rr});
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t r = 0; r < rr; ++r) {
      taller.at({s, 0, r}) = right.at({s, 0, r});
      taller.at({s, 1, r}) = std::conj(extra(idx(s * rr + r)));
    }
  }
  right = std::move(taller);
}

}  // namespace

ComplexTensor complete_gate(const std::vector<std::pair<std::size_t, Eigen::Vector4cd>>& specified,
                            KernelCompletion* completion) {
  const std::size_t k = specified.size();
  if (k == 0 || k > 4) throw std::invalid_argument("between 1 and 4 gate columns must be given");
  Matrix b(4, idx(k));
  std::vector<bool> used(4, false);
  for (std::size_t j = 0; j < k; ++j) {
    const auto& [col, v] = specified[j];
    if (col >= 4 || used[col]) throw std::invalid_argument("invalid gate column index");
    used[col] = true;
    b.col(idx(j)) = v;
  }
  if (isometry_residual(b) > kSynthesisIsometryTol) {
    throw NumericalError("specified gate columns are not orthonormal (residual " +
                         std::to_string(isometry_residual(b)) + ")");
  }

  const Matrix m = b * b.adjoint();
  const EighResult eig = eigh(from_matrix(m), 1e-12);
  const Matrix vecs = to_matrix(eig.vectors);

  Matrix basis = b;
  std::vector<ComplexTensor> kernel;
  Matrix gate = Matrix::Zero(4, 4);
  for (const auto& [col, v] : specified) gate.col(idx(col)) = v;
  std::size_t next = 0;
  for (std::size_t col = 0; col < 4; ++col) {
    if (used[col]) continue;
    Eigen::Vector4cd v = fix_phase(vecs.col(idx(next++)));
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < basis.cols(); ++j) v -= basis.col(j) * basis.col(j).dot(v);
    }
    v.normalize();
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = v;
    gate.col(idx(col)) = v;
    ComplexTensor kv({4});
    for (Eigen::Index i = 0; i < 4; ++i) kv.data()[static_cast<std::size_t>(i)] = v(i);
    kernel.push_back(std::move(kv));
  }

  ComplexTensor g = from_matrix(gate);
  if (unitarity_residual(g) > kUnitarityTol) {
    throw NumericalError("completed gate is not unitary");
  }
  if (completion) {
    completion->m_matrix = from_matrix(m);
    completion->eigenvalues = eig.values;
    completion->kernel_vectors = std::move(kernel);
  }
  return g;
}

MatrixProductState circuit_to_mps(const StaircaseCircuit& c) {
  if (c.depth() != 1) {
    throw std::invalid_argument("circuit_to_mps needs a single-layer circuit, got depth " +
                                std::to_string(c.depth()));
  }
  const std::size_t n = c.n_qubits();
  std::vector<ComplexTensor> sites;
  for (std::size_t p = 0; p + 1 < n; ++p) {
    const ComplexTensor& g = c.gate(0, p);
    const std::size_t left = p == 0 ? 1 : 2;
    ComplexTensor a({2, left, 2});
    for (std::size_t s = 0; s < 2; ++s) {
      for (std::size_t l = 0; l < left; ++l) {
        for (std::size_t r = 0; r < 2; ++r) a.at({s, l, r}) = g.at({s * 2 + r, l * 2});
      }
    }
    sites.push_back(std::move(a));
  }
  ComplexTensor last({2, 2, 1});
  last.at({0, 0, 0}) = 1.0;
  last.at({1, 1, 0}) = 1.0;
  sites.push_back(std::move(last));
  return MatrixProductState(std::move(sites), CanonicalForm::kRight, 0);
}

MatrixProductState gauge_fix_last_tensor(const MatrixProductState& phi) {
  if (phi.size() < 2) throw std::invalid_argument("gauge fixing needs at least two sites");
  if (phi.max_bond() > 2) {
    throw std::invalid_argument("gauge fixing needs bonds <= 2, got " +
                                std::to_string(phi.max_bond()));
  }
  const MatrixProductState rc = canonicalize_right(phi);
  std::vector<ComplexTensor> sites(rc.sites().begin(), rc.sites().end());
  for (std::size_t cut = 1; cut < sites.size(); ++cut) {
    if (sites[cut].dim(1) == 1) pad_bond(sites, cut);
  }

  // The last tensor is now a 2x2 unitary W[l, s]; fold it into its neighbour.
  const std::size_t last = sites.size() - 1;
  Matrix w(2, 2);
  for (std::size_t l = 0; l < 2; ++l) {
    for (std::size_t s = 0; s < 2; ++s) w(idx(l), idx(s)) = sites[last].at({s, l, 0});
  }
  const ComplexTensor& prev = sites[last - 1];
  const Matrix a0 = as_row_major(prev.data().subspan(0, prev.dim(1) * 2), prev.dim(1), 2);
  const Matrix a1 = as_row_major(prev.data().subspan(prev.dim(1) * 2), prev.dim(1), 2);
  sites[last - 1] = site_from_slices(a0 * w, a1 * w);
  ComplexTensor id({2, 2, 1});
  id.at({0, 0, 0}) = 1.0;
  id.at({1, 1, 0}) = 1.0;
  sites[last] = std::move(id);
  return MatrixProductState(std::move(sites), CanonicalForm::kRight, 0);
}

CircuitSynthesis synthesize_circuit(const MatrixProductState& phi) {
  if (std::abs(norm(phi) - 1.0) > 1e-8) {
    throw std::invalid_argument("mps_to_circuit requires a normalized MPS");
  }
  const MatrixProductState fixed = gauge_fix_last_tensor(phi);
  if (right_canonical_residual(fixed) > kSynthesisIsometryTol) {
    throw NumericalError("gauge-fixed tensors are not isometric; input looks corrupted");
  }
  const std::size_t n = fixed.size();
  CircuitSynthesis out{StaircaseCircuit(n, 1), {}};
  // Gates are independent given the gauge; build from the right as written.
  out.completions.resize(n - 1);
  for (std::size_t p = n - 1; p-- > 0;) {
    const ComplexTensor& a = fixed.site(p);
    std::vector<std::pair<std::size_t, Eigen::Vector4cd>> cols;
    for (std::size_t l = 0; l < a.dim(1); ++l) {
      Eigen::Vector4cd v;
      for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t r = 0; r < 2; ++r) v(idx(s * 2 + r)) = a.at({s, l, r});
      }
      cols.emplace_back(l * 2, v);
    }
    out.circuit.set_gate(0, p, complete_gate(cols, &out.completions[p]));
  }
  return out;
}

StaircaseCircuit mps_to_circuit(const MatrixProductState& phi) {
  return synthesize_circuit(phi).circuit;
}

}  // namespace chimpe
