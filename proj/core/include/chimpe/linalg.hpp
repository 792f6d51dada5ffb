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

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "chimpe/tensor.hpp"

namespace chimpe {

using Matrix = Eigen::MatrixXcd;
using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMatrixView = Eigen::Map<const RowMajorMatrix>;
using MatrixView = Eigen::Map<RowMajorMatrix>;

inline ConstMatrixView as_row_major(std::span<const Complex> data, std::size_t rows,
                                    std::size_t cols) {
  return ConstMatrixView(data.data(), static_cast<Eigen::Index>(rows),
                         static_cast<Eigen::Index>(cols));
}

inline MatrixView as_row_major(std::span<Complex> data, std::size_t rows, std::size_t cols) {
  return MatrixView(data.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}

/// Copies a rank-2 tensor into an Eigen matrix.
Matrix to_matrix(const ComplexTensor& m);
ComplexTensor from_matrix(const Matrix& m);

struct SvdResult {
  ComplexTensor u;        // rows x k, orthonormal columns
  std::vector<double> s;  // k values, descending
  ComplexTensor vh;       // k x cols, orthonormal rows
};

/// Thin SVD, m = u * diag(s) * vh with k = min(rows, cols).
SvdResult svd_split(const ComplexTensor& m);

struct EighResult {
  std::vector<double> values;  // ascending
  ComplexTensor vectors;       // column i pairs with values[i]
};

/// Eigendecomposition of a Hermitian matrix. Throws DimensionError when
/// `m` deviates from Hermitian by more than `hermitian_tol` (max entry).
EighResult eigh(const ComplexTensor& m, double hermitian_tol = 1e-10);

/// Unitary V * U^dagger for e = U S V^dagger: the unitary G maximizing
/// |tr(G e)|. The zero matrix maps to the identity.
ComplexTensor polar_factor(const ComplexTensor& e);

// Eigen-level variants used by the tensor-network code.

struct MatrixSvd {
  Matrix u;
  Eigen::VectorXd s;
  Matrix v;  // m = u * s.asDiagonal() * v.adjoint()
};

MatrixSvd thin_svd(const Matrix& m);
Matrix polar_unitary(const Matrix& e);

struct QrResult {
  Matrix q;  // rows x k orthonormal columns, k = min(rows, cols)
  Matrix r;  // k x cols
};

QrResult thin_qr(const Matrix& m);

/// Largest |A^dagger A - I| entry.
double isometry_residual(const Matrix& a);
double unitarity_residual(const ComplexTensor& g);

}  // namespace chimpe
