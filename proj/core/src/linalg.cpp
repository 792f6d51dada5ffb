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

#include "chimpe/linalg.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "chimpe/error.hpp"

namespace chimpe {
namespace {

void require_matrix(const ComplexTensor& m, const char* op) {
  if (m.rank() != 2) throw DimensionError(std::string(op) + " expects a rank-2 tensor");
}

bool finite(const Matrix& m) { return m.allFinite(); }

// BDCSVD delegates to Jacobi below its block size; both are accurate to
// machine precision on the sizes used here.
template <typename Svd>
MatrixSvd collect(const Svd& svd) {
  if (svd.info() != Eigen::Success) throw NumericalError("SVD did not converge");
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

}  // namespace

Matrix to_matrix(const ComplexTensor& m) {
  require_matrix(m, "to_matrix");
  return as_row_major(m.data(), m.dim(0), m.dim(1));
}

ComplexTensor from_matrix(const Matrix& m) {
  ComplexTensor out({static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())});
  as_row_major(out.data(), out.dim(0), out.dim(1)) = m;
  return out;
}

MatrixSvd thin_svd(const Matrix& m) {
  if (!finite(m)) throw NumericalError("SVD of non-finite matrix");
  if (m.rows() <= 16 && m.cols() <= 16) {
    return collect(Eigen::JacobiSVD<Matrix>(m, Eigen::ComputeThinU | Eigen::ComputeThinV));
  }
  return collect(Eigen::BDCSVD<Matrix>(m, Eigen::ComputeThinU | Eigen::ComputeThinV));
}

SvdResult svd_split(const ComplexTensor& m) {
  require_matrix(m, "svd_split");
  const MatrixSvd svd = thin_svd(to_matrix(m));
  SvdResult out;
  out.u = from_matrix(svd.u);
  out.s.assign(svd.s.data(), svd.s.data() + svd.s.size());
  out.vh = from_matrix(svd.v.adjoint());
  return out;
}

EighResult eigh(const ComplexTensor& m, double hermitian_tol) {
  require_matrix(m, "eigh");
  if (m.dim(0) != m.dim(1)) throw DimensionError("eigh expects a square matrix");
  const Matrix a = to_matrix(m);
  if (!finite(a)) throw NumericalError("eigh of non-finite matrix");
  const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (asym > hermitian_tol) throw DimensionError("eigh input is not Hermitian");
  const Matrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  EighResult out;
  out.values.assign(solver.eigenvalues().data(),
                    solver.eigenvalues().data() + solver.eigenvalues().size());
  out.vectors = from_matrix(solver.eigenvectors());
  return out;
}

Matrix polar_unitary(const Matrix& e) {
  if (e.rows() != e.cols()) throw DimensionError("polar factor expects a square matrix");
  if (e.cwiseAbs().maxCoeff() == 0.0) return Matrix::Identity(e.rows(), e.cols());
  const MatrixSvd svd = thin_svd(e);
  // tr(G U S V^dag) = tr(V^dag G U S) is maximal for V^dag G U = I.
  return svd.v * svd.u.adjoint();
}

ComplexTensor polar_factor(const ComplexTensor& e) {
  require_matrix(e, "polar_factor");
  return from_matrix(polar_unitary(to_matrix(e)));
}

QrResult thin_qr(const Matrix& m) {
  const Eigen::Index k = std::min(m.rows(), m.cols());
  Eigen::HouseholderQR<Matrix> qr(m);
  QrResult out;
  out.q = qr.householderQ() * Matrix::Identity(m.rows(), k);
  out.r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  return out;
}

double isometry_residual(const Matrix& a) {
  return (a.adjoint() * a - Matrix::Identity(a.cols(), a.cols())).cwiseAbs().maxCoeff();
}

double unitarity_residual(const ComplexTensor& g) {
  require_matrix(g, "unitarity_residual");
  if (g.dim(0) != g.dim(1)) return std::numeric_limits<double>::infinity();
  return isometry_residual(to_matrix(g));
}

}  // namespace chimpe
