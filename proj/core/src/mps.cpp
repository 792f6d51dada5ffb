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

#include "chimpe/mps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chimpe/error.hpp"
#include "chimpe/rng.hpp"

namespace chimpe {
namespace {

// Singular values below this fraction of the largest are treated as exact
// zeros when building or truncating an MPS.
constexpr double kZeroSingularValue = 1e-14;

std::size_t dim_of(const Matrix& m, bool rows) {
  return static_cast<std::size_t>(rows ? m.rows() : m.cols());
}

// Site tensor viewed as a (2*left) x right matrix, rows ordered (s, left).
Matrix stacked_rows(const ComplexTensor& a) {
  return as_row_major(a.data(), a.dim(0) * a.dim(1), a.dim(2));
}

ComplexTensor from_stacked_rows(const Matrix& m, std::size_t left) {
  ComplexTensor out({2, left, dim_of(m, false)});
  as_row_major(out.data(), 2 * left, dim_of(m, false)) = m;
  return out;
}

// Site tensor viewed as a left x (2*right) matrix, columns ordered (s, right).
Matrix wide(const ComplexTensor& a) {
  const std::size_t l = a.dim(1);
  const std::size_t r = a.dim(2);
  Matrix m(l, 2 * r);
  for (std::size_t s = 0; s < 2; ++s) {
    m.middleCols(static_cast<Eigen::Index>(s * r), static_cast<Eigen::Index>(r)) =
        as_row_major(a.data().subspan(s * l * r, l * r), l, r);
  }
  return m;
}

ComplexTensor from_wide(const Matrix& m) {
  const auto r = static_cast<Eigen::Index>(m.cols() / 2);
  return site_from_slices(m.leftCols(r), m.rightCols(r));
}

// A[s] <- A[s] * right for both slices.
ComplexTensor times_right(const ComplexTensor& a, const Matrix& right) {
  Matrix a0 = as_row_major(a.data().subspan(0, a.dim(1) * a.dim(2)), a.dim(1), a.dim(2));
  Matrix a1 = as_row_major(a.data().subspan(a.dim(1) * a.dim(2)), a.dim(1), a.dim(2));
  return site_from_slices(a0 * right, a1 * right);
}

// A[s] <- left * A[s] for both slices.
ComplexTensor times_left(const Matrix& left, const ComplexTensor& a) {
  Matrix a0 = as_row_major(a.data().subspan(0, a.dim(1) * a.dim(2)), a.dim(1), a.dim(2));
  Matrix a1 = as_row_major(a.data().subspan(a.dim(1) * a.dim(2)), a.dim(1), a.dim(2));
  return site_from_slices(left * a0, left * a1);
}

Eigen::Index kept_count(const Eigen::VectorXd& s, std::size_t chi) {
  Eigen::Index keep = 0;
  const double floor = s.size() > 0 ? s(0) * kZeroSingularValue : 0.0;
  while (keep < s.size() && static_cast<std::size_t>(keep) < chi && s(keep) > floor) ++keep;
  return std::max<Eigen::Index>(keep, 1);
}

std::size_t capped_pow2(std::size_t e) { return e >= 62 ? (std::size_t{1} << 62) : (std::size_t{1} << e); }

// Sweeps the orthogonality center of a right-canonical MPS onto site
// `target` with QR steps, leaving sites < target left-canonical.
std::vector<ComplexTensor> move_center_right(std::vector<ComplexTensor> sites, std::size_t target) {
  for (std::size_t n = 0; n < target; ++n) {
    const QrResult qr = thin_qr(stacked_rows(sites[n]));
    sites[n] = from_stacked_rows(qr.q, sites[n].dim(1));
    sites[n + 1] = times_left(qr.r, sites[n + 1]);
  }
  return sites;
}

}  // namespace

MatrixProductState::MatrixProductState(std::vector<ComplexTensor> sites, CanonicalForm form,
                                       std::size_t center)
    : sites_(std::move(sites)), form_(form), center_(center) {
  if (sites_.empty()) throw std::invalid_argument("an MPS needs at least one site");
  for (std::size_t n = 0; n < sites_.size(); ++n) {
    const auto& a = sites_[n];
    if (a.rank() != 3 || a.dim(0) != 2) {
      throw DimensionError("site " + std::to_string(n) + " must have shape (2, left, right)");
    }
    if (!a.all_finite()) throw NumericalError("site " + std::to_string(n) + " is not finite");
    if (n + 1 < sites_.size() && a.dim(2) != sites_[n + 1].dim(1)) {
      throw DimensionError("bond mismatch between sites " + std::to_string(n) + " and " +
                           std::to_string(n + 1));
    }
  }
  if (sites_.front().dim(1) != 1 || sites_.back().dim(2) != 1) {
    throw DimensionError("boundary bonds must have dimension 1");
  }
  if (center_ >= sites_.size()) throw std::invalid_argument("canonical center out of range");
}

MatrixProductState MatrixProductState::product(std::span<const std::array<Complex, 2>> qubits) {
  std::vector<ComplexTensor> sites;
  for (const auto& q : qubits) sites.emplace_back(std::vector<std::size_t>{2, 1, 1},
                                                  std::vector<Complex>{q[0], q[1]});
  return MatrixProductState(std::move(sites));
}

MatrixProductState MatrixProductState::zero(std::size_t n_qubits) {
  std::vector<std::array<Complex, 2>> q(n_qubits, {Complex{1.0}, Complex{0.0}});
  MatrixProductState phi = product(q);
  phi.form_ = CanonicalForm::kRight;
  return phi;
}

void MatrixProductState::set_site(std::size_t n, ComplexTensor tensor) {
  if (n >= sites_.size()) throw std::invalid_argument("site index out of range");
  if (tensor.rank() != 3 || tensor.dim(0) != 2 || tensor.dim(1) != sites_[n].dim(1) ||
      tensor.dim(2) != sites_[n].dim(2)) {
    throw DimensionError("replacement site must keep the bond dimensions");
  }
  sites_[n] = std::move(tensor);
  form_ = CanonicalForm::kNone;
}

std::vector<std::size_t> MatrixProductState::bond_dims() const {
  std::vector<std::size_t> dims;
  for (std::size_t n = 0; n + 1 < sites_.size(); ++n) dims.push_back(sites_[n].dim(2));
  return dims;
}

std::size_t MatrixProductState::max_bond() const {
  const auto dims = bond_dims();
  return dims.empty() ? 1 : *std::max_element(dims.begin(), dims.end());
}

Matrix MatrixProductState::slice(std::size_t n, std::size_t s) const {
  const auto& a = sites_.at(n);
  const std::size_t l = a.dim(1);
  const std::size_t r = a.dim(2);
  return as_row_major(a.data().subspan(s * l * r, l * r), l, r);
}

ComplexTensor site_from_slices(const Matrix& a0, const Matrix& a1) {
  if (a0.rows() != a1.rows() || a0.cols() != a1.cols()) {
    throw DimensionError("site slices differ in shape");
  }
  const std::size_t l = dim_of(a0, true);
  const std::size_t r = dim_of(a0, false);
  ComplexTensor out({2, l, r});
  as_row_major(out.data().subspan(0, l * r), l, r) = a0;
  as_row_major(out.data().subspan(l * r, l * r), l, r) = a1;
  return out;
}

MatrixProductState from_dense(const DenseState& psi, std::optional<std::size_t> chi_max) {
  require_normalized(psi, "from_dense");
  if (chi_max && *chi_max < 1) throw std::invalid_argument("chi_max must be at least 1");
  const std::size_t chi = chi_max.value_or(static_cast<std::size_t>(-1));
  const std::size_t n = psi.n_qubits();

  std::vector<ComplexTensor> sites;
  std::size_t left = 1;
  std::size_t rest = psi.dimension();
  // Rows (left bond, s_n), columns the remaining physical indices.
  Matrix carry = as_row_major(psi.amplitudes(), 1, rest);
  for (std::size_t site = 0; site + 1 < n; ++site) {
    rest /= 2;
    Matrix c(left * 2, rest);
    for (std::size_t l = 0; l < left; ++l) {
      for (std::size_t s = 0; s < 2; ++s) {
        c.row(static_cast<Eigen::Index>(l * 2 + s)) =
            carry.row(static_cast<Eigen::Index>(l)).segment(static_cast<Eigen::Index>(s * rest),
                                                            static_cast<Eigen::Index>(rest));
      }
    }
    const MatrixSvd svd = thin_svd(c);
    const Eigen::Index k = kept_count(svd.s, chi);
    ComplexTensor a({2, left, static_cast<std::size_t>(k)});
    for (std::size_t l = 0; l < left; ++l) {
      for (std::size_t s = 0; s < 2; ++s) {
        for (Eigen::Index r = 0; r < k; ++r) {
          a.at({s, l, static_cast<std::size_t>(r)}) =
              svd.u(static_cast<Eigen::Index>(l * 2 + s), r);
        }
      }
    }
    sites.push_back(std::move(a));
    carry = svd.s.head(k).asDiagonal() * svd.v.leftCols(k).adjoint();
    left = static_cast<std::size_t>(k);
  }
  ComplexTensor last({2, left, 1});
  for (std::size_t l = 0; l < left; ++l) {
    for (std::size_t s = 0; s < 2; ++s) {
      last.at({s, l, 0}) = carry(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(s));
    }
  }
  sites.push_back(std::move(last));
  return canonicalize_right(MatrixProductState(std::move(sites)));
}

std::vector<Complex> to_amplitudes(const MatrixProductState& phi, std::size_t max_qubits) {
  const std::size_t n = phi.size();
  if (n > max_qubits) {
    throw std::invalid_argument("to_dense refuses " + std::to_string(n) + " qubits (cap " +
                                std::to_string(max_qubits) + ")");
  }
  // Rows enumerate the physical prefix, columns the open right bond.
  RowMajorMatrix acc = RowMajorMatrix::Ones(1, 1);
  for (std::size_t site = 0; site < n; ++site) {
    const Matrix a0 = phi.slice(site, 0);
    const Matrix a1 = phi.slice(site, 1);
    RowMajorMatrix next(acc.rows() * 2, a0.cols());
    for (Eigen::Index p = 0; p < acc.rows(); ++p) {
      next.row(2 * p) = acc.row(p) * a0;
      next.row(2 * p + 1) = acc.row(p) * a1;
    }
    acc = std::move(next);
  }
  return std::vector<Complex>(acc.data(), acc.data() + acc.size());
}

DenseState to_dense(const MatrixProductState& phi, std::size_t max_qubits) {
  return DenseState(phi.size(), to_amplitudes(phi, max_qubits));
}

MatrixProductState canonicalize_right(const MatrixProductState& phi) {
  std::vector<ComplexTensor> sites(phi.sites().begin(), phi.sites().end());
  for (std::size_t n = sites.size(); n-- > 1;) {
    const MatrixSvd svd = thin_svd(wide(sites[n]));
    sites[n] = from_wide(svd.v.adjoint());
    sites[n - 1] = times_right(sites[n - 1], svd.u * svd.s.asDiagonal());
  }
  const MatrixSvd svd = thin_svd(wide(sites[0]));
  const double nrm = svd.s(0);
  if (!(nrm > 0.0)) throw NumericalError("cannot canonicalize a zero-norm MPS");
  // Keep the global phase of the input.
  const Complex phase = svd.u(0, 0) / std::abs(svd.u(0, 0));
  sites[0] = from_wide(phase * svd.v.adjoint());
  return MatrixProductState(std::move(sites), CanonicalForm::kRight, 0);
}

TruncationResult truncate_with_report(const MatrixProductState& phi, std::size_t chi) {
  if (chi < 1) throw std::invalid_argument("chi must be at least 1");
  const MatrixProductState rc = canonicalize_right(phi);
  std::vector<ComplexTensor> sites(rc.sites().begin(), rc.sites().end());
  TruncationResult out{MatrixProductState::zero(1), {}};
  for (std::size_t n = 0; n + 1 < sites.size(); ++n) {
    const MatrixSvd svd = thin_svd(stacked_rows(sites[n]));
    const Eigen::Index k = kept_count(svd.s, chi);
    const double total = svd.s.squaredNorm();
    const double kept = svd.s.head(k).squaredNorm();
    out.discarded_weight.push_back(total > 0.0 ? std::max(0.0, 1.0 - kept / total) : 0.0);
    sites[n] = from_stacked_rows(svd.u.leftCols(k), sites[n].dim(1));
    sites[n + 1] = times_left(svd.s.head(k).asDiagonal() * svd.v.leftCols(k).adjoint(),
                              sites[n + 1]);
  }
  out.state = canonicalize_right(MatrixProductState(std::move(sites)));
  return out;
}

MatrixProductState truncate_to_chi(const MatrixProductState& phi, std::size_t chi) {
  return truncate_with_report(phi, chi).state;
}

Complex overlap(const MatrixProductState& a, const MatrixProductState& b) {
  if (a.size() != b.size()) throw DimensionError("overlap of MPSs of different length");
  Matrix env = Matrix::Ones(1, 1);
  for (std::size_t n = 0; n < a.size(); ++n) {
    env = a.slice(n, 0).adjoint() * env * b.slice(n, 0) +
          a.slice(n, 1).adjoint() * env * b.slice(n, 1);
  }
  return env(0, 0);
}

double norm(const MatrixProductState& phi) { return std::sqrt(std::abs(overlap(phi, phi))); }

std::vector<double> schmidt_values(const MatrixProductState& phi, std::size_t cut) {
  if (cut < 1 || cut >= phi.size()) {
    throw std::invalid_argument("cut " + std::to_string(cut) + " out of range for " +
                                std::to_string(phi.size()) + " sites");
  }
  const MatrixProductState rc = canonicalize_right(phi);
  const auto sites =
      move_center_right(std::vector<ComplexTensor>(rc.sites().begin(), rc.sites().end()), cut - 1);
  const MatrixSvd svd = thin_svd(stacked_rows(sites[cut - 1]));
  return std::vector<double>(svd.s.data(), svd.s.data() + svd.s.size());
}

double entanglement_entropy(const MatrixProductState& phi, std::size_t cut) {
  double s = 0.0;
  for (double lambda : schmidt_values(phi, cut)) {
    const double p = lambda * lambda;
    if (p > 0.0) s -= p * std::log2(p);
  }
  return std::max(0.0, s);
}

double right_canonical_residual(const MatrixProductState& phi) {
  double worst = 0.0;
  for (std::size_t n = 0; n < phi.size(); ++n) {
    const Matrix w = wide(phi.site(n));
    const Matrix g = w * w.adjoint() - Matrix::Identity(w.rows(), w.rows());
    worst = std::max(worst, g.cwiseAbs().maxCoeff());
  }
  return worst;
}

double left_canonical_residual(const MatrixProductState& phi) {
  double worst = 0.0;
  for (std::size_t n = 0; n < phi.size(); ++n) {
    worst = std::max(worst, isometry_residual(stacked_rows(phi.site(n))));
  }
  return worst;
}

MatrixProductState random_mps(std::size_t n_qubits, std::size_t chi, std::uint64_t seed) {
  if (n_qubits == 0) throw std::invalid_argument("random_mps needs at least one site");
  if (chi < 1) throw std::invalid_argument("chi must be at least 1");
  Rng rng(seed);
  std::vector<std::size_t> bonds(n_qubits + 1, 1);
  for (std::size_t cut = 1; cut < n_qubits; ++cut) {
    bonds[cut] = std::min(chi, capped_pow2(std::min(cut, n_qubits - cut)));
  }
  std::vector<ComplexTensor> sites;
  for (std::size_t n = 0; n < n_qubits; ++n) {
    ComplexTensor a({2, bonds[n], bonds[n + 1]});
    for (auto& z : a.data()) z = gaussian_complex(rng);
    sites.push_back(std::move(a));
  }
  return canonicalize_right(MatrixProductState(std::move(sites)));
}

}  // namespace chimpe
