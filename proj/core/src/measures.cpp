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

#include "chimpe/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "chimpe/error.hpp"
#include "chimpe/rng.hpp"

namespace chimpe {
namespace {

double bits_from_amplitude(double modulus) { return -2.0 * std::log2(modulus); }

// Mixed-canonical sweep state: sites_ left of the center are left-isometric,
// right of it right-isometric; left_[n] / right_[n] contract everything on
// the respective side of site n against the target.
class SweepState {
 public:
  SweepState(const MatrixProductState& target, const MatrixProductState& initial)
      : target_(target) {
    const MatrixProductState rc = canonicalize_right(initial);
    const std::size_t n = rc.size();
    for (std::size_t i = 0; i < n; ++i) {
      slices_.push_back({rc.slice(i, 0), rc.slice(i, 1)});
      target_slices_.push_back({target.slice(i, 0), target.slice(i, 1)});
    }
    left_.assign(n, Matrix::Ones(1, 1));
    right_.assign(n, Matrix::Ones(1, 1));
    for (std::size_t i = n; i-- > 1;) update_right(i);
  }

  std::size_t size() const { return slices_.size(); }

  // E_s = L T_s R^T: the coefficient of conj(phi_s) in <phi|psi>.
  std::array<Matrix, 2> environment(std::size_t n) const {
    return {left_[n] * target_slices_[n][0] * right_[n].transpose(),
            left_[n] * target_slices_[n][1] * right_[n].transpose()};
  }

  // Sets site n to its normalized environment; returns |<phi|psi>|.
  double optimize(std::size_t n) {
    auto env = environment(n);
    const double nrm = std::sqrt(env[0].squaredNorm() + env[1].squaredNorm());
    if (nrm < kOrthogonalOverlap) return 0.0;
    slices_[n] = {env[0] / nrm, env[1] / nrm};
    return nrm;
  }

  // QR on site n; R moves into site n+1.
  void shift_right(std::size_t n) {
    auto& a = slices_[n];
    const auto l = a[0].rows();
    Matrix stacked(2 * l, a[0].cols());
    stacked << a[0], a[1];
    const QrResult qr = thin_qr(stacked);
    a = {qr.q.topRows(l), qr.q.bottomRows(l)};
    auto& b = slices_[n + 1];
    b = {qr.r * b[0], qr.r * b[1]};
    left_[n + 1] = a[0].adjoint() * left_[n] * target_slices_[n][0] +
                   a[1].adjoint() * left_[n] * target_slices_[n][1];
  }

  // LQ on site n; L moves into site n-1.
  void shift_left(std::size_t n) {
    auto& a = slices_[n];
    const auto r = a[0].cols();
    Matrix w(a[0].rows(), 2 * r);
    w << a[0], a[1];
    const QrResult qr = thin_qr(w.adjoint());
    const Matrix q = qr.q.adjoint();
    a = {q.leftCols(r), q.rightCols(r)};
    auto& b = slices_[n - 1];
    const Matrix l = qr.r.adjoint();
    b = {b[0] * l, b[1] * l};
    update_right(n);
  }

  MatrixProductState mps() const {
    std::vector<ComplexTensor> sites;
    for (const auto& a : slices_) sites.push_back(site_from_slices(a[0], a[1]));
    return MatrixProductState(std::move(sites), CanonicalForm::kRight, 0);
  }

  Complex overlap_at(std::size_t n) const {
    const auto env = environment(n);
    return (slices_[n][0].conjugate().cwiseProduct(env[0]).sum() +
            slices_[n][1].conjugate().cwiseProduct(env[1]).sum());
  }

 private:
  void update_right(std::size_t n) {
    const auto& a = slices_[n];
    const auto& t = target_slices_[n];
    right_[n - 1] = a[0].conjugate() * right_[n] * t[0].transpose() +
                    a[1].conjugate() * right_[n] * t[1].transpose();
  }

  const MatrixProductState& target_;
  std::vector<std::array<Matrix, 2>> slices_;
  std::vector<std::array<Matrix, 2>> target_slices_;
  std::vector<Matrix> left_;
  std::vector<Matrix> right_;
};

}  // namespace

std::optional<double> log_fidelity_distance(Complex overlap_amplitude) {
  const double m = std::abs(overlap_amplitude);
  if (m < kOrthogonalOverlap) return std::nullopt;
  return std::max(0.0, bits_from_amplitude(std::min(m, 1.0)));
}

OverlapSweeper::OverlapSweeper(const DenseState& target) : target_(from_dense(target)) {}

OverlapSweeper::OverlapSweeper(MatrixProductState target)
    : target_(canonicalize_right(target)) {}

SweepRun OverlapSweeper::run(const MatrixProductState& initial, int max_sweeps,
                             double tol_bits) const {
  if (initial.size() != target_.size()) throw DimensionError("initial MPS has the wrong length");
  SweepState st(target_, initial);
  const std::size_t n = st.size();
  SweepRun out{st.mps(), {}, false, false};

  const double start = std::abs(st.overlap_at(0));
  if (start < kOrthogonalOverlap && n == 1) {
    out.orthogonal = true;
    return out;
  }
  out.history.push_back(start < kOrthogonalOverlap ? std::numeric_limits<double>::infinity()
                                                   : bits_from_amplitude(start));
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double amp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      amp = st.optimize(i);
      if (amp == 0.0) {
        out.orthogonal = true;
        out.mps = st.mps();
        return out;
      }
      if (i + 1 < n) st.shift_right(i);
    }
    for (std::size_t i = n; i-- > 1;) {
      if (i + 1 < n) amp = st.optimize(i);
      st.shift_left(i);
    }
    amp = st.optimize(0);
    const double value = bits_from_amplitude(std::min(amp, 1.0));
    const double previous = out.history.back();
    out.history.push_back(value);
    if (previous - value < tol_bits) {
      out.converged = true;
      break;
    }
  }
  out.mps = st.mps();
  return out;
}

MpeResult chi_mpe(const DenseState& psi, std::size_t chi, const MpeOptions& options) {
  require_normalized(psi, "chi_mpe");
  if (chi < 1) throw std::invalid_argument("chi must be at least 1");
  if (options.restarts < 1) throw std::invalid_argument("chi_mpe needs at least one restart");
  if (options.max_sweeps < 0) throw std::invalid_argument("max_sweeps must be non-negative");

  const OverlapSweeper sweeper(psi);
  MpeResult best;
  best.chi = chi;
  best.restarts_used = options.restarts;
  for (int r = 0; r < options.restarts; ++r) {
    const MatrixProductState init =
        r == 0 ? truncate_to_chi(sweeper.target(), chi)
               : random_mps(psi.n_qubits(), chi, derive_seed(options.seed, r));
    SweepRun run = sweeper.run(init, options.max_sweeps, options.tol_bits);
    if (run.orthogonal) continue;
    const double value = std::max(0.0, run.history.back());
    if (!best.value_bits || value < *best.value_bits) {
      best.value_bits = value;
      best.best_mps = std::move(run.mps);
      best.sweeps_used = static_cast<int>(run.history.size()) - 1;
      best.converged = run.converged;
      best.best_restart = static_cast<std::size_t>(r);
    }
  }
  return best;
}

double ge_oracle(const DenseState& psi, const GeOracleOptions& options) {
  require_normalized(psi, "ge_oracle");
  const std::size_t n = psi.n_qubits();
  if (n > kGeOracleMaxQubits) {
    throw std::invalid_argument("ge_oracle is limited to " + std::to_string(kGeOracleMaxQubits) +
                                " qubits");
  }
  const auto amps = psi.amplitudes();
  const std::size_t dim = amps.size();
  auto bit = [n](std::size_t index, std::size_t q) { return (index >> (n - 1 - q)) & 1U; };

  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < options.restarts; ++r) {
    Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(r)));
    std::vector<std::array<Complex, 2>> phi(n);
    for (auto& q : phi) {
      q = {gaussian_complex(rng), gaussian_complex(rng)};
      const double nrm = std::sqrt(std::norm(q[0]) + std::norm(q[1]));
      q[0] /= nrm;
      q[1] /= nrm;
    }
    double amp = 0.0;
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
      const double before = amp;
      for (std::size_t k = 0; k < n; ++k) {
        // e[s] = sum over the other qubits of conj(phi) * psi.
        std::array<Complex, 2> e{};
        for (std::size_t i = 0; i < dim; ++i) {
          Complex w = amps[i];
          for (std::size_t j = 0; j < n; ++j) {
            if (j != k) w *= std::conj(phi[j][bit(i, j)]);
          }
          e[bit(i, k)] += w;
        }
        const double nrm = std::sqrt(std::norm(e[0]) + std::norm(e[1]));
        if (nrm == 0.0) continue;
        phi[k] = {e[0] / nrm, e[1] / nrm};
        amp = nrm;
      }
      if (amp - before < options.tol) break;
    }
    if (amp > 0.0) best = std::min(best, bits_from_amplitude(std::min(amp, 1.0)));
  }
  return std::max(0.0, best);
}

std::optional<double> nlf(const DenseState& psi, const DenseState& phi) {
  if (psi.n_qubits() != phi.n_qubits()) throw DimensionError("nlf of states of different size");
  require_normalized(psi, "nlf");
  require_normalized(phi, "nlf");
  return log_fidelity_distance(inner(psi, phi));
}

}  // namespace chimpe
