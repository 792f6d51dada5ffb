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

#include <gtest/gtest.h>

#include <Eigen/SVD>
#include <array>
#include <cmath>

#include "chimpe/error.hpp"
#include "chimpe/mps.hpp"
#include "test_util.hpp"

namespace chimpe {
namespace {

using testing::dense_fidelity;
using testing::random_state;
using testing::random_tensor;

MatrixProductState raw_random_mps(std::size_t n, std::size_t chi, std::uint64_t seed) {
  std::vector<ComplexTensor> sites;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t dl = i == 0 ? 1 : chi;
    const std::size_t dr = i + 1 == n ? 1 : chi;
    sites.push_back(random_tensor({2, dl, dr}, seed + i));
  }
  return MatrixProductState(std::move(sites));
}

DenseState bell_then_zeros(std::size_t n) {
  std::vector<Complex> a(std::size_t{1} << n);
  const double h = 1.0 / std::sqrt(2.0);
  a[0] = h;
  a[std::size_t{3} << (n - 2)] = h;
  return DenseState(n, a);
}

// Best rank-chi approximation at every cut in turn, on the dense vector.
std::vector<Complex> dense_sequential_truncation(const DenseState& psi, std::size_t chi) {
  const std::size_t n = psi.n_qubits();
  std::vector<Complex> v(psi.amplitudes().begin(), psi.amplitudes().end());
  for (std::size_t k = 1; k < n; ++k) {
    const Eigen::Index rows = Eigen::Index{1} << k;
    const Eigen::Index cols = Eigen::Index{1} << (n - k);
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> m =
        Eigen::Map<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            v.data(), rows, cols);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::Index keep = std::min<Eigen::Index>(static_cast<Eigen::Index>(chi),
                                                     svd.singularValues().size());
    Eigen::MatrixXcd approx = svd.matrixU().leftCols(keep) *
                              svd.singularValues().head(keep).asDiagonal() *
                              svd.matrixV().leftCols(keep).adjoint();
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) v[static_cast<std::size_t>(r * cols + c)] = approx(r, c);
    }
  }
  double nrm = 0.0;
  for (auto z : v) nrm += std::norm(z);
  for (auto& z : v) z /= std::sqrt(nrm);
  return v;
}

TEST(Mps, ValidatesBondsAndBoundaries) {
  std::vector<ComplexTensor> bad;
  bad.push_back(random_tensor({2, 1, 2}, 1));
  bad.push_back(random_tensor({2, 3, 1}, 2));
  EXPECT_THROW(MatrixProductState(std::move(bad)), DimensionError);
  std::vector<ComplexTensor> open;
  open.push_back(random_tensor({2, 2, 2}, 3));
  open.push_back(random_tensor({2, 2, 1}, 4));
  EXPECT_THROW(MatrixProductState(std::move(open)), DimensionError);
  std::vector<ComplexTensor> qutrit;
  qutrit.push_back(random_tensor({3, 1, 1}, 5));
  EXPECT_THROW(MatrixProductState(std::move(qutrit)), DimensionError);
}

TEST(FromDense, ZeroStateHasUnitBonds) {
  const auto phi = from_dense(DenseState::zero(5));
  for (auto d : phi.bond_dims()) EXPECT_EQ(d, 1u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_NEAR(std::abs(phi.site(i).at({0, 0, 0})), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(phi.site(i).at({1, 0, 0})), 0.0, 1e-14);
  }
}

TEST(FromDense, BellStateSchmidtValues) {
  const auto phi = from_dense(bell_then_zeros(2));
  EXPECT_EQ(phi.bond_dims(), std::vector<std::size_t>{2});
  const auto s = schmidt_values(phi, 1);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s[0], 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(s[1], 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(FromDense, RoundTripIsExact) {
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto psi = random_state(n, 100 + n);
    const auto phi = from_dense(psi);
    EXPECT_EQ(phi.canonical_form(), CanonicalForm::kRight);
    EXPECT_LE(right_canonical_residual(phi), 1e-10);
    EXPECT_GE(fidelity(psi, to_dense(phi)), 1.0 - 1e-12) << "n=" << n;
    const auto bonds = phi.bond_dims();
    for (std::size_t c = 1; c < n; ++c) {
      EXPECT_LE(bonds[c - 1], std::size_t{1} << std::min(c, n - c));
    }
  }
}

TEST(FromDense, RespectsChiMax) {
  const auto phi = from_dense(random_state(8, 7), 3);
  EXPECT_LE(phi.max_bond(), 3u);
  EXPECT_THROW(from_dense(random_state(3, 1), 0), std::invalid_argument);
}

TEST(ToDense, ProductOfZeros) {
  const auto phi = MatrixProductState::zero(4);
  const auto psi = to_dense(phi);
  EXPECT_EQ(psi.amplitudes()[0], Complex(1.0));
  for (std::size_t i = 1; i < 16; ++i) EXPECT_EQ(psi.amplitudes()[i], Complex(0.0));
}

TEST(ToDense, LinearInASiteTensor) {
  auto phi = from_dense(random_state(4, 9));
  const auto before = to_amplitudes(phi);
  ComplexTensor a = phi.site(2);
  a *= 2.0;
  phi.set_site(2, a);
  const auto after = to_amplitudes(phi);
  for (std::size_t i = 0; i < before.size(); ++i) EXPECT_LT(std::abs(after[i] - 2.0 * before[i]), 1e-14);
}

TEST(ToDense, CapGuardsMemory) {
  EXPECT_THROW(to_dense(MatrixProductState::zero(6), 5), std::invalid_argument);
}

TEST(Canonicalize, RandomTensorsKeepTheState) {
  const auto raw = raw_random_mps(5, 3, 11);
  const auto can = canonicalize_right(raw);
  EXPECT_LE(right_canonical_residual(can), 1e-10);
  EXPECT_NEAR(norm(can), 1.0, 1e-12);
  const auto a = to_amplitudes(raw);
  const auto b = to_amplitudes(can);
  double na = 0.0;
  for (auto z : a) na += std::norm(z);
  EXPECT_GE(dense_fidelity(a, b) / na, 1.0 - 1e-10);
}

TEST(Canonicalize, Idempotent) {
  const auto once = canonicalize_right(raw_random_mps(6, 2, 12));
  const auto twice = canonicalize_right(once);
  EXPECT_LE(right_canonical_residual(twice), 1e-10);
  EXPECT_NEAR(std::abs(overlap(once, twice)), 1.0, 1e-10);
}

TEST(Canonicalize, UnnormalizedProduct) {
  const std::array<std::array<Complex, 2>, 3> q{{{3.0, 0.0}, {1.0, 1.0}, {0.0, 0.5}}};
  const auto phi = canonicalize_right(MatrixProductState::product(q));
  EXPECT_NEAR(norm(phi), 1.0, 1e-14);
  for (auto d : phi.bond_dims()) EXPECT_EQ(d, 1u);
  const auto psi = to_dense(phi);
  // |0> (x) (|0>+|1>)/sqrt2 (x) |1>: amplitudes at 001 and 011.
  EXPECT_NEAR(std::norm(psi.amplitudes()[1]), 0.5, 1e-14);
  EXPECT_NEAR(std::norm(psi.amplitudes()[3]), 0.5, 1e-14);
}

TEST(Canonicalize, ZeroNormThrows) {
  const std::array<std::array<Complex, 2>, 2> q{{{0.0, 0.0}, {1.0, 0.0}}};
  EXPECT_THROW(canonicalize_right(MatrixProductState::product(q)), NumericalError);
}

TEST(Truncate, LargeChiIsIdentity) {
  const auto phi = from_dense(random_state(6, 13));
  const auto t = truncate_to_chi(phi, 8);
  EXPECT_NEAR(std::norm(overlap(phi, t)), 1.0, 1e-12);
}

TEST(Truncate, BellToProductKeepsHalf) {
  const auto t = truncate_to_chi(from_dense(bell_then_zeros(5)), 1);
  EXPECT_EQ(t.max_bond(), 1u);
  EXPECT_NEAR(fidelity(to_dense(t), bell_then_zeros(5)), 0.5, 1e-12);
}

TEST(Truncate, MatchesDenseSequentialOracle) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto psi = random_state(8, 200 + seed);
    const auto report = truncate_with_report(from_dense(psi), 4);
    const auto& t = report.state;
    EXPECT_LE(t.max_bond(), 4u);
    EXPECT_LE(right_canonical_residual(t), 1e-10);
    EXPECT_NEAR(norm(t), 1.0, 1e-12);
    const double f = fidelity(to_dense(t), psi);
    const auto oracle = dense_sequential_truncation(psi, 4);
    EXPECT_NEAR(f, dense_fidelity(oracle, psi.amplitudes()), 1e-8);
    double discarded = 0.0;
    for (double w : report.discarded_weight) discarded += w;
    EXPECT_GE(f, 1.0 - discarded - 1e-12);
  }
}

TEST(Truncate, RejectsZeroChi) {
  EXPECT_THROW(truncate_to_chi(MatrixProductState::zero(3), 0), std::invalid_argument);
}

TEST(Overlap, BasicValues) {
  const auto phi = from_dense(random_state(5, 14));
  EXPECT_NEAR(std::abs(overlap(phi, phi) - 1.0), 0.0, 1e-12);
  const auto a = from_dense(DenseState::basis(4, 0));
  const auto b = from_dense(DenseState::basis(4, 8));
  EXPECT_EQ(std::abs(overlap(a, b)), 0.0);
  EXPECT_THROW(overlap(a, MatrixProductState::zero(3)), DimensionError);
}

TEST(Overlap, MatchesDenseInnerProduct) {
  const auto x = random_state(6, 15);
  const auto y = random_state(6, 16);
  const Complex mps_value = overlap(from_dense(x), from_dense(y));
  // from_dense only changes the global phase of each state.
  const Complex phase_x = inner(x, to_dense(from_dense(x)));
  const Complex phase_y = inner(y, to_dense(from_dense(y)));
  const Complex dense_value = std::conj(phase_x) * inner(x, y) * phase_y;
  EXPECT_LT(std::abs(mps_value - dense_value), 1e-10);
}

TEST(Entropy, KnownStates) {
  EXPECT_NEAR(entanglement_entropy(MatrixProductState::zero(6), 3), 0.0, 1e-14);
  EXPECT_NEAR(entanglement_entropy(from_dense(bell_then_zeros(2)), 1), 1.0, 1e-12);
  EXPECT_NEAR(entanglement_entropy(from_dense(DenseState::ghz(4)), 2), 1.0, 1e-12);
  EXPECT_THROW(entanglement_entropy(MatrixProductState::zero(4), 0), std::invalid_argument);
  EXPECT_THROW(entanglement_entropy(MatrixProductState::zero(4), 4), std::invalid_argument);
}

TEST(Entropy, SchmidtValuesAreNormalized) {
  const auto phi = from_dense(random_state(7, 17));
  for (std::size_t c = 1; c < 7; ++c) {
    double s2 = 0.0;
    for (double s : schmidt_values(phi, c)) s2 += s * s;
    EXPECT_NEAR(s2, 1.0, 1e-12);
  }
}

TEST(RandomMps, BondDimsAndDeterminism) {
  const auto phi = random_mps(7, 3, 42);
  EXPECT_EQ(phi.bond_dims(), (std::vector<std::size_t>{2, 3, 3, 3, 3, 2}));
  EXPECT_LE(right_canonical_residual(phi), 1e-10);
  EXPECT_NEAR(norm(phi), 1.0, 1e-12);
  const auto again = random_mps(7, 3, 42);
  for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(phi.site(i).values(), again.site(i).values());
  for (auto d : random_mps(5, 1, 3).bond_dims()) EXPECT_EQ(d, 1u);
  EXPECT_LE(entanglement_entropy(random_mps(6, 2, 5), 3), 1.0 + 1e-12);
}

}  // namespace
}  // namespace chimpe
