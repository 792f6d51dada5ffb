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

#include <cmath>

#include "chimpe/equivalence.hpp"
#include "chimpe/error.hpp"
#include "chimpe/linalg.hpp"
#include "chimpe/measures.hpp"
#include "test_util.hpp"

namespace chimpe {
namespace {

using testing::random_unitary;

double last_site_identity_residual(const MatrixProductState& phi) {
  const auto& a = phi.site(phi.size() - 1);
  if (a.dim(1) != 2) return 1.0;
  double r = 0.0;
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t l = 0; l < 2; ++l) {
      r = std::max(r, std::abs(a.at({s, l, 0}) - Complex(s == l ? 1.0 : 0.0)));
    }
  }
  return r;
}

TEST(CircuitToMps, IdentityGatesGiveZeroState) {
  const auto phi = circuit_to_mps(StaircaseCircuit(6, 1));
  EXPECT_NEAR(fidelity(to_dense(phi), DenseState::zero(6)), 1.0, 1e-14);
}

TEST(CircuitToMps, BellPlusZeros) {
  StaircaseCircuit c(5, 1);
  const double h = 1.0 / std::sqrt(2.0);
  c.set_gate(0, 0, ComplexTensor({4, 4}, {h, 0, 0, h, 0, 1, 0, 0, 0, 0, 1, 0, h, 0, 0, -h}));
  const auto phi = circuit_to_mps(c);
  EXPECT_LE(phi.max_bond(), 2u);
  EXPECT_NEAR(fidelity(to_dense(phi), prepare(c)), 1.0, 1e-14);
}

TEST(CircuitToMps, RandomCircuitsAreReproduced) {
  for (std::size_t n : {2u, 3u, 4u, 6u, 8u}) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto c = random_circuit(n, 1, 100 * n + s);
      const auto phi = circuit_to_mps(c);
      EXPECT_LE(phi.max_bond(), 2u);
      EXPECT_GE(fidelity(to_dense(phi), prepare(c)), 1.0 - 1e-10);
      EXPECT_LE(last_site_identity_residual(phi), 1e-14);
    }
  }
}

TEST(CircuitToMps, RejectsDeeperCircuits) {
  EXPECT_THROW(circuit_to_mps(StaircaseCircuit(4, 2)), std::invalid_argument);
}

TEST(CompleteGate, FillsKernelAndStaysUnitary) {
  const auto u = random_unitary(4, 7);
  std::vector<std::pair<std::size_t, Eigen::Vector4cd>> spec;
  for (std::size_t col : {1u, 3u}) {
    Eigen::Vector4cd v;
    for (int i = 0; i < 4; ++i) v(i) = u.at({static_cast<std::size_t>(i), col});
    spec.emplace_back(col, v);
  }
  KernelCompletion kc;
  const auto g = complete_gate(spec, &kc);
  EXPECT_LE(unitarity_residual(g), 1e-10);
  for (std::size_t col : {1u, 3u}) {
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(g.at({i, col}), u.at({i, col}));
  }
  ASSERT_EQ(kc.eigenvalues.size(), 4u);
  EXPECT_LT(kc.eigenvalues[0], 1e-10);
  EXPECT_LT(kc.eigenvalues[1], 1e-10);
  EXPECT_GT(kc.eigenvalues[2], 1e-10);
  ASSERT_EQ(kc.kernel_vectors.size(), 2u);
  // Kernel vectors are orthogonal to the specified block and to each other.
  for (const auto& kv : kc.kernel_vectors) {
    for (const auto& [col, b] : spec) {
      Complex dot = 0.0;
      for (std::size_t i = 0; i < 4; ++i) dot += std::conj(b(static_cast<int>(i))) * kv.data()[i];
      EXPECT_LT(std::abs(dot), 1e-10);
    }
  }
  Complex cross = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    cross += std::conj(kc.kernel_vectors[0].data()[i]) * kc.kernel_vectors[1].data()[i];
  }
  EXPECT_LT(std::abs(cross), 1e-10);
}

TEST(CompleteGate, RejectsNonIsometricBlock) {
  Eigen::Vector4cd a(1.0, 0.0, 0.0, 0.0);
  Eigen::Vector4cd b(1.0, 1.0, 0.0, 0.0);
  EXPECT_THROW(complete_gate({{0, a}, {1, b}}), NumericalError);
  EXPECT_THROW(complete_gate({{0, a}, {0, a}}), std::invalid_argument);
}

TEST(GaugeFix, RandomBondTwo) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto phi = random_mps(6, 2, s);
    const auto g = gauge_fix_last_tensor(phi);
    EXPECT_LE(last_site_identity_residual(g), 1e-12);
    EXPECT_LE(right_canonical_residual(g), 1e-10);
    EXPECT_NEAR(std::abs(overlap(phi, g)), 1.0, 1e-10);
    for (auto d : g.bond_dims()) EXPECT_EQ(d, 2u);
  }
}

TEST(GaugeFix, AlreadyFixedIsUnchanged) {
  const auto once = gauge_fix_last_tensor(random_mps(5, 2, 3));
  const auto twice = gauge_fix_last_tensor(once);
  EXPECT_LE(last_site_identity_residual(twice), 1e-12);
  EXPECT_NEAR(std::abs(overlap(once, twice)), 1.0, 1e-12);
}

TEST(GaugeFix, ProductStateIsPadded) {
  const auto phi = random_mps(5, 1, 4);
  const auto g = gauge_fix_last_tensor(phi);
  for (auto d : g.bond_dims()) EXPECT_EQ(d, 2u);
  EXPECT_LE(last_site_identity_residual(g), 1e-12);
  EXPECT_NEAR(std::abs(overlap(phi, g)), 1.0, 1e-12);
}

TEST(GaugeFix, RejectsLargeBonds) {
  EXPECT_THROW(gauge_fix_last_tensor(random_mps(6, 3, 1)), std::invalid_argument);
}

TEST(MpsToCircuit, ZeroState) {
  const auto c = mps_to_circuit(MatrixProductState::zero(5));
  EXPECT_NEAR(*nlf(DenseState::zero(5), prepare(c)), 0.0, 1e-12);
}

TEST(MpsToCircuit, Ghz) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto c = mps_to_circuit(from_dense(DenseState::ghz(n)));
    EXPECT_LE(*nlf(DenseState::ghz(n), prepare(c)), 1e-8);
  }
}

TEST(MpsToCircuit, RandomBondTwoStates) {
  for (std::size_t n : {2u, 4u, 6u, 8u}) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto phi = random_mps(n, 2, 1000 + s);
      const auto syn = synthesize_circuit(phi);
      EXPECT_GE(fidelity(prepare(syn.circuit), to_dense(phi)), 1.0 - 1e-8);
      for (std::size_t k = 0; k < syn.circuit.gate_count(); ++k) {
        EXPECT_LE(unitarity_residual(syn.circuit.gate_at(k)), 1e-10);
      }
      ASSERT_EQ(syn.completions.size(), n - 1);
      for (std::size_t p = 0; p < n - 1; ++p) {
        const auto& ev = syn.completions[p].eigenvalues;
        const auto small = std::count_if(ev.begin(), ev.end(), [](double v) { return v < 1e-10; });
        EXPECT_EQ(small, p == 0 ? 3 : 2) << "n=" << n << " p=" << p;
      }
    }
  }
}

TEST(MpsToCircuit, RoundTripThroughCircuits) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto c = random_circuit(8, 1, 500 + s);
    const auto back = mps_to_circuit(circuit_to_mps(c));
    EXPECT_GE(fidelity(prepare(back), prepare(c)), 1.0 - 1e-8);
  }
}

TEST(MpsToCircuit, BondTwoEntanglementIsExactlyReachable) {
  const auto c = random_circuit(7, 1, 77);
  EXPECT_LE(*chi_mpe(prepare(c), 2).value_bits, 1e-6);
}

TEST(MpsToCircuit, RejectsBadInput) {
  EXPECT_THROW(mps_to_circuit(random_mps(6, 4, 1)), std::invalid_argument);
}

}  // namespace
}  // namespace chimpe
