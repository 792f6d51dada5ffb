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

#include "chimpe/circuit.hpp"
#include "chimpe/error.hpp"
#include "chimpe/linalg.hpp"
#include "chimpe/measures.hpp"
#include "chimpe/mps.hpp"
#include "test_util.hpp"

namespace chimpe {
namespace {

using testing::max_abs_diff;
using testing::naive_matmul;
using testing::random_state;
using testing::random_unitary;

// Full 2^N x 2^N matrix of a gate on qubits (p, p+1), qubit 0 most significant.
ComplexTensor embed(const ComplexTensor& g, std::size_t n, std::size_t p) {
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t shift = n - p - 2;
  ComplexTensor m({dim, dim});
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t in_pair = (col >> shift) & 3;
    for (std::size_t out_pair = 0; out_pair < 4; ++out_pair) {
      const std::size_t row = (col & ~(std::size_t{3} << shift)) | (out_pair << shift);
      m.at({row, col}) += g.at({out_pair, in_pair});
    }
  }
  return m;
}

std::vector<Complex> dense_oracle(const StaircaseCircuit& c) {
  const std::size_t n = c.n_qubits();
  const std::size_t dim = std::size_t{1} << n;
  ComplexTensor u = ComplexTensor::identity(dim);
  for (std::size_t d = 0; d < c.depth(); ++d) {
    for (std::size_t p = 0; p + 1 < n; ++p) u = naive_matmul(embed(c.gate(d, p), n, p), u);
  }
  std::vector<Complex> out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = u.at({i, 0});
  return out;
}

ComplexTensor bell_gate() {
  // Column |00> -> (|00> + |11>)/sqrt2, completed to a unitary.
  const double h = 1.0 / std::sqrt(2.0);
  return ComplexTensor({4, 4}, {h, 0, 0, h,  //
                                0, 1, 0, 0,  //
                                0, 0, 1, 0,  //
                                h, 0, 0, -h});
}

TEST(Circuit, IdentityGatesKeepZeroState) {
  const auto psi = prepare(StaircaseCircuit(5, 3));
  EXPECT_EQ(psi.amplitudes()[0], Complex(1.0));
  for (std::size_t i = 1; i < psi.dimension(); ++i) EXPECT_EQ(psi.amplitudes()[i], Complex(0.0));
}

TEST(Circuit, BellGatePreparesBellState) {
  StaircaseCircuit c(2, 1);
  c.set_gate(0, 0, bell_gate());
  const auto psi = prepare(c);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(psi.amplitudes()[0].real(), h, 1e-15);
  EXPECT_NEAR(psi.amplitudes()[3].real(), h, 1e-15);
  EXPECT_NEAR(std::abs(psi.amplitudes()[1]) + std::abs(psi.amplitudes()[2]), 0.0, 1e-15);
}

TEST(Circuit, MatchesFullMatrixOracle) {
  for (std::size_t depth = 1; depth <= 3; ++depth) {
    const auto c = random_circuit(4, depth, 7 + depth);
    const auto psi = prepare(c);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    const auto oracle = dense_oracle(c);
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      EXPECT_LT(std::abs(psi.amplitudes()[i] - oracle[i]), 1e-12);
    }
  }
}

TEST(Circuit, ApplyToArbitraryInput) {
  const auto c = random_circuit(4, 2, 3);
  const auto in = random_state(4, 4);
  const auto out = apply_circuit(c, in);
  std::vector<Complex> in_amps(in.amplitudes().begin(), in.amplitudes().end());
  ComplexTensor u = ComplexTensor::identity(16);
  for (std::size_t d = 0; d < 2; ++d) {
    for (std::size_t p = 0; p < 3; ++p) u = naive_matmul(embed(c.gate(d, p), 4, p), u);
  }
  for (std::size_t i = 0; i < 16; ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < 16; ++j) s += u.at({i, j}) * in_amps[j];
    EXPECT_LT(std::abs(out.amplitudes()[i] - s), 1e-12);
  }
}

TEST(Circuit, UnitarityIsEnforced) {
  StaircaseCircuit c(3, 1);
  EXPECT_THROW(c.set_gate(0, 0, 2.0 * ComplexTensor::identity(4)), std::invalid_argument);
  EXPECT_THROW(c.set_gate(0, 0, ComplexTensor::identity(2)), DimensionError);
  EXPECT_THROW(c.set_gate(1, 0, ComplexTensor::identity(4)), std::invalid_argument);
  EXPECT_THROW(StaircaseCircuit(1, 1), std::invalid_argument);
  EXPECT_THROW(StaircaseCircuit(3, 0), std::invalid_argument);
}

TEST(RandomCircuit, UnitaryAndDeterministic) {
  const auto a = random_circuit(6, 2, 11);
  const auto b = random_circuit(6, 2, 11);
  EXPECT_EQ(a.gate_count(), 10u);
  for (std::size_t k = 0; k < a.gate_count(); ++k) {
    EXPECT_LE(unitarity_residual(a.gate_at(k)), 1e-12);
    EXPECT_EQ(a.gate_at(k).values(), b.gate_at(k).values());
  }
}

TEST(RandomCircuit, SingleLayerObeysBondTwoAreaLaw) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto phi = from_dense(prepare(random_circuit(8, 1, 50 + s)));
    for (std::size_t cut = 1; cut < 8; ++cut) EXPECT_LE(entanglement_entropy(phi, cut), 1.0 + 1e-10);
  }
}

TEST(Environment, SelfConsistentForPreparedState) {
  const auto c = random_circuit(2, 1, 12);
  const auto e = gate_environment(c, prepare(c), 0, 0);
  const Complex t = trace(matmul(c.gate(0, 0), e));
  EXPECT_NEAR(t.real(), 1.0, 1e-12);
  EXPECT_NEAR(t.imag(), 0.0, 1e-12);
}

TEST(Environment, SubstitutionOracle) {
  const auto c = random_circuit(5, 2, 13);
  const auto psi = random_state(5, 14);
  for (std::size_t d = 0; d < 2; ++d) {
    for (std::size_t p = 0; p < 4; ++p) {
      const auto e = gate_environment(c, psi, d, p);
      for (std::uint64_t k = 0; k < 20; ++k) {
        StaircaseCircuit w = c;
        const auto u = random_unitary(4, 1000 * d + 100 * p + k);
        w.set_gate(d, p, u);
        const Complex direct = inner(psi, prepare(w));
        EXPECT_LT(std::abs(trace(matmul(u, e)) - direct), 1e-10);
      }
      StaircaseCircuit deleted = c;
      deleted.set_gate(d, p, ComplexTensor::identity(4));
      EXPECT_LT(std::abs(trace(e) - inner(psi, prepare(deleted))), 1e-10);
    }
  }
  EXPECT_THROW(gate_environment(c, psi, 2, 0), std::invalid_argument);
}

TEST(Fit, RecoversRealizableTargets) {
  for (std::size_t depth = 1; depth <= 2; ++depth) {
    const auto psi = prepare(random_circuit(6, depth, 20 + depth));
    const auto r = fit_circuit(psi, depth);
    ASSERT_TRUE(r.f_bits);
    EXPECT_LE(*r.f_bits, 1e-6) << "depth " << depth;
  }
}

TEST(Fit, GhzWithOneLayer) {
  const auto r = fit_circuit(DenseState::ghz(6), 1);
  EXPECT_LE(*r.f_bits, 1e-6);
}

TEST(Fit, ZeroStateIsFree) {
  FitOptions o;
  o.initial = StaircaseCircuit(5, 2);
  const auto r = fit_circuit(DenseState::zero(5), 2, o);
  EXPECT_NEAR(*r.f_bits, 0.0, 1e-14);
}

TEST(Fit, EveryUpdateIsMonotone) {
  FitOptions o;
  o.restarts = 1;
  o.max_sweeps = 20;
  o.record_updates = true;
  const auto r = fit_circuit(random_state(6, 30), 2, o);
  ASSERT_GT(r.update_overlaps.size(), 10u);
  for (std::size_t i = 1; i < r.update_overlaps.size(); ++i) {
    EXPECT_GE(r.update_overlaps[i], r.update_overlaps[i - 1] - 1e-12);
  }
  for (std::size_t i = 1; i < r.history.size(); ++i) EXPECT_LE(r.history[i], r.history[i - 1] + 1e-12);
  for (std::size_t k = 0; k < r.circuit.gate_count(); ++k) {
    EXPECT_LE(unitarity_residual(r.circuit.gate_at(k)), 1e-10);
  }
}

TEST(Fit, DeepeningNeverHurts) {
  const auto psi = random_state(6, 31);
  const auto shallow = fit_circuit(psi, 1);
  FitOptions o;
  o.restarts = 1;
  o.initial = shallow.circuit.padded(1);
  const auto deep = fit_circuit(psi, 2, o);
  EXPECT_LE(*deep.f_bits, *shallow.f_bits + 1e-9);
}

TEST(Fit, DeterministicPerSeed) {
  const auto psi = random_state(5, 32);
  FitOptions o;
  o.seed = 9;
  EXPECT_EQ(*fit_circuit(psi, 2, o).f_bits, *fit_circuit(psi, 2, o).f_bits);
}

}  // namespace
}  // namespace chimpe
