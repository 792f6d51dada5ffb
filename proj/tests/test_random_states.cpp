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

#include "chimpe/mps.hpp"
#include "chimpe/random_states.hpp"

namespace chimpe {
namespace {

double mean_half_chain_entropy(std::size_t n, double mu, double sigma, std::uint64_t samples) {
  double sum = 0.0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    sum += entanglement_entropy(from_dense(generalized_rps({n, mu, sigma, s})), n / 2);
  }
  return sum / static_cast<double>(samples);
}

TEST(Rps, ZeroSigmaIsUniformSuperposition) {
  const auto psi = generalized_rps({6, 5.0, 0.0, 0});
  for (auto a : psi.amplitudes()) EXPECT_EQ(a, Complex(1.0 / 8.0));
  EXPECT_NEAR(entanglement_entropy(from_dense(psi), 3), 0.0, 1e-12);
  EXPECT_THROW(generalized_rps({4, 0.0, 0.0, 0}), std::invalid_argument);
}

TEST(Rps, NormalizedAndDeterministic) {
  const auto a = generalized_rps({10, 5.0, 2.0, 17});
  const auto b = generalized_rps({10, 5.0, 2.0, 17});
  EXPECT_NEAR(a.norm(), 1.0, 1e-12);
  for (std::size_t i = 0; i < a.dimension(); ++i) EXPECT_EQ(a.amplitudes()[i], b.amplitudes()[i]);
  const auto c = generalized_rps({10, 5.0, 2.0, 18});
  EXPECT_NE(a.amplitudes()[0], c.amplitudes()[0]);
}

TEST(Rps, RejectsBadSpec) {
  EXPECT_THROW(generalized_rps({4, 1.0, -1.0, 0}), std::invalid_argument);
  EXPECT_THROW(generalized_rps({0, 1.0, 1.0, 0}), std::invalid_argument);
}

TEST(Rps, AmplitudesAreComplexGaussian) {
  // Unnormalized moments: with mu = 0 the re/im parts are independent N(0,1),
  // so after normalization E|a|^2 = 1/dim and E[re a * im a] = 0.
  const auto psi = generalized_rps({12, 0.0, 1.0, 5});
  double re2 = 0.0, im2 = 0.0, cross = 0.0;
  for (auto a : psi.amplitudes()) {
    re2 += a.real() * a.real();
    im2 += a.imag() * a.imag();
    cross += a.real() * a.imag();
  }
  EXPECT_NEAR(re2, 0.5, 0.03);
  EXPECT_NEAR(im2, 0.5, 0.03);
  EXPECT_NEAR(cross, 0.0, 0.03);
}

TEST(Page, ReferenceValues) {
  EXPECT_NEAR(page_entropy_reference(12), 5.27865, 1e-5);
  EXPECT_NEAR(page_entropy_reference(2), 0.27865, 1e-5);
  EXPECT_DOUBLE_EQ(page_entropy_reference(4), 2.0 - 1.0 / (2.0 * std::log(2.0)));
  EXPECT_THROW(page_entropy_reference(5), std::invalid_argument);
}

TEST(Rps, EntanglementGrowsWithSigma) {
  EXPECT_LT(mean_half_chain_entropy(12, 5.0, 0.5, 20), mean_half_chain_entropy(12, 5.0, 16.0, 20));
}

}  // namespace
}  // namespace chimpe
