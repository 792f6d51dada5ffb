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

#include "chimpe/random_states.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "chimpe/rng.hpp"

namespace chimpe {

DenseState generalized_rps(const RpsSpec& spec) {
  if (spec.n_qubits == 0 || spec.n_qubits > kDefaultDenseCap) {
    throw std::invalid_argument("RPS qubit count out of range");
  }
  if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma) || !std::isfinite(spec.mu)) {
    throw std::invalid_argument("RPS needs finite mu and sigma >= 0");
  }
  const std::size_t dim = std::size_t{1} << spec.n_qubits;
  std::vector<Complex> amps(dim);
  if (spec.sigma == 0.0) {
    if (spec.mu == 0.0) throw std::invalid_argument("mu = sigma = 0 gives the zero vector");
    // Every amplitude equal; normalization is exact for a power-of-two count.
    const double a = 1.0 / std::sqrt(static_cast<double>(dim));
    amps.assign(dim, Complex{a, 0.0});
    return DenseState(spec.n_qubits, std::move(amps));
  }
  Rng rng(spec.seed);
  for (auto& z : amps) z = gaussian_complex(rng, spec.mu, spec.sigma);
  return DenseState::normalized(spec.n_qubits, std::move(amps));
}

double page_entropy_reference(std::size_t n_qubits) {
  if (n_qubits == 0 || n_qubits % 2 != 0) {
    throw std::invalid_argument("the half-chain reference needs an even qubit count");
  }
  return static_cast<double>(n_qubits) / 2.0 - 1.0 / (2.0 * std::log(2.0));
}

}  // namespace chimpe
