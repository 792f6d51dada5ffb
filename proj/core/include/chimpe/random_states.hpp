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

#include <cstddef>
#include <cstdint>

#include "chimpe/dense_state.hpp"

namespace chimpe {

/// Gaussian-shifted random pure state: every amplitude has independent real
/// and imaginary parts from N(mu, sigma) before normalization.
struct RpsSpec {
  std::size_t n_qubits = 12;
  double mu = 5.0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
};

/// sigma == 0 gives the uniform superposition |+>^N exactly (mu != 0).
DenseState generalized_rps(const RpsSpec& spec);

/// Average half-chain entropy of a Haar random state, N/2 - 1/(2 ln 2) bits.
/// Requires even N.
double page_entropy_reference(std::size_t n_qubits);

}  // namespace chimpe
