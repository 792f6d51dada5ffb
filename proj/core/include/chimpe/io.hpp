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

// JSON file formats.
//
//   DenseState: {"n": N, "re": [...], "im": [...]}, basis |s_1 ... s_N>, s_1
//               slowest.
//   MPS:        {"n": N, "bond_dims": [...], "sites": [{"shape": [2, dl, dr],
//               "re": [...], "im": [...]}, ...]}, site data row-major.
//   Circuit:    {"n": N, "depth": D, "gates": [{"layer": d, "pos": p,
//               "re": [16], "im": [16]}, ...]}, gates row-major in the basis
//               |q_p q_{p+1}>, column = input.

#include <filesystem>
#include <nlohmann/json.hpp>

#include "chimpe/circuit.hpp"
#include "chimpe/dense_state.hpp"
#include "chimpe/mps.hpp"

namespace chimpe {

nlohmann::json to_json(const DenseState& psi);
nlohmann::json to_json(const MatrixProductState& phi);
nlohmann::json to_json(const StaircaseCircuit& c);

/// Parsers throw std::invalid_argument on schema violations.
DenseState dense_state_from_json(const nlohmann::json& j);
MatrixProductState mps_from_json(const nlohmann::json& j);
StaircaseCircuit circuit_from_json(const nlohmann::json& j);

/// File helpers; failures surface as IoError carrying the path.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace chimpe
