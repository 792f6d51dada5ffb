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

#include "chimpe/io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "chimpe/error.hpp"

namespace chimpe {
namespace {

using nlohmann::json;

void split_complex(std::span<const Complex> values, json& j) {
  json re = json::array();
  json im = json::array();
  for (const auto& z : values) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
}

std::vector<Complex> join_complex(const json& j, std::size_t expected, const char* what) {
  if (!j.contains("re") || !j.contains("im") || !j["re"].is_array() || !j["im"].is_array()) {
    throw std::invalid_argument(std::string(what) + ": missing re/im arrays");
  }
  const auto& re = j["re"];
  const auto& im = j["im"];
  if (re.size() != expected || im.size() != expected) {
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(expected) +
                                " amplitudes");
  }
  std::vector<Complex> out(expected);
  for (std::size_t i = 0; i < expected; ++i) {
    out[i] = {re[i].get<double>(), im[i].get<double>()};
  }
  return out;
}

std::size_t get_size(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0) {
    throw std::invalid_argument(std::string("missing or invalid field '") + key + "'");
  }
  return j[key].get<std::size_t>();
}

}  // namespace

json to_json(const DenseState& psi) {
  json j;
  j["n"] = psi.n_qubits();
  split_complex(psi.amplitudes(), j);
  return j;
}

json to_json(const MatrixProductState& phi) {
  json j;
  j["n"] = phi.size();
  j["bond_dims"] = phi.bond_dims();
  json sites = json::array();
  for (const auto& a : phi.sites()) {
    json s;
    s["shape"] = a.shape();
    split_complex(a.data(), s);
    sites.push_back(std::move(s));
  }
  j["sites"] = std::move(sites);
  return j;
}

json to_json(const StaircaseCircuit& c) {
  json j;
  j["n"] = c.n_qubits();
  j["depth"] = c.depth();
  json gates = json::array();
  for (std::size_t d = 0; d < c.depth(); ++d) {
    for (std::size_t p = 0; p < c.gates_per_layer(); ++p) {
      json g;
      g["layer"] = d;
      g["pos"] = p;
      split_complex(c.gate(d, p).data(), g);
      gates.push_back(std::move(g));
    }
  }
  j["gates"] = std::move(gates);
  return j;
}

DenseState dense_state_from_json(const json& j) {
  const std::size_t n = get_size(j, "n");
  if (n == 0 || n > kDefaultDenseCap) throw std::invalid_argument("state qubit count out of range");
  return DenseState(n, join_complex(j, std::size_t{1} << n, "state"));
}

MatrixProductState mps_from_json(const json& j) {
  const std::size_t n = get_size(j, "n");
  if (!j.contains("sites") || !j["sites"].is_array() || j["sites"].size() != n) {
    throw std::invalid_argument("mps: 'sites' must list n site tensors");
  }
  std::vector<ComplexTensor> sites;
  for (const auto& s : j["sites"]) {
    if (!s.contains("shape")) throw std::invalid_argument("mps: site without shape");
    const auto shape = s["shape"].get<std::vector<std::size_t>>();
    if (shape.size() != 3) throw std::invalid_argument("mps: site shape must have rank 3");
    sites.emplace_back(shape, join_complex(s, shape[0] * shape[1] * shape[2], "mps site"));
  }
  MatrixProductState phi(std::move(sites));
  if (j.contains("bond_dims") && j["bond_dims"].get<std::vector<std::size_t>>() != phi.bond_dims()) {
    throw std::invalid_argument("mps: bond_dims disagree with site shapes");
  }
  return phi;
}

StaircaseCircuit circuit_from_json(const json& j) {
  const std::size_t n = get_size(j, "n");
  const std::size_t depth = get_size(j, "depth");
  StaircaseCircuit c(n, depth);
  if (!j.contains("gates") || !j["gates"].is_array() || j["gates"].size() != c.gate_count()) {
    throw std::invalid_argument("circuit: expected " + std::to_string(c.gate_count()) + " gates");
  }
  std::vector<bool> seen(c.gate_count(), false);
  for (const auto& g : j["gates"]) {
    const std::size_t layer = get_size(g, "layer");
    const std::size_t pos = get_size(g, "pos");
    if (layer >= depth || pos + 1 >= n) throw std::invalid_argument("circuit: gate index out of range");
    const std::size_t k = layer * (n - 1) + pos;
    if (seen[k]) throw std::invalid_argument("circuit: duplicate gate entry");
    seen[k] = true;
    c.set_gate(layer, pos, ComplexTensor({4, 4}, join_complex(g, 16, "gate")));
  }
  return c;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(path.string(), std::string("invalid JSON: ") + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << text;
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  // max_digits10 via nlohmann's default double formatting round-trips exactly.
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace chimpe
