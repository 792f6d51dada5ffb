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

#include "chimpe/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "chimpe/error.hpp"
#include "chimpe/linalg.hpp"
#include "chimpe/measures.hpp"
#include "chimpe/rng.hpp"

namespace chimpe {
namespace {

using Amplitudes = std::vector<Complex>;

void require_gate(const ComplexTensor& g) {
  if (g.rank() != 2 || g.dim(0) != 4 || g.dim(1) != 4) {
    throw DimensionError("two-qubit gates must be 4x4");
  }
  if (!g.all_finite()) throw NumericalError("gate has non-finite entries");
  if (unitarity_residual(g) > kUnitarityTol) throw std::invalid_argument("gate is not unitary");
}

// Calls f(i00, i01, i10, i11) for every block of four amplitudes that differ
// only on qubits (q, q+1).
template <typename F>
void for_each_pair_block(std::size_t n_qubits, std::size_t q, F&& f) {
  const std::size_t lo_bits = n_qubits - q - 2;
  const std::size_t lo_count = std::size_t{1} << lo_bits;
  const std::size_t hi_count = std::size_t{1} << q;
  const std::size_t s_lo = lo_count;       // stride of qubit q+1
  const std::size_t s_hi = lo_count << 1;  // stride of qubit q
  for (std::size_t hi = 0; hi < hi_count; ++hi) {
    const std::size_t base_hi = hi << (lo_bits + 2);
    for (std::size_t lo = 0; lo < lo_count; ++lo) {
      const std::size_t b = base_hi | lo;
      f(b, b + s_lo, b + s_hi, b + s_hi + s_lo);
    }
  }
}

void check_pair(std::size_t n_qubits, std::size_t q) {
  if (n_qubits < 2 || q + 1 >= n_qubits) throw std::invalid_argument("qubit pair out of range");
}

// E(j, i) = sum_rest phi[j, rest] * conj(chi[i, rest]).
Matrix pair_environment(std::span<const Complex> phi, std::span<const Complex> chi,
                        std::size_t n_qubits, std::size_t q) {
  Eigen::Matrix4cd e = Eigen::Matrix4cd::Zero();
  for_each_pair_block(n_qubits, q, [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    const Eigen::Vector4cd p(phi[a], phi[b], phi[c], phi[d]);
    const Eigen::Vector4cd x(chi[a], chi[b], chi[c], chi[d]);
    e.noalias() += p * x.adjoint();
  });
  return e;
}

ComplexTensor haar_unitary(Rng& rng) {
  Matrix m(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) m(i, j) = gaussian_complex(rng);
  }
  const QrResult qr = thin_qr(m);
  Matrix q = qr.q;
  for (Eigen::Index j = 0; j < 4; ++j) {
    const Complex d = qr.r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return from_matrix(q);
}

struct RestartOutcome {
  StaircaseCircuit circuit;
  double amplitude = 0.0;
  std::vector<double> history;
  std::vector<double> updates;
  bool converged = false;
};

double bits(double amp) { return amp > 0.0 ? std::max(0.0, -2.0 * std::log2(std::min(amp, 1.0))) : std::numeric_limits<double>::infinity(); }

RestartOutcome optimize_from(const DenseState& psi, StaircaseCircuit c, const FitOptions& opt) {
  const std::size_t n = psi.n_qubits();
  const std::size_t k_total = c.gate_count();
  const std::size_t per_layer = c.gates_per_layer();
  auto qubit_of = [per_layer](std::size_t k) { return k % per_layer; };

  // forward[k] = G_{k-1} ... G_0 |0>, backward[k] = G_k^dag ... G_{K-1}^dag |psi>.
  std::vector<Amplitudes> forward(k_total + 1);
  std::vector<Amplitudes> backward(k_total + 1);
  forward[0] = Amplitudes(psi.dimension());
  forward[0][0] = 1.0;
  backward[k_total] = Amplitudes(psi.amplitudes().begin(), psi.amplitudes().end());
  for (std::size_t k = k_total; k-- > 0;) {
    backward[k] = backward[k + 1];
    apply_two_qubit_adjoint(backward[k], n, qubit_of(k), c.gate_at(k));
  }

  RestartOutcome out{c, std::abs(backward[0][0]), {}, {}, false};
  out.history.push_back(bits(out.amplitude));

  auto update = [&](std::size_t k) {
    const Matrix e = pair_environment(forward[k], backward[k + 1], n, qubit_of(k));
    const Matrix g = polar_unitary(e);
    c.set_gate_at(k, from_matrix(g));
    const double amp = std::abs((g * e).trace());
    if (opt.record_updates) out.updates.push_back(amp);
    return amp;
  };

  for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
    double amp = out.amplitude;
    for (std::size_t k = 0; k < k_total; ++k) {
      amp = update(k);
      forward[k + 1] = forward[k];
      apply_two_qubit(forward[k + 1], n, qubit_of(k), c.gate_at(k));
    }
    for (std::size_t k = k_total; k-- > 0;) {
      // The last gate was optimized at the end of the forward pass.
      if (k + 1 < k_total) amp = update(k);
      backward[k] = backward[k + 1];
      apply_two_qubit_adjoint(backward[k], n, qubit_of(k), c.gate_at(k));
    }
    const double f_prev = out.history.back();
    const double f = bits(amp);
    out.history.push_back(f);
    out.amplitude = amp;
    if (std::abs(f_prev - f) < opt.tol_bits) {
      out.converged = true;
      break;
    }
  }
  out.circuit = std::move(c);
  return out;
}

}  // namespace

StaircaseCircuit::StaircaseCircuit(std::size_t n_qubits, std::size_t depth)
    : n_(n_qubits), depth_(depth) {
  if (n_ < 2) throw std::invalid_argument("a staircase circuit needs at least two qubits");
  if (depth_ < 1) throw std::invalid_argument("circuit depth must be at least 1");
  gates_.assign(depth_ * (n_ - 1), ComplexTensor::identity(4));
}

StaircaseCircuit::StaircaseCircuit(std::size_t n_qubits, std::size_t depth,
                                   std::vector<ComplexTensor> gates)
    : StaircaseCircuit(n_qubits, depth) {
  if (gates.size() != gates_.size()) {
    throw DimensionError("expected " + std::to_string(gates_.size()) + " gates, got " +
                         std::to_string(gates.size()));
  }
  for (const auto& g : gates) require_gate(g);
  gates_ = std::move(gates);
}

std::size_t StaircaseCircuit::index(std::size_t layer, std::size_t pos) const {
  if (layer >= depth_ || pos + 1 >= n_) throw std::invalid_argument("gate index out of range");
  return layer * (n_ - 1) + pos;
}

const ComplexTensor& StaircaseCircuit::gate(std::size_t layer, std::size_t pos) const {
  return gates_[index(layer, pos)];
}

void StaircaseCircuit::set_gate(std::size_t layer, std::size_t pos, ComplexTensor g) {
  set_gate_at(index(layer, pos), std::move(g));
}

void StaircaseCircuit::set_gate_at(std::size_t k, ComplexTensor g) {
  if (k >= gates_.size()) throw std::invalid_argument("gate index out of range");
  require_gate(g);
  gates_[k] = std::move(g);
}

StaircaseCircuit StaircaseCircuit::padded(std::size_t extra) const {
  StaircaseCircuit out(n_, depth_ + extra);
  std::copy(gates_.begin(), gates_.end(), out.gates_.begin());
  return out;
}

void apply_two_qubit(std::span<Complex> amps, std::size_t n_qubits, std::size_t q,
                     const ComplexTensor& g) {
  check_pair(n_qubits, q);
  const auto m = as_row_major(g.data(), 4, 4);
  for_each_pair_block(n_qubits, q, [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    const Complex x0 = amps[a], x1 = amps[b], x2 = amps[c], x3 = amps[d];
    amps[a] = m(0, 0) * x0 + m(0, 1) * x1 + m(0, 2) * x2 + m(0, 3) * x3;
    amps[b] = m(1, 0) * x0 + m(1, 1) * x1 + m(1, 2) * x2 + m(1, 3) * x3;
    amps[c] = m(2, 0) * x0 + m(2, 1) * x1 + m(2, 2) * x2 + m(2, 3) * x3;
    amps[d] = m(3, 0) * x0 + m(3, 1) * x1 + m(3, 2) * x2 + m(3, 3) * x3;
  });
}

void apply_two_qubit_adjoint(std::span<Complex> amps, std::size_t n_qubits, std::size_t q,
                             const ComplexTensor& g) {
  apply_two_qubit(amps, n_qubits, q, adjoint(g));
}

DenseState apply_circuit(const StaircaseCircuit& c, const DenseState& input) {
  if (c.n_qubits() != input.n_qubits()) throw DimensionError("circuit and state sizes differ");
  if (input.n_qubits() > kDefaultDenseCap) throw std::invalid_argument("state exceeds the qubit cap");
  DenseState out = input;
  for (std::size_t k = 0; k < c.gate_count(); ++k) {
    apply_two_qubit(out.amplitudes(), out.n_qubits(), k % c.gates_per_layer(), c.gate_at(k));
  }
  return out;
}

DenseState prepare(const StaircaseCircuit& c) {
  return apply_circuit(c, DenseState::zero(c.n_qubits()));
}

StaircaseCircuit random_circuit(std::size_t n_qubits, std::size_t depth, std::uint64_t seed) {
  StaircaseCircuit c(n_qubits, depth);
  Rng rng(seed);
  for (std::size_t k = 0; k < c.gate_count(); ++k) c.set_gate_at(k, haar_unitary(rng));
  return c;
}

ComplexTensor gate_environment(const StaircaseCircuit& c, const DenseState& psi,
                               std::size_t layer, std::size_t pos) {
  if (c.n_qubits() != psi.n_qubits()) throw DimensionError("circuit and state sizes differ");
  if (layer >= c.depth() || pos >= c.gates_per_layer()) {
    throw std::invalid_argument("gate index out of range");
  }
  const std::size_t n = c.n_qubits();
  const std::size_t target = layer * c.gates_per_layer() + pos;
  Amplitudes phi(psi.dimension());
  phi[0] = 1.0;
  for (std::size_t k = 0; k < target; ++k) {
    apply_two_qubit(phi, n, k % c.gates_per_layer(), c.gate_at(k));
  }
  Amplitudes chi(psi.amplitudes().begin(), psi.amplitudes().end());
  for (std::size_t k = c.gate_count(); k-- > target + 1;) {
    apply_two_qubit_adjoint(chi, n, k % c.gates_per_layer(), c.gate_at(k));
  }
  return from_matrix(pair_environment(phi, chi, n, pos));
}

FitResult fit_circuit(const DenseState& psi, std::size_t depth, const FitOptions& options) {
  require_normalized(psi, "fit_circuit");
  if (options.restarts < 1) throw std::invalid_argument("fit_circuit needs at least one restart");
  if (options.initial && (options.initial->n_qubits() != psi.n_qubits() ||
                          options.initial->depth() != depth)) {
    throw std::invalid_argument("initial circuit does not match the requested shape");
  }
  const std::size_t n = psi.n_qubits();
  FitResult best{StaircaseCircuit(n, depth), std::nullopt, false, 0, 0, {}, {}};
  double best_amp = -1.0;
  for (int r = 0; r < options.restarts; ++r) {
    StaircaseCircuit init = (r == 0 && options.initial)
                                ? *options.initial
                                : random_circuit(n, depth, derive_seed(options.seed, r));
    RestartOutcome run = optimize_from(psi, std::move(init), options);
    if (run.amplitude > best_amp) {
      best_amp = run.amplitude;
      best.circuit = std::move(run.circuit);
      best.converged = run.converged;
      best.sweeps_used = static_cast<int>(run.history.size()) - 1;
      best.best_restart = static_cast<std::size_t>(r);
      best.history = std::move(run.history);
      best.update_overlaps = std::move(run.updates);
    }
  }
  best.f_bits = nlf(psi, prepare(best.circuit));
  return best;
}

}  // namespace chimpe
