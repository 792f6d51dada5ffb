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

#include "chimpe/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "chimpe/error.hpp"
#include "chimpe/linalg.hpp"

namespace chimpe {
namespace {

std::size_t product(const std::vector<std::size_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

void check_shape(const std::vector<std::size_t>& shape) {
  for (std::size_t d : shape) {
    if (d == 0) throw DimensionError("tensor dimensions must be positive");
  }
}

std::string shape_string(const std::vector<std::size_t>& shape) {
  std::string out = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(shape[i]);
  }
  return out + ")";
}

}  // namespace

ComplexTensor::ComplexTensor() : data_(1, Complex{0.0, 0.0}) {}

ComplexTensor::ComplexTensor(std::vector<std::size_t> shape) : shape_(std::move(shape)) {
  check_shape(shape_);
  data_.assign(product(shape_), Complex{0.0, 0.0});
}

ComplexTensor::ComplexTensor(std::vector<std::size_t> shape, std::vector<Complex> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  check_shape(shape_);
  if (data_.size() != product(shape_)) {
    throw DimensionError("tensor of shape " + shape_string(shape_) + " cannot hold " +
                         std::to_string(data_.size()) + " amplitudes");
  }
  if (!all_finite()) throw std::invalid_argument("tensor amplitudes must be finite");
}

ComplexTensor ComplexTensor::identity(std::size_t n) {
  ComplexTensor t({n, n});
  for (std::size_t i = 0; i < n; ++i) t.data_[i * n + i] = 1.0;
  return t;
}

ComplexTensor ComplexTensor::scalar(Complex value) {
  ComplexTensor t;
  t.data_[0] = value;
  return t;
}

std::size_t ComplexTensor::dim(std::size_t axis) const {
  if (axis >= shape_.size()) throw DimensionError("axis out of range");
  return shape_[axis];
}

std::size_t ComplexTensor::offset(std::initializer_list<std::size_t> index) const {
  if (index.size() != shape_.size()) throw DimensionError("index rank mismatch");
  std::size_t off = 0;
  std::size_t axis = 0;
  for (std::size_t i : index) {
    if (i >= shape_[axis]) throw DimensionError("index out of range");
    off = off * shape_[axis] + i;
    ++axis;
  }
  return off;
}

Complex& ComplexTensor::at(std::initializer_list<std::size_t> index) {
  return data_[offset(index)];
}

const Complex& ComplexTensor::at(std::initializer_list<std::size_t> index) const {
  return data_[offset(index)];
}

ComplexTensor ComplexTensor::reshaped(std::vector<std::size_t> shape) const {
  check_shape(shape);
  if (product(shape) != data_.size()) {
    throw DimensionError("cannot reshape " + shape_string(shape_) + " to " +
                         shape_string(shape));
  }
  return ComplexTensor(std::move(shape), data_);
}

ComplexTensor ComplexTensor::permuted(std::span<const std::size_t> axes) const {
  const std::size_t r = rank();
  if (axes.size() != r) throw DimensionError("permutation rank mismatch");
  std::vector<bool> seen(r, false);
  for (std::size_t a : axes) {
    if (a >= r || seen[a]) throw DimensionError("invalid axis permutation");
    seen[a] = true;
  }
  std::vector<std::size_t> out_shape(r);
  for (std::size_t i = 0; i < r; ++i) out_shape[i] = shape_[axes[i]];

  // Source strides, reordered to follow the output axes.
  std::vector<std::size_t> src_stride(r, 1);
  for (std::size_t i = r; i-- > 1;) src_stride[i - 1] = src_stride[i] * shape_[i];
  std::vector<std::size_t> stride(r);
  for (std::size_t i = 0; i < r; ++i) stride[i] = src_stride[axes[i]];

  ComplexTensor out(out_shape);
  std::vector<std::size_t> counter(r, 0);
  std::size_t src = 0;
  for (std::size_t dst = 0; dst < data_.size(); ++dst) {
    out.data_[dst] = data_[src];
    for (std::size_t i = r; i-- > 0;) {
      if (++counter[i] < out_shape[i]) {
        src += stride[i];
        break;
      }
      src -= stride[i] * (out_shape[i] - 1);
      counter[i] = 0;
    }
  }
  return out;
}

ComplexTensor ComplexTensor::conj() const {
  ComplexTensor out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

ComplexTensor& ComplexTensor::operator*=(Complex alpha) {
  for (auto& z : data_) z *= alpha;
  return *this;
}

ComplexTensor& ComplexTensor::operator+=(const ComplexTensor& other) {
  if (other.shape_ != shape_) throw DimensionError("shape mismatch in addition");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexTensor operator-(const ComplexTensor& a, const ComplexTensor& b) {
  if (a.shape() != b.shape()) throw DimensionError("shape mismatch in subtraction");
  ComplexTensor out = a;
  auto od = out.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < od.size(); ++i) od[i] -= bd[i];
  return out;
}

double ComplexTensor::norm() const {
  double acc = 0.0;
  for (const auto& z : data_) acc += std::norm(z);
  return std::sqrt(acc);
}

bool ComplexTensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexTensor contract(const ComplexTensor& a, const ComplexTensor& b,
                       std::span<const AxisPair> axes) {
  std::vector<bool> a_used(a.rank(), false);
  std::vector<bool> b_used(b.rank(), false);
  for (const auto& [ia, ib] : axes) {
    if (ia >= a.rank() || ib >= b.rank()) throw DimensionError("contraction axis out of range");
    if (a_used[ia] || b_used[ib]) throw DimensionError("contraction axis repeated");
    if (a.dim(ia) != b.dim(ib)) {
      throw DimensionError("contraction dimension mismatch: " + std::to_string(a.dim(ia)) +
                           " vs " + std::to_string(b.dim(ib)));
    }
    a_used[ia] = b_used[ib] = true;
  }

  // Bring a to (free..., contracted...) and b to (contracted..., free...)
  // so the contraction is a single matrix product.
  std::vector<std::size_t> a_perm;
  std::vector<std::size_t> b_perm;
  std::vector<std::size_t> out_shape;
  std::size_t rows = 1;
  std::size_t inner = 1;
  std::size_t cols = 1;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (!a_used[i]) {
      a_perm.push_back(i);
      out_shape.push_back(a.dim(i));
      rows *= a.dim(i);
    }
  }
  for (const auto& [ia, ib] : axes) {
    a_perm.push_back(ia);
    b_perm.push_back(ib);
    inner *= a.dim(ia);
  }
  for (std::size_t i = 0; i < b.rank(); ++i) {
    if (!b_used[i]) {
      b_perm.push_back(i);
      out_shape.push_back(b.dim(i));
      cols *= b.dim(i);
    }
  }

  const ComplexTensor ap = a.permuted(a_perm);
  const ComplexTensor bp = b.permuted(b_perm);
  const auto am = as_row_major(ap.data(), rows, inner);
  const auto bm = as_row_major(bp.data(), inner, cols);
  RowMajorMatrix prod = am * bm;
  std::vector<Complex> data(prod.data(), prod.data() + prod.size());
  if (out_shape.empty()) return ComplexTensor::scalar(data.front());
  return ComplexTensor(std::move(out_shape), std::move(data));
}

ComplexTensor matmul(const ComplexTensor& a, const ComplexTensor& b) {
  if (a.rank() != 2 || b.rank() != 2) throw DimensionError("matmul expects matrices");
  return contract(a, b, {{1, 0}});
}

ComplexTensor adjoint(const ComplexTensor& m) {
  if (m.rank() != 2) throw DimensionError("adjoint expects a matrix");
  const std::size_t axes[] = {1, 0};
  return m.permuted(axes).conj();
}

Complex trace(const ComplexTensor& m) {
  if (m.rank() != 2 || m.dim(0) != m.dim(1)) throw DimensionError("trace expects a square matrix");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < m.dim(0); ++i) acc += m.data()[i * m.dim(0) + i];
  return acc;
}

}  // namespace chimpe
