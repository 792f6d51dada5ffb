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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace chimpe {

using Complex = std::complex<double>;

/// Dense multi-index array of complex amplitudes.
///
/// Storage is row-major: the leftmost index varies slowest. A rank-0 tensor
/// (empty shape) holds a single scalar.
class ComplexTensor {
 public:
  ComplexTensor();
  /// Zero-initialized tensor of the given shape.
  explicit ComplexTensor(std::vector<std::size_t> shape);
  ComplexTensor(std::vector<std::size_t> shape, std::vector<Complex> data);

  static ComplexTensor identity(std::size_t n);
  static ComplexTensor scalar(Complex value);

  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t dim(std::size_t axis) const;
  std::size_t size() const noexcept { return data_.size(); }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }
  const std::vector<Complex>& values() const noexcept { return data_; }

  Complex& at(std::initializer_list<std::size_t> index);
  const Complex& at(std::initializer_list<std::size_t> index) const;
  std::size_t offset(std::initializer_list<std::size_t> index) const;

  ComplexTensor reshaped(std::vector<std::size_t> shape) const;
  /// Axis `i` of the result is axis `axes[i]` of this tensor.
  ComplexTensor permuted(std::span<const std::size_t> axes) const;
  ComplexTensor conj() const;

  ComplexTensor& operator*=(Complex alpha);
  ComplexTensor& operator+=(const ComplexTensor& other);
  friend ComplexTensor operator*(Complex alpha, ComplexTensor t) { return t *= alpha; }
  friend ComplexTensor operator-(const ComplexTensor& a, const ComplexTensor& b);

  /// Frobenius norm.
  double norm() const;
  bool all_finite() const;

 private:
  std::vector<std::size_t> shape_;
  std::vector<Complex> data_;
};

using AxisPair = std::pair<std::size_t, std::size_t>;

/// Sum over paired axes (axis of `a`, axis of `b`). The result carries the
/// free axes of `a` followed by the free axes of `b`, each in original order.
ComplexTensor contract(const ComplexTensor& a, const ComplexTensor& b,
                       std::span<const AxisPair> axes);

inline ComplexTensor contract(const ComplexTensor& a, const ComplexTensor& b,
                              std::initializer_list<AxisPair> axes) {
  return contract(a, b, std::span<const AxisPair>(axes.begin(), axes.size()));
}

/// Matrix product of two rank-2 tensors.
ComplexTensor matmul(const ComplexTensor& a, const ComplexTensor& b);
/// Conjugate transpose of a rank-2 tensor.
ComplexTensor adjoint(const ComplexTensor& m);
Complex trace(const ComplexTensor& m);

}  // namespace chimpe
