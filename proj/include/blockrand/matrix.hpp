// Copyright 2026 The blockrand Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace blockrand {

/// Row-major dense matrix of doubles. All training math runs in double
/// precision; gradient-check tolerances depend on it.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(std::size_t r, std::size_t c) {
    return values_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return values_[r * cols_ + c];
  }

  double* row(std::size_t r) { return values_.data() + r * cols_; }
  const double* row(std::size_t r) const { return values_.data() + r * cols_; }
  std::span<const double> row_span(std::size_t r) const {
    return {row(r), cols_};
  }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  const std::vector<double>& values() const { return values_; }

  void fill(double v);
  bool all_finite() const;

  bool operator==(const DenseMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

// Batched affine-layer kernels. Sample-major layouts: a batch of n samples
// with feature dimension d is an n x d matrix; a layer's weights are
// out_dim x in_dim.

/// z = x . w^T + b, row s of `z` holding the pre-activations of sample s.
void linear_forward(const DenseMatrix& x, const DenseMatrix& w,
                    std::span<const double> b, DenseMatrix& z);

/// dw += dz^T . x  (accumulates; caller zeroes dw and applies batch scaling).
void accumulate_weight_grad(const DenseMatrix& dz, const DenseMatrix& x,
                            DenseMatrix& dw);

/// dx = dz . w
void input_grad(const DenseMatrix& dz, const DenseMatrix& w, DenseMatrix& dx);

}  // namespace blockrand
