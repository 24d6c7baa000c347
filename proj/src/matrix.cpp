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

#include "blockrand/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace blockrand {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("DenseMatrix: dimensions must be positive");
  }
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("DenseMatrix: dimensions must be positive");
  }
  if (values_.size() != rows * cols) {
    throw std::invalid_argument("DenseMatrix: value count does not match shape");
  }
}

void DenseMatrix::fill(double v) { std::fill(values_.begin(), values_.end(), v); }

bool DenseMatrix::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

void linear_forward(const DenseMatrix& x, const DenseMatrix& w,
                    std::span<const double> b, DenseMatrix& z) {
  const std::size_t n = x.rows();
  const std::size_t in = x.cols();
  const std::size_t out = w.rows();
  assert(w.cols() == in && b.size() == out);
  assert(z.rows() == n && z.cols() == out);

  // Four samples per weight-row pass so each w value feeds four FMAs.
  std::size_t s = 0;
  for (; s + 4 <= n; s += 4) {
    const double* x0 = x.row(s);
    const double* x1 = x.row(s + 1);
    const double* x2 = x.row(s + 2);
    const double* x3 = x.row(s + 3);
    for (std::size_t o = 0; o < out; ++o) {
      const double* wr = w.row(o);
      double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
#pragma omp simd reduction(+ : a0, a1, a2, a3)
      for (std::size_t i = 0; i < in; ++i) {
        const double wv = wr[i];
        a0 += x0[i] * wv;
        a1 += x1[i] * wv;
        a2 += x2[i] * wv;
        a3 += x3[i] * wv;
      }
      z(s, o) = a0 + b[o];
      z(s + 1, o) = a1 + b[o];
      z(s + 2, o) = a2 + b[o];
      z(s + 3, o) = a3 + b[o];
    }
  }
  for (; s < n; ++s) {
    const double* xr = x.row(s);
    for (std::size_t o = 0; o < out; ++o) {
      const double* wr = w.row(o);
      double acc = 0.0;
#pragma omp simd reduction(+ : acc)
      for (std::size_t i = 0; i < in; ++i) acc += xr[i] * wr[i];
      z(s, o) = acc + b[o];
    }
  }
}

void accumulate_weight_grad(const DenseMatrix& dz, const DenseMatrix& x,
                            DenseMatrix& dw) {
  const std::size_t n = dz.rows();
  const std::size_t out = dz.cols();
  const std::size_t in = x.cols();
  assert(x.rows() == n);
  assert(dw.rows() == out && dw.cols() == in);

  for (std::size_t o = 0; o < out; ++o) {
    double* dwr = dw.row(o);
    for (std::size_t s = 0; s < n; ++s) {
      const double c = dz(s, o);
      if (c == 0.0) continue;  // common with (leaky-free) ReLU masks
      const double* xr = x.row(s);
#pragma omp simd
      for (std::size_t i = 0; i < in; ++i) dwr[i] += c * xr[i];
    }
  }
}

void input_grad(const DenseMatrix& dz, const DenseMatrix& w, DenseMatrix& dx) {
  const std::size_t n = dz.rows();
  const std::size_t out = dz.cols();
  const std::size_t in = w.cols();
  assert(w.rows() == out);
  assert(dx.rows() == n && dx.cols() == in);

  dx.fill(0.0);
  for (std::size_t s = 0; s < n; ++s) {
    double* dxr = dx.row(s);
    const double* dzr = dz.row(s);
    for (std::size_t o = 0; o < out; ++o) {
      const double c = dzr[o];
      if (c == 0.0) continue;
      const double* wr = w.row(o);
#pragma omp simd
      for (std::size_t i = 0; i < in; ++i) dxr[i] += c * wr[i];
    }
  }
}

}  // namespace blockrand
