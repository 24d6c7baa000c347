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

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "blockrand/network.hpp"
#include "blockrand/rng.hpp"

namespace blockrand::testing {

// --- Finite-difference gradient oracle -------------------------------------
//
// Independent route for checking backprop: central differences of the mean
// batch loss as a function of each parameter, using forward passes only.

inline double batch_mean_loss(const Network& net, const Batch& batch,
                              LossKind kind) {
  ForwardTrace trace = forward(net, batch.x, Mode::kInfer);
  const DenseMatrix& pred = trace.output();
  double total = 0.0;
  for (std::size_t s = 0; s < batch.size(); ++s) {
    if (kind == LossKind::kCategoricalCrossEntropy) {
      total += loss(pred.row_span(s), batch.labels[s], kind);
    } else {
      total += loss(pred.row_span(s), batch.y.row_span(s), kind);
    }
  }
  return total / static_cast<double>(batch.size());
}

/// Central finite differences over every weight and bias, step `h`.
inline ParamSet finite_difference_grads(Network net, const Batch& batch,
                                        LossKind kind, double h = 1e-6) {
  ParamSet grads = net.zero_grads();
  auto probe = [&](double& param) {
    const double saved = param;
    param = saved + h;
    const double up = batch_mean_loss(net, batch, kind);
    param = saved - h;
    const double down = batch_mean_loss(net, batch, kind);
    param = saved;
    return (up - down) / (2.0 * h);
  };
  for (std::size_t l = 0; l < net.params().weights.size(); ++l) {
    DenseMatrix& w = net.params().weights[l];
    for (std::size_t i = 0; i < w.size(); ++i) {
      grads.weights[l].data()[i] = probe(w.data()[i]);
    }
    for (std::size_t o = 0; o < net.params().biases[l].size(); ++o) {
      grads.biases[l][o] = probe(net.params().biases[l][o]);
    }
  }
  return grads;
}

/// Max relative error between two gradient sets; components below
/// `abs_floor` in both are compared absolutely.
inline double max_gradient_error(const ParamSet& got, const ParamSet& want,
                                 double abs_floor = 1e-8) {
  double worst = 0.0;
  auto compare = [&](double a, double b) {
    const double mag = std::max(std::abs(a), std::abs(b));
    const double err = mag < abs_floor ? std::abs(a - b)
                                       : std::abs(a - b) / mag;
    worst = std::max(worst, err);
  };
  for (std::size_t l = 0; l < got.weights.size(); ++l) {
    for (std::size_t i = 0; i < got.weights[l].size(); ++i) {
      compare(got.weights[l].data()[i], want.weights[l].data()[i]);
    }
    for (std::size_t o = 0; o < got.biases[l].size(); ++o) {
      compare(got.biases[l][o], want.biases[l][o]);
    }
  }
  return worst;
}

// --- Random tiny networks ---------------------------------------------------

struct TinyProblem {
  Network net;
  Batch batch;
  LossKind kind;
};

/// True if any ReLU-family pre-activation is within 1e-4 of zero.
inline bool near_relu_kink(const Network& net, const DenseMatrix& x) {
  DenseMatrix acts = x;
  for (std::size_t l = 0; l < net.layers().size(); ++l) {
    const LayerSpec& spec = net.layers()[l];
    DenseMatrix z(acts.rows(), spec.output_dim);
    linear_forward(acts, net.params().weights[l], net.params().biases[l], z);
    const bool kinked = spec.activation.kind == Activation::kRelu ||
                        spec.activation.kind == Activation::kLeakyRelu;
    if (kinked) {
      for (std::size_t i = 0; i < z.size(); ++i) {
        if (std::abs(z.data()[i]) < 1e-4) return true;
      }
    }
    for (std::size_t s = 0; s < z.rows(); ++s) {
      apply_activation(spec.activation, {z.row(s), spec.output_dim});
    }
    acts = std::move(z);
  }
  return false;
}

/// Small random network/batch pair covering the full activation/loss matrix.
/// `variant` cycles through hidden-activation and loss combinations; layer
/// count and widths are drawn from `rng`. Pre-activations near a ReLU kink
/// are rejected (they poison finite differences), by redrawing the inputs.
inline TinyProblem make_tiny_problem(Rng& rng, std::size_t variant) {
  static const ActivationKind kHidden[] = {
      ActivationKind::identity(), ActivationKind::relu(),
      ActivationKind::leaky_relu(), ActivationKind::tanh(),
      ActivationKind::softmax()};
  const ActivationKind hidden = kHidden[variant % 5];
  const bool cross_entropy = (variant / 5) % 2 == 0;

  const std::size_t depth = 1 + rng.below(3);  // <= 3 layers
  std::vector<std::size_t> dims(depth + 1);
  for (std::size_t& d : dims) d = 2 + rng.below(9);  // <= 10 units

  std::vector<LayerSpec> layers;
  for (std::size_t l = 0; l < depth; ++l) {
    LayerSpec spec;
    spec.input_dim = dims[l];
    spec.output_dim = dims[l + 1];
    const bool final_layer = l + 1 == depth;
    if (final_layer) {
      spec.activation = cross_entropy ? ActivationKind::softmax()
                                      : kHidden[variant % 5];
    } else {
      spec.activation = hidden;
    }
    layers.push_back(spec);
  }

  TinyProblem prob;
  prob.kind = cross_entropy ? LossKind::kCategoricalCrossEntropy
                            : LossKind::kMeanSquaredError;
  prob.net = Network(std::move(layers));
  prob.net.init_glorot(rng);

  const std::size_t n = 1 + rng.below(4);
  const std::size_t out = prob.net.output_dim();
  for (int attempt = 0; attempt < 64; ++attempt) {
    Batch batch;
    batch.x = DenseMatrix(n, prob.net.input_dim());
    for (std::size_t i = 0; i < batch.x.size(); ++i) {
      batch.x.data()[i] = rng.normal();
    }
    if (cross_entropy) {
      batch.labels.clear();
      for (std::size_t s = 0; s < n; ++s) {
        batch.labels.push_back(rng.below(out));
      }
    } else {
      batch.y = DenseMatrix(n, out);
      for (std::size_t i = 0; i < batch.y.size(); ++i) {
        batch.y.data()[i] = rng.normal();
      }
    }
    if (!near_relu_kink(prob.net, batch.x)) {
      prob.batch = std::move(batch);
      return prob;
    }
  }
  throw std::logic_error("could not draw a kink-free tiny problem");
}

}  // namespace blockrand::testing
