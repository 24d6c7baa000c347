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

#include "blockrand/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "blockrand/errors.hpp"

namespace blockrand {

namespace {

constexpr double kCrossEntropyClamp = 1e-12;

void check_finite(const DenseMatrix& m, std::size_t layer_index,
                  const ActivationKind& act) {
  if (!m.all_finite()) {
    throw NumericError("layer " + std::to_string(layer_index) + " (" +
                       activation_name(act) + ", " +
                       std::to_string(m.cols()) +
                       " units): non-finite activation");
  }
}

}  // namespace

void LayerSpec::validate() const {
  if (input_dim == 0 || output_dim == 0) {
    throw std::invalid_argument("layer dims must be positive");
  }
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw std::invalid_argument("dropout rate must be in [0, 1)");
  }
  activation.validate();
}

bool ParamSet::same_shape(const ParamSet& other) const {
  if (weights.size() != other.weights.size() ||
      biases.size() != other.biases.size()) {
    return false;
  }
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (weights[l].rows() != other.weights[l].rows() ||
        weights[l].cols() != other.weights[l].cols() ||
        biases[l].size() != other.biases[l].size()) {
      return false;
    }
  }
  return true;
}

Network::Network(std::vector<LayerSpec> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) {
    throw std::invalid_argument("network needs at least one layer");
  }
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    layers_[l].validate();
    if (l > 0 && layers_[l].input_dim != layers_[l - 1].output_dim) {
      throw std::invalid_argument("layer " + std::to_string(l) +
                                  " input dim does not chain");
    }
  }
  for (const LayerSpec& spec : layers_) {
    params_.weights.emplace_back(spec.output_dim, spec.input_dim);
    params_.biases.emplace_back(spec.output_dim, 0.0);
  }
}

bool Network::has_dropout() const {
  return std::any_of(layers_.begin(), layers_.end(),
                     [](const LayerSpec& l) { return l.dropout_rate > 0.0; });
}

void Network::init_glorot(Rng& rng) {
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const double bound =
        std::sqrt(6.0 / static_cast<double>(layers_[l].input_dim +
                                            layers_[l].output_dim));
    DenseMatrix& w = params_.weights[l];
    for (std::size_t i = 0; i < w.size(); ++i) {
      w.data()[i] = rng.uniform(-bound, bound);
    }
    std::fill(params_.biases[l].begin(), params_.biases[l].end(), 0.0);
  }
}

ParamSet Network::zero_grads() const {
  ParamSet g;
  for (const LayerSpec& spec : layers_) {
    g.weights.emplace_back(spec.output_dim, spec.input_dim);
    g.biases.emplace_back(spec.output_dim, 0.0);
  }
  return g;
}

ForwardTrace forward(const Network& net, const DenseMatrix& x, Mode mode,
                     Rng* rng) {
  if (x.cols() != net.input_dim()) {
    throw std::invalid_argument("input has " + std::to_string(x.cols()) +
                                " features, network expects " +
                                std::to_string(net.input_dim()));
  }
  const bool dropping = mode == Mode::kTrain && net.has_dropout();
  if (dropping && rng == nullptr) {
    throw std::invalid_argument("train-mode forward with dropout needs a generator");
  }

  ForwardTrace trace;
  trace.activations.reserve(net.layers().size() + 1);
  trace.masks.resize(net.layers().size());
  trace.pre_dropout.resize(net.layers().size());
  trace.activations.push_back(x);

  const std::size_t n = x.rows();
  for (std::size_t l = 0; l < net.layers().size(); ++l) {
    const LayerSpec& spec = net.layers()[l];
    DenseMatrix z(n, spec.output_dim);
    linear_forward(trace.activations.back(), net.params().weights[l],
                   net.params().biases[l], z);
    for (std::size_t s = 0; s < n; ++s) {
      apply_activation(spec.activation, {z.row(s), spec.output_dim});
    }
    check_finite(z, l, spec.activation);
    if (dropping && spec.dropout_rate > 0.0) {
      const double scale = 1.0 / (1.0 - spec.dropout_rate);
      DenseMatrix mask(n, spec.output_dim);
      for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t o = 0; o < spec.output_dim; ++o) {
          mask(s, o) = rng->real01() < spec.dropout_rate ? 0.0 : scale;
        }
      }
      DenseMatrix dropped(n, spec.output_dim);
      for (std::size_t i = 0; i < z.size(); ++i) {
        dropped.data()[i] = z.data()[i] * mask.data()[i];
      }
      trace.masks[l] = std::move(mask);
      trace.activations.push_back(std::move(dropped));
      trace.pre_dropout_for(l) = std::move(z);
    } else {
      trace.activations.push_back(std::move(z));
    }
  }
  return trace;
}

std::vector<std::vector<double>> forward(const Network& net,
                                         std::span<const double> x, Mode mode,
                                         Rng* rng) {
  DenseMatrix row(1, x.size(), std::vector<double>(x.begin(), x.end()));
  ForwardTrace trace = forward(net, row, mode, rng);
  std::vector<std::vector<double>> acts;
  acts.reserve(trace.activations.size());
  for (const DenseMatrix& m : trace.activations) {
    acts.emplace_back(m.values());
  }
  return acts;
}

double loss(std::span<const double> pred, std::span<const double> target,
            LossKind kind) {
  if (kind != LossKind::kMeanSquaredError) {
    throw std::invalid_argument("vector targets are for mean squared error");
  }
  if (pred.size() != target.size() || pred.empty()) {
    throw std::invalid_argument("prediction/target size mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    sum += d * d;
  }
  return sum / static_cast<double>(pred.size());
}

double loss(std::span<const double> pred, std::size_t label, LossKind kind) {
  if (kind != LossKind::kCategoricalCrossEntropy) {
    throw std::invalid_argument("class targets are for cross-entropy");
  }
  if (label >= pred.size()) {
    throw std::invalid_argument("label out of range");
  }
  double sum = 0.0;
  for (double p : pred) sum += p;
  if (std::abs(sum - 1.0) > 1e-6) {
    throw std::invalid_argument("prediction is not a probability vector");
  }
  const double p = std::clamp(pred[label], kCrossEntropyClamp, 1.0);
  return -std::log(p);
}

BackpropResult backprop(const Network& net, const Batch& batch, LossKind kind,
                        Rng* dropout_rng) {
  const std::size_t n = batch.size();
  if (n == 0) throw std::invalid_argument("empty batch");
  const std::size_t out = net.output_dim();
  const bool cross_entropy = kind == LossKind::kCategoricalCrossEntropy;
  const LayerSpec& last = net.layers().back();
  if (cross_entropy) {
    if (last.activation.kind != Activation::kSoftmax) {
      throw std::invalid_argument(
          "cross-entropy requires a softmax output layer");
    }
    if (last.dropout_rate > 0.0) {
      throw std::invalid_argument(
          "dropout on the softmax output layer is not supported");
    }
    if (batch.labels.size() != n) {
      throw std::invalid_argument("label count does not match batch");
    }
    for (std::size_t s : batch.labels) {
      if (s >= out) throw std::invalid_argument("label out of range");
    }
  } else {
    if (batch.y.rows() != n || batch.y.cols() != out) {
      throw std::invalid_argument("target shape does not match batch/network");
    }
  }

  ForwardTrace trace = forward(net, batch.x, Mode::kTrain, dropout_rng);
  const DenseMatrix& pred = trace.output();

  BackpropResult result;
  result.grads = net.zero_grads();

  // Gradient flowing into the top of the layer stack. For cross-entropy the
  // softmax Jacobian is folded in analytically (dz = (p - onehot)/n); for
  // mean squared error this is the gradient w.r.t. the outputs.
  DenseMatrix grad(n, out);
  const double inv_n = 1.0 / static_cast<double>(n);
  bool grad_is_preactivation = false;
  if (cross_entropy) {
    double total = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t label = batch.labels[s];
      for (std::size_t o = 0; o < out; ++o) {
        grad(s, o) = (pred(s, o) - (o == label ? 1.0 : 0.0)) * inv_n;
      }
      total += -std::log(std::clamp(pred(s, label), kCrossEntropyClamp, 1.0));
    }
    result.mean_loss = total * inv_n;
    grad_is_preactivation = true;
  } else {
    const double scale = 2.0 * inv_n / static_cast<double>(out);
    double total = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      double sample_se = 0.0;
      for (std::size_t o = 0; o < out; ++o) {
        const double d = pred(s, o) - batch.y(s, o);
        grad(s, o) = d * scale;
        sample_se += d * d;
      }
      total += sample_se / static_cast<double>(out);
    }
    result.mean_loss = total * inv_n;
  }

  for (std::size_t li = net.layers().size(); li-- > 0;) {
    const LayerSpec& spec = net.layers()[li];
    DenseMatrix dz;
    if (grad_is_preactivation) {
      dz = std::move(grad);
      grad_is_preactivation = false;
    } else {
      // Through dropout first (it follows the activation), then through the
      // activation itself.
      const DenseMatrix& mask = trace.masks[li];
      if (mask.size() > 0) {
        for (std::size_t i = 0; i < grad.size(); ++i) {
          grad.data()[i] *= mask.data()[i];
        }
      }
      const DenseMatrix& act =
          mask.size() > 0 ? trace.pre_dropout_for(li) : trace.activations[li + 1];
      dz = DenseMatrix(n, spec.output_dim);
      if (spec.activation.kind == Activation::kSoftmax) {
        for (std::size_t s = 0; s < n; ++s) {
          double dot = 0.0;
          for (std::size_t o = 0; o < spec.output_dim; ++o) {
            dot += grad(s, o) * act(s, o);
          }
          for (std::size_t o = 0; o < spec.output_dim; ++o) {
            dz(s, o) = act(s, o) * (grad(s, o) - dot);
          }
        }
      } else {
        for (std::size_t s = 0; s < n; ++s) {
          for (std::size_t o = 0; o < spec.output_dim; ++o) {
            dz(s, o) =
                grad(s, o) * activation_derivative(spec.activation, act(s, o));
          }
        }
      }
    }

    accumulate_weight_grad(dz, trace.activations[li], result.grads.weights[li]);
    std::vector<double>& db = result.grads.biases[li];
    for (std::size_t s = 0; s < n; ++s) {
      const double* dzr = dz.row(s);
      for (std::size_t o = 0; o < spec.output_dim; ++o) db[o] += dzr[o];
    }
    if (li > 0) {
      grad = DenseMatrix(n, spec.input_dim);
      input_grad(dz, net.params().weights[li], grad);
    }
  }
  return result;
}

ParamSet sgd_step(const ParamSet& theta, const ParamSet& grad, double eta) {
  ParamSet next = theta;
  sgd_step_inplace(next, grad, eta);
  return next;
}

void sgd_step_inplace(ParamSet& theta, const ParamSet& grad, double eta) {
  if (!theta.same_shape(grad)) {
    throw std::invalid_argument("gradient shape does not match parameters");
  }
  for (std::size_t l = 0; l < theta.weights.size(); ++l) {
    double* w = theta.weights[l].data();
    const double* g = grad.weights[l].data();
    const std::size_t nw = theta.weights[l].size();
#pragma omp simd
    for (std::size_t i = 0; i < nw; ++i) w[i] -= eta * g[i];
    for (std::size_t o = 0; o < theta.biases[l].size(); ++o) {
      theta.biases[l][o] -= eta * grad.biases[l][o];
    }
  }
}

}  // namespace blockrand
