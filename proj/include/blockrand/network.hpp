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

#include "blockrand/activation.hpp"
#include "blockrand/matrix.hpp"
#include "blockrand/rng.hpp"

namespace blockrand {

/// One dense layer: y = dropout(act(W x + b)). Dropout applies after the
/// activation and only in Train mode (inverted scaling, 1/(1-rate), so
/// Infer mode needs no correction).
struct LayerSpec {
  std::size_t input_dim = 0;
  std::size_t output_dim = 0;
  ActivationKind activation;
  double dropout_rate = 0.0;

  void validate() const;
  bool operator==(const LayerSpec&) const = default;
};

enum class LossKind { kMeanSquaredError, kCategoricalCrossEntropy };

enum class Mode { kTrain, kInfer };

/// Weight matrices (output_dim x input_dim) and bias vectors of a network,
/// or a gradient with the same shapes. Optimizer steps operate on this.
struct ParamSet {
  std::vector<DenseMatrix> weights;
  std::vector<std::vector<double>> biases;

  bool same_shape(const ParamSet& other) const;
  bool operator==(const ParamSet&) const = default;
};

/// Dense feed-forward network. Consecutive layer dims must chain.
class Network {
 public:
  Network() = default;
  explicit Network(std::vector<LayerSpec> layers);

  const std::vector<LayerSpec>& layers() const { return layers_; }
  std::size_t input_dim() const { return layers_.front().input_dim; }
  std::size_t output_dim() const { return layers_.back().output_dim; }
  bool has_dropout() const;

  ParamSet& params() { return params_; }
  const ParamSet& params() const { return params_; }

  /// Glorot-style uniform init, bounds +-sqrt(6/(fan_in+fan_out)), row-major
  /// draw order; biases zero. Deterministic given the generator state.
  void init_glorot(Rng& rng);

  /// Zero-valued parameter set with this network's shapes.
  ParamSet zero_grads() const;

  bool operator==(const Network&) const = default;

 private:
  std::vector<LayerSpec> layers_;
  ParamSet params_;
};

/// All intermediate state of a batched forward pass, kept for backprop.
/// activations[0] is the input batch; activations[l+1] the post-activation
/// (and post-dropout) output of layer l. masks[l] is empty unless layer l
/// dropped units in Train mode, in which case it holds the applied scale
/// (0 or 1/(1-rate)) per unit and pre_dropout[l] the activations before
/// masking (the activation derivative needs them).
struct ForwardTrace {
  std::vector<DenseMatrix> activations;
  std::vector<DenseMatrix> masks;
  std::vector<DenseMatrix> pre_dropout;

  DenseMatrix& pre_dropout_for(std::size_t layer) {
    return pre_dropout[layer];
  }
  const DenseMatrix& pre_dropout_for(std::size_t layer) const {
    return pre_dropout[layer];
  }
  const DenseMatrix& output() const { return activations.back(); }
};

/// Batched forward pass. `rng` drives the dropout masks and is required
/// exactly when mode is Train and some layer has dropout_rate > 0.
/// Throws NumericError naming the layer if a non-finite value appears.
ForwardTrace forward(const Network& net, const DenseMatrix& x, Mode mode,
                     Rng* rng = nullptr);

/// Single-sample forward pass; returns the per-layer activation vectors.
std::vector<std::vector<double>> forward(const Network& net,
                                         std::span<const double> x, Mode mode,
                                         Rng* rng = nullptr);

/// Mean squared error averaged over output components. Batch losses average
/// this over samples, so the metric is comparable across output dimensions.
double loss(std::span<const double> pred, std::span<const double> target,
            LossKind kind);

/// Categorical cross-entropy -ln(pred[label]); `pred` must be a probability
/// vector (sum within 1e-6 of 1) and is clamped to [1e-12, 1] before the log.
double loss(std::span<const double> pred, std::size_t label, LossKind kind);

/// A training batch: features plus either regression targets or labels,
/// depending on the loss in use.
struct Batch {
  DenseMatrix x;
  DenseMatrix y;                     // regression targets, n x target_dim
  std::vector<std::size_t> labels;   // classification targets

  std::size_t size() const { return x.rows(); }
};

struct BackpropResult {
  ParamSet grads;
  double mean_loss = 0.0;
};

/// Gradient of the mean batch loss with respect to every weight and bias.
/// Deterministic given the network, batch, and the dropout generator state.
BackpropResult backprop(const Network& net, const Batch& batch, LossKind kind,
                        Rng* dropout_rng = nullptr);

/// theta' = theta - eta * grad, elementwise.
ParamSet sgd_step(const ParamSet& theta, const ParamSet& grad, double eta);
void sgd_step_inplace(ParamSet& theta, const ParamSet& grad, double eta);

}  // namespace blockrand
