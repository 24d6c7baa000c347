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

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

namespace blockrand {

enum class Activation { kIdentity, kRelu, kLeakyRelu, kTanh, kSoftmax };

/// Activation selector. `leaky_slope` is only meaningful for kLeakyRelu and
/// must lie in (0, 1); 1e-2 is the conventional small slope.
struct ActivationKind {
  Activation kind = Activation::kIdentity;
  double leaky_slope = 1e-2;

  static ActivationKind identity() { return {Activation::kIdentity}; }
  static ActivationKind relu() { return {Activation::kRelu}; }
  static ActivationKind leaky_relu(double slope = 1e-2) {
    return {Activation::kLeakyRelu, slope};
  }
  static ActivationKind tanh() { return {Activation::kTanh}; }
  static ActivationKind softmax() { return {Activation::kSoftmax}; }

  void validate() const {
    if (kind == Activation::kLeakyRelu &&
        !(leaky_slope > 0.0 && leaky_slope < 1.0)) {
      throw std::invalid_argument("leaky relu slope must be in (0, 1)");
    }
  }

  bool operator==(const ActivationKind&) const = default;
};

/// Applies the activation to one sample's pre-activations, in place.
/// Softmax is stabilized by shifting with the row maximum, so it is
/// invariant under constant shifts of the input and its outputs sum to 1.
inline void apply_activation(const ActivationKind& act, std::span<double> z) {
  switch (act.kind) {
    case Activation::kIdentity:
      return;
    case Activation::kRelu:
      for (double& v : z) v = v > 0.0 ? v : 0.0;
      return;
    case Activation::kLeakyRelu:
      for (double& v : z) v = v >= 0.0 ? v : act.leaky_slope * v;
      return;
    case Activation::kTanh:
      for (double& v : z) v = std::tanh(v);
      return;
    case Activation::kSoftmax: {
      const double m = *std::max_element(z.begin(), z.end());
      double sum = 0.0;
      for (double& v : z) {
        v = std::exp(v - m);
        sum += v;
      }
      for (double& v : z) v /= sum;
      return;
    }
  }
}

/// Derivative of the activation expressed through the activation value
/// itself (valid for every elementwise kind here). Softmax has a full
/// Jacobian and is handled by the backprop code instead.
inline double activation_derivative(const ActivationKind& act, double a) {
  switch (act.kind) {
    case Activation::kIdentity:
      return 1.0;
    case Activation::kRelu:
      return a > 0.0 ? 1.0 : 0.0;
    case Activation::kLeakyRelu:
      return a >= 0.0 ? 1.0 : act.leaky_slope;
    case Activation::kTanh:
      return 1.0 - a * a;
    case Activation::kSoftmax:
      throw std::logic_error("softmax derivative needs the full Jacobian");
  }
  return 0.0;
}

inline std::string activation_name(const ActivationKind& act) {
  switch (act.kind) {
    case Activation::kIdentity:
      return "identity";
    case Activation::kRelu:
      return "relu";
    case Activation::kLeakyRelu:
      return "leaky-relu";
    case Activation::kTanh:
      return "tanh";
    case Activation::kSoftmax:
      return "softmax";
  }
  return "?";
}

inline ActivationKind activation_from_name(const std::string& name,
                                           double leaky_slope = 1e-2) {
  if (name == "identity") return ActivationKind::identity();
  if (name == "relu") return ActivationKind::relu();
  if (name == "leaky-relu") return ActivationKind::leaky_relu(leaky_slope);
  if (name == "tanh") return ActivationKind::tanh();
  if (name == "softmax") return ActivationKind::softmax();
  throw std::invalid_argument("unknown activation: " + name);
}

}  // namespace blockrand
