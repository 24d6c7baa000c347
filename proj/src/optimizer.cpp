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

#include "blockrand/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace blockrand {

AdamState AdamState::init(const Network& net, AdamConstants c) {
  AdamState state;
  state.m = net.zero_grads();
  state.v = net.zero_grads();
  state.t = 0;
  state.constants = c;
  return state;
}

namespace {

void adam_update(double* theta, const double* grad, double* m, double* v,
                 std::size_t count, double eta, const AdamConstants& c,
                 double bias1, double bias2) {
  for (std::size_t i = 0; i < count; ++i) {
    const double g = grad[i];
    m[i] = c.beta1 * m[i] + (1.0 - c.beta1) * g;
    v[i] = c.beta2 * v[i] + (1.0 - c.beta2) * g * g;
    const double m_hat = m[i] / bias1;
    const double v_hat = v[i] / bias2;
    theta[i] -= eta * m_hat / (std::sqrt(v_hat) + c.epsilon);
  }
}

}  // namespace

void adam_step_inplace(ParamSet& theta, const ParamSet& grad, AdamState& state,
                       double eta) {
  if (!theta.same_shape(grad) || !theta.same_shape(state.m) ||
      !theta.same_shape(state.v)) {
    throw std::invalid_argument("adam state/gradient shape mismatch");
  }
  const AdamConstants& c = state.constants;
  state.t += 1;
  const double bias1 =
      1.0 - std::pow(c.beta1, static_cast<double>(state.t));
  const double bias2 =
      1.0 - std::pow(c.beta2, static_cast<double>(state.t));
  for (std::size_t l = 0; l < theta.weights.size(); ++l) {
    adam_update(theta.weights[l].data(), grad.weights[l].data(),
                state.m.weights[l].data(), state.v.weights[l].data(),
                theta.weights[l].size(), eta, c, bias1, bias2);
    adam_update(theta.biases[l].data(), grad.biases[l].data(),
                state.m.biases[l].data(), state.v.biases[l].data(),
                theta.biases[l].size(), eta, c, bias1, bias2);
  }
}

AdamResult adam_step(const ParamSet& theta, const ParamSet& grad,
                     const AdamState& state, double eta) {
  AdamResult result{theta, state};
  adam_step_inplace(result.theta, grad, result.state, eta);
  return result;
}

}  // namespace blockrand
