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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blockrand/optimizer.hpp"
#include "blockrand/rng.hpp"

using namespace blockrand;

namespace {

Network scalar_net(double theta) {
  LayerSpec spec;
  spec.input_dim = 1;
  spec.output_dim = 1;
  spec.activation = ActivationKind::identity();
  Network net({spec});
  net.params().weights[0](0, 0) = theta;
  return net;
}

ParamSet scalar_grad(const Network& net, double g) {
  ParamSet grad = net.zero_grads();
  grad.weights[0](0, 0) = g;
  return grad;
}

}  // namespace

TEST_CASE("adam first step with unit gradient") {
  Network net = scalar_net(1.0);
  AdamState state = AdamState::init(net);
  AdamResult result = adam_step(net.params(), scalar_grad(net, 1.0), state, 1e-3);

  // Hand evaluation of the recurrences: m_hat = v_hat = 1 after one step,
  // so the update is eta / (1 + eps).
  const double expected_delta = 1e-3 / (1.0 + 1e-8);
  CHECK(std::abs((1.0 - result.theta.weights[0](0, 0)) - expected_delta) < 1e-12);

  CHECK(result.state.t == 1);
  CHECK(result.state.m.weights[0](0, 0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(result.state.v.weights[0](0, 0) == doctest::Approx(0.001).epsilon(1e-12));
  const double m_hat = result.state.m.weights[0](0, 0) / (1.0 - 0.9);
  const double v_hat = result.state.v.weights[0](0, 0) / (1.0 - 0.999);
  CHECK(m_hat == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v_hat == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("adam with zero gradient advances t but not theta") {
  Network net = scalar_net(2.5);
  AdamState state = AdamState::init(net);
  AdamResult result = adam_step(net.params(), scalar_grad(net, 0.0), state, 1e-3);
  CHECK(result.theta.weights[0](0, 0) == 2.5);
  CHECK(result.state.t == 1);
}

TEST_CASE("adam matches an independently coded reference recurrence") {
  // Scalar reference implementation, written directly from the update rule.
  const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8, eta = 1e-3;
  double ref_theta = 0.7, ref_m = 0.0, ref_v = 0.0;
  const double grads[] = {1.0, -0.5, 0.25, 2.0, -3.0};
  Network net = scalar_net(0.7);
  AdamState state = AdamState::init(net);
  ParamSet theta = net.params();

  int t = 0;
  for (double g : grads) {
    ++t;
    ref_m = beta1 * ref_m + (1 - beta1) * g;
    ref_v = beta2 * ref_v + (1 - beta2) * g * g;
    const double m_hat = ref_m / (1 - std::pow(beta1, t));
    const double v_hat = ref_v / (1 - std::pow(beta2, t));
    ref_theta -= eta * m_hat / (std::sqrt(v_hat) + eps);

    AdamResult step = adam_step(theta, scalar_grad(net, g), state, eta);
    theta = std::move(step.theta);
    state = std::move(step.state);
    CHECK(std::abs(theta.weights[0](0, 0) - ref_theta) < 1e-12);
  }
  CHECK(state.t == 5);
}

TEST_CASE("in-place and pure adam paths agree bitwise") {
  Rng rng(5);
  std::vector<LayerSpec> layers(2);
  layers[0] = {4, 5, ActivationKind::tanh(), 0.0};
  layers[1] = {5, 2, ActivationKind::identity(), 0.0};
  Network net{std::move(layers)};
  net.init_glorot(rng);

  ParamSet grad = net.zero_grads();
  for (auto& w : grad.weights) {
    for (std::size_t i = 0; i < w.size(); ++i) w.data()[i] = rng.normal();
  }
  for (auto& b : grad.biases) {
    for (double& v : b) v = rng.normal();
  }

  AdamState pure_state = AdamState::init(net);
  ParamSet pure_theta = net.params();
  AdamState inplace_state = AdamState::init(net);
  ParamSet inplace_theta = net.params();

  for (int step = 0; step < 4; ++step) {
    AdamResult r = adam_step(pure_theta, grad, pure_state, 1e-2);
    pure_theta = std::move(r.theta);
    pure_state = std::move(r.state);
    adam_step_inplace(inplace_theta, grad, inplace_state, 1e-2);
  }
  CHECK(pure_theta == inplace_theta);
  CHECK(pure_state == inplace_state);
}

TEST_CASE("adam rejects shape mismatches") {
  Network net = scalar_net(1.0);
  AdamState state = AdamState::init(net);
  ParamSet bad = net.zero_grads();
  bad.biases[0].push_back(0.0);
  CHECK_THROWS_AS(adam_step(net.params(), bad, state, 1e-3),
                  std::invalid_argument);
}
