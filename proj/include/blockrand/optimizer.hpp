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

#include <cstdint>

#include "blockrand/network.hpp"

namespace blockrand {

struct AdamConstants {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  bool operator==(const AdamConstants&) const = default;
};

/// Exponential moving averages of the first and second gradient moments,
/// plus the step counter. t advances by exactly 1 per step.
struct AdamState {
  ParamSet m;
  ParamSet v;
  std::uint64_t t = 0;
  AdamConstants constants;

  static AdamState init(const Network& net, AdamConstants c = {});

  bool operator==(const AdamState&) const = default;
};

struct AdamResult {
  ParamSet theta;
  AdamState state;
};

/// One Adam update:
///   m <- b1 m + (1-b1) g;  v <- b2 v + (1-b2) g^2;  t <- t+1
///   theta' = theta - eta * (m/(1-b1^t)) / (sqrt(v/(1-b2^t)) + eps)
AdamResult adam_step(const ParamSet& theta, const ParamSet& grad,
                     const AdamState& state, double eta);

/// Same recurrences, updating theta and state in place (the training loop
/// uses this to avoid copying the full parameter set every batch).
void adam_step_inplace(ParamSet& theta, const ParamSet& grad, AdamState& state,
                       double eta);

}  // namespace blockrand
