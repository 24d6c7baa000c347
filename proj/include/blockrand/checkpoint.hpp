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
#include <string>

#include "blockrand/network.hpp"

namespace blockrand {

/// Network checkpoints are a self-describing JSON document (format
/// "blockrand-checkpoint", version 1) holding the layer specs, weights in
/// row-major order, biases, and the seed of the run that produced them.
/// Doubles survive the round trip bit-exactly.
void save_checkpoint(const Network& net, std::uint64_t seed,
                     const std::string& path);

struct Checkpoint {
  Network net;
  std::uint64_t seed = 0;
};

Checkpoint load_checkpoint(const std::string& path);

}  // namespace blockrand
