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
#include <optional>
#include <span>
#include <vector>

#include "blockrand/matrix.hpp"
#include "blockrand/network.hpp"

namespace blockrand {

enum class TargetKind { kClass, kRegression };

struct GridCoords {
  int i = 0;
  int j = 0;
  int k = 0;
  bool operator==(const GridCoords&) const = default;
};

struct Sample {
  std::vector<double> features;
  std::size_t label = 0;              // valid when the dataset is kClass
  std::vector<double> target;         // valid when the dataset is kRegression
  std::optional<GridCoords> coords;

  bool operator==(const Sample&) const = default;
};

struct Dataset {
  std::vector<Sample> samples;
  std::size_t feature_dim = 0;
  TargetKind target_kind = TargetKind::kClass;
  std::size_t class_count = 0;   // classification only
  std::size_t target_dim = 0;    // regression only

  std::size_t size() const { return samples.size(); }

  /// Checks homogeneity: every sample has feature_dim features, finite
  /// values, class ids below class_count / targets of target_dim.
  void validate() const;

  bool operator==(const Dataset&) const = default;
};

/// Packs samples into a training batch (feature matrix plus targets).
Batch pack_batch(std::span<const Sample* const> samples,
                 std::size_t feature_dim, TargetKind kind,
                 std::size_t target_dim);
Batch pack_batch(const Dataset& ds);

/// Accuracy (argmax prediction, ties to the lowest index) for classification
/// datasets, mean squared error for regression. Dropout is disabled.
double evaluate(const Network& net, const Dataset& ds, LossKind kind);

/// Per-feature affine transform fitted on a training set and reused on
/// validation data (mean 0, variance 1 per feature).
struct FeatureScaler {
  std::vector<double> mean;
  std::vector<double> stddev;

  static FeatureScaler fit(const Dataset& ds);
  void apply(Dataset& ds) const;
};

}  // namespace blockrand
