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

#include "blockrand/dataset.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace blockrand {

void Dataset::validate() const {
  for (std::size_t idx = 0; idx < samples.size(); ++idx) {
    const Sample& s = samples[idx];
    const std::string where = "sample " + std::to_string(idx);
    if (s.features.size() != feature_dim) {
      throw std::invalid_argument(where + ": feature dim mismatch");
    }
    for (double v : s.features) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument(where + ": non-finite feature");
      }
    }
    if (target_kind == TargetKind::kClass) {
      if (s.label >= class_count) {
        throw std::invalid_argument(where + ": class id out of range");
      }
    } else if (s.target.size() != target_dim) {
      throw std::invalid_argument(where + ": target dim mismatch");
    }
  }
}

Batch pack_batch(std::span<const Sample* const> samples,
                 std::size_t feature_dim, TargetKind kind,
                 std::size_t target_dim) {
  if (samples.empty()) throw std::invalid_argument("empty batch");
  Batch batch;
  batch.x = DenseMatrix(samples.size(), feature_dim);
  if (kind == TargetKind::kRegression) {
    batch.y = DenseMatrix(samples.size(), target_dim);
  } else {
    batch.labels.reserve(samples.size());
  }
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const Sample& sample = *samples[s];
    for (std::size_t i = 0; i < feature_dim; ++i) {
      batch.x(s, i) = sample.features[i];
    }
    if (kind == TargetKind::kRegression) {
      for (std::size_t o = 0; o < target_dim; ++o) {
        batch.y(s, o) = sample.target[o];
      }
    } else {
      batch.labels.push_back(sample.label);
    }
  }
  return batch;
}

Batch pack_batch(const Dataset& ds) {
  std::vector<const Sample*> ptrs;
  ptrs.reserve(ds.samples.size());
  for (const Sample& s : ds.samples) ptrs.push_back(&s);
  return pack_batch(ptrs, ds.feature_dim, ds.target_kind, ds.target_dim);
}

double evaluate(const Network& net, const Dataset& ds, LossKind kind) {
  if (ds.samples.empty()) {
    throw std::invalid_argument("evaluate: empty dataset");
  }
  const bool classify = kind == LossKind::kCategoricalCrossEntropy;
  const std::size_t out = net.output_dim();

  // Chunked inference keeps the activation matrices small.
  constexpr std::size_t kChunk = 512;
  std::size_t correct = 0;
  double se_total = 0.0;
  std::vector<const Sample*> ptrs;
  for (std::size_t start = 0; start < ds.samples.size(); start += kChunk) {
    const std::size_t stop = std::min(start + kChunk, ds.samples.size());
    ptrs.clear();
    for (std::size_t i = start; i < stop; ++i) ptrs.push_back(&ds.samples[i]);
    Batch batch = pack_batch(ptrs, ds.feature_dim, ds.target_kind, ds.target_dim);
    ForwardTrace trace = forward(net, batch.x, Mode::kInfer);
    const DenseMatrix& pred = trace.output();
    for (std::size_t s = 0; s < ptrs.size(); ++s) {
      if (classify) {
        std::size_t best = 0;
        for (std::size_t o = 1; o < out; ++o) {
          if (pred(s, o) > pred(s, best)) best = o;  // tie -> lowest index
        }
        if (best == ptrs[s]->label) ++correct;
      } else {
        double se = 0.0;
        for (std::size_t o = 0; o < out; ++o) {
          const double d = pred(s, o) - batch.y(s, o);
          se += d * d;
        }
        se_total += se / static_cast<double>(out);
      }
    }
  }
  const double n = static_cast<double>(ds.samples.size());
  return classify ? static_cast<double>(correct) / n : se_total / n;
}

FeatureScaler FeatureScaler::fit(const Dataset& ds) {
  if (ds.samples.empty()) throw std::invalid_argument("cannot fit scaler on empty set");
  FeatureScaler scaler;
  scaler.mean.assign(ds.feature_dim, 0.0);
  scaler.stddev.assign(ds.feature_dim, 0.0);
  const double n = static_cast<double>(ds.samples.size());
  for (const Sample& s : ds.samples) {
    for (std::size_t i = 0; i < ds.feature_dim; ++i) {
      scaler.mean[i] += s.features[i];
    }
  }
  for (double& m : scaler.mean) m /= n;
  for (const Sample& s : ds.samples) {
    for (std::size_t i = 0; i < ds.feature_dim; ++i) {
      const double d = s.features[i] - scaler.mean[i];
      scaler.stddev[i] += d * d;
    }
  }
  for (double& v : scaler.stddev) {
    v = std::sqrt(v / n);
    if (v == 0.0) v = 1.0;  // constant feature: leave it centered only
  }
  return scaler;
}

void FeatureScaler::apply(Dataset& ds) const {
  if (mean.size() != ds.feature_dim) {
    throw std::invalid_argument("scaler dim does not match dataset");
  }
  for (Sample& s : ds.samples) {
    for (std::size_t i = 0; i < ds.feature_dim; ++i) {
      s.features[i] = (s.features[i] - mean[i]) / stddev[i];
    }
  }
}

}  // namespace blockrand
