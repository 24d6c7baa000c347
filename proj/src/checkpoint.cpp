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

#include "blockrand/checkpoint.hpp"

#include <fstream>

#include <json.hpp>

#include "blockrand/errors.hpp"

namespace blockrand {

namespace {
constexpr const char* kFormat = "blockrand-checkpoint";
constexpr int kFormatVersion = 1;
}  // namespace

void save_checkpoint(const Network& net, std::uint64_t seed,
                     const std::string& path) {
  nlohmann::json doc;
  doc["format"] = kFormat;
  doc["version"] = kFormatVersion;
  doc["seed"] = seed;
  doc["layers"] = nlohmann::json::array();
  for (const LayerSpec& spec : net.layers()) {
    nlohmann::json layer;
    layer["input_dim"] = spec.input_dim;
    layer["output_dim"] = spec.output_dim;
    layer["activation"] = activation_name(spec.activation);
    if (spec.activation.kind == Activation::kLeakyRelu) {
      layer["leaky_slope"] = spec.activation.leaky_slope;
    }
    layer["dropout"] = spec.dropout_rate;
    doc["layers"].push_back(std::move(layer));
  }
  doc["weights"] = nlohmann::json::array();
  doc["biases"] = nlohmann::json::array();
  for (std::size_t l = 0; l < net.layers().size(); ++l) {
    doc["weights"].push_back(net.params().weights[l].values());
    doc["biases"].push_back(net.params().biases[l]);
  }

  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open for writing");
  out << doc.dump(2) << "\n";
  if (!out) throw IoError(path, "write failed");
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path, std::string("invalid JSON: ") + e.what());
  }
  if (doc.value("format", "") != kFormat) {
    throw IoError(path, "not a blockrand checkpoint");
  }
  if (doc.value("version", 0) != kFormatVersion) {
    throw IoError(path, "unsupported checkpoint version");
  }

  try {
    std::vector<LayerSpec> layers;
    for (const auto& layer : doc.at("layers")) {
      LayerSpec spec;
      spec.input_dim = layer.at("input_dim").get<std::size_t>();
      spec.output_dim = layer.at("output_dim").get<std::size_t>();
      spec.activation = activation_from_name(
          layer.at("activation").get<std::string>(),
          layer.value("leaky_slope", 1e-2));
      spec.dropout_rate = layer.value("dropout", 0.0);
      layers.push_back(spec);
    }
    Checkpoint ckpt;
    ckpt.net = Network(std::move(layers));
    ckpt.seed = doc.at("seed").get<std::uint64_t>();
    const auto& weights = doc.at("weights");
    const auto& biases = doc.at("biases");
    if (weights.size() != ckpt.net.layers().size() ||
        biases.size() != ckpt.net.layers().size()) {
      throw IoError(path, "layer/parameter count mismatch");
    }
    for (std::size_t l = 0; l < ckpt.net.layers().size(); ++l) {
      const LayerSpec& spec = ckpt.net.layers()[l];
      auto w = weights[l].get<std::vector<double>>();
      if (w.size() != spec.input_dim * spec.output_dim) {
        throw IoError(path, "weight count mismatch in layer " + std::to_string(l));
      }
      ckpt.net.params().weights[l] =
          DenseMatrix(spec.output_dim, spec.input_dim, std::move(w));
      auto b = biases[l].get<std::vector<double>>();
      if (b.size() != spec.output_dim) {
        throw IoError(path, "bias count mismatch in layer " + std::to_string(l));
      }
      ckpt.net.params().biases[l] = std::move(b);
      if (!ckpt.net.params().weights[l].all_finite()) {
        throw IoError(path, "non-finite weight in layer " + std::to_string(l));
      }
    }
    return ckpt;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path, std::string("malformed checkpoint: ") + e.what());
  }
}

}  // namespace blockrand
