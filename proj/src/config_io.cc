/* Copyright 2026 The tunnelqnn Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "tunnelqnn/config_io.h"

#include <set>
#include <stdexcept>

#include "json.hpp"

namespace tunnelqnn {
namespace config_io {

using nlohmann::json;

namespace {

void RejectUnknown(const json& obj, const std::set<std::string>& known,
                   const std::string& where) {
  if (!obj.is_object()) {
    throw std::invalid_argument("config: '" + where + "' must be an object");
  }
  for (const auto& item : obj.items()) {
    if (!known.contains(item.key())) {
      throw std::invalid_argument("config: unknown key '" + where + "." +
                                  item.key() + "'");
    }
  }
}

template <typename T>
void ReadIf(const json& obj, const char* key, T& dst) {
  if (obj.contains(key)) dst = obj.at(key).get<T>();
}

json ModelToJson(const model::ModelConfig& m) {
  return json{{"variant", model::VariantName(m.variant)},
              {"quantum_layers", m.quantum_layers},
              {"wiring", model::WiringName(m.wiring)},
              {"gain", m.gain},
              {"embed_axes", qsim::AxesToString(m.embed_axes)},
              {"ring_closure", m.ring_closure}};
}

json ToJson(const harness::TrainConfig& c) {
  return json{{"epochs", c.epochs},
              {"batch_size", c.batch_size},
              {"lr", c.lr},
              {"seed", c.seed},
              {"grid", c.grid},
              {"model", ModelToJson(c.model)},
              {"data",
               {{"n", c.data.n},
                {"shift", c.data.shift},
                {"noise_sigma", c.data.noise_sigma},
                {"train_fraction", c.data.train_fraction}}}};
}

harness::TrainConfig FromJson(const json& j) {
  RejectUnknown(j, {"epochs", "batch_size", "lr", "seed", "grid", "model", "data"},
                "config");
  harness::TrainConfig c;
  ReadIf(j, "epochs", c.epochs);
  ReadIf(j, "batch_size", c.batch_size);
  ReadIf(j, "lr", c.lr);
  ReadIf(j, "seed", c.seed);
  ReadIf(j, "grid", c.grid);
  if (j.contains("model")) {
    const json& m = j.at("model");
    RejectUnknown(m, {"variant", "quantum_layers", "wiring", "gain",
                      "embed_axes", "ring_closure"},
                  "model");
    if (m.contains("variant")) {
      c.model.variant = model::ParseVariant(m.at("variant").get<std::string>());
    }
    if (m.contains("wiring")) {
      c.model.wiring = model::ParseWiring(m.at("wiring").get<std::string>());
    }
    if (m.contains("embed_axes")) {
      c.model.embed_axes = qsim::ParseAxes(m.at("embed_axes").get<std::string>());
    }
    ReadIf(m, "quantum_layers", c.model.quantum_layers);
    ReadIf(m, "gain", c.model.gain);
    ReadIf(m, "ring_closure", c.model.ring_closure);
  }
  if (j.contains("data")) {
    const json& d = j.at("data");
    RejectUnknown(d, {"n", "shift", "noise_sigma", "train_fraction"}, "data");
    ReadIf(d, "n", c.data.n);
    ReadIf(d, "shift", c.data.shift);
    ReadIf(d, "noise_sigma", c.data.noise_sigma);
    ReadIf(d, "train_fraction", c.data.train_fraction);
  }
  c.model.seed = c.seed;
  return c;
}

json Parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string(what) + ": invalid JSON: " +
                                e.what());
  }
}

}  // namespace

std::string TrainConfigToJson(const harness::TrainConfig& config) {
  return ToJson(config).dump(2) + "\n";
}

harness::TrainConfig TrainConfigFromJson(const std::string& text) {
  try {
    return FromJson(Parse(text, "config"));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
}

std::string SerializeCheckpoint(const harness::TrainConfig& config,
                                const data::ScalingStats& stats,
                                const model::HybridModel& net) {
  json registry = json::array();
  for (const model::ParamSlot& slot : net.registry()) {
    registry.push_back(
        {{"name", slot.name}, {"offset", slot.offset}, {"size", slot.size}});
  }
  const Eigen::VectorXd params = net.GetParameters();
  json doc{{"format", "tunnelqnn-checkpoint"},
           {"version", 1},
           {"config", ToJson(config)},
           {"scaling",
            {{"mean", {stats.mean[0], stats.mean[1]}},
             {"std", {stats.stddev[0], stats.stddev[1]}}}},
           {"registry", registry},
           {"params", std::vector<double>(params.data(),
                                          params.data() + params.size())}};
  return doc.dump(2) + "\n";
}

Checkpoint ParseCheckpoint(const std::string& text) {
  try {
    const json doc = Parse(text, "checkpoint");
    if (doc.value("format", "") != "tunnelqnn-checkpoint") {
      throw std::invalid_argument("checkpoint: missing format marker");
    }
    Checkpoint cp;
    cp.config = FromJson(doc.at("config"));
    const json& scaling = doc.at("scaling");
    for (int i = 0; i < 2; ++i) {
      cp.stats.mean[i] = scaling.at("mean").at(i).get<double>();
      cp.stats.stddev[i] = scaling.at("std").at(i).get<double>();
    }
    cp.params = doc.at("params").get<std::vector<double>>();

    const model::HybridModel probe(cp.config.model);
    const json& registry = doc.at("registry");
    if (registry.size() != probe.registry().size()) {
      throw std::invalid_argument("checkpoint: registry does not match config");
    }
    for (std::size_t i = 0; i < registry.size(); ++i) {
      const model::ParamSlot& slot = probe.registry()[i];
      if (registry[i].at("name").get<std::string>() != slot.name ||
          registry[i].at("offset").get<std::size_t>() != slot.offset ||
          registry[i].at("size").get<std::size_t>() != slot.size) {
        throw std::invalid_argument("checkpoint: registry entry " + slot.name +
                                    " does not match config");
      }
    }
    return cp;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("checkpoint: ") + e.what());
  }
}

model::HybridModel RestoreModel(const std::string& text) {
  const Checkpoint cp = ParseCheckpoint(text);
  model::HybridModel net(cp.config.model);
  net.SetParameters(cp.params);
  return net;
}

}  // namespace config_io
}  // namespace tunnelqnn
