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

#ifndef TUNNELQNN_CONFIG_IO_H_
#define TUNNELQNN_CONFIG_IO_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tunnelqnn/data.h"
#include "tunnelqnn/harness.h"
#include "tunnelqnn/model.h"

namespace tunnelqnn {
namespace config_io {

// JSON mirror of TrainConfig. Parsing starts from defaults, so any subset of
// keys is accepted; unknown keys are rejected.
std::string TrainConfigToJson(const harness::TrainConfig& config);
harness::TrainConfig TrainConfigFromJson(const std::string& text);

// Self-describing checkpoint: training config, input scaling, parameter
// registry layout and the flat parameter array.
struct Checkpoint {
  harness::TrainConfig config;
  data::ScalingStats stats;
  std::vector<double> params;
};

std::string SerializeCheckpoint(const harness::TrainConfig& config,
                                const data::ScalingStats& stats,
                                const model::HybridModel& model);
Checkpoint ParseCheckpoint(const std::string& text);
// Rebuilds the architecture from the stored config and loads the parameters.
// Throws if the stored registry does not match the rebuilt model.
model::HybridModel RestoreModel(const std::string& text);

}  // namespace config_io
}  // namespace tunnelqnn

#endif  // TUNNELQNN_CONFIG_IO_H_
