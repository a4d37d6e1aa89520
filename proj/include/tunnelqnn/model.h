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

#ifndef TUNNELQNN_MODEL_H_
#define TUNNELQNN_MODEL_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tunnelqnn/nn.h"
#include "tunnelqnn/qsim.h"
#include "tunnelqnn/tdaf.h"

namespace tunnelqnn {
namespace model {

using Eigen::VectorXd;

enum class Variant { kTunnElQnn, kReluQnn, kClassicalTdaf };
enum class Wiring { kParallelBlocks, kProjectedSingle };

std::string VariantName(Variant variant);  // "TunnElQNN", "ReLUQNN", ...
Variant ParseVariant(const std::string& name);
std::string WiringName(Wiring wiring);     // "parallel_blocks", ...
Wiring ParseWiring(const std::string& name);

inline constexpr int kNumClasses = 3;
inline constexpr int kInputDim = 2;
inline constexpr int kHiddenDim = 4;
inline constexpr int kQubitsPerBlock = 2;

struct ModelConfig {
  Variant variant = Variant::kTunnElQnn;
  int quantum_layers = 3;
  Wiring wiring = Wiring::kParallelBlocks;
  double gain = 25.0;
  std::uint64_t seed = 0;
  std::vector<qsim::Axis> embed_axes = {qsim::Axis::kX, qsim::Axis::kY,
                                        qsim::Axis::kZ};
  bool ring_closure = true;

  bool has_quantum_stage() const { return variant != Variant::kClassicalTdaf; }
  void Validate() const;
};

enum class LayerId { kInput, kProject, kExpand, kMid, kOutput };
inline constexpr int kNumLayerIds = 5;

// One trainable tensor in the flat parameter vector. Dense weights are laid
// out row-major, followed by the bias; block angles are layer-major.
struct ParamSlot {
  enum class Kind { kWeight, kBias, kTheta };
  std::string name;
  Kind kind;
  int owner;  // LayerId for dense tensors, block index for thetas
  std::size_t offset;
  std::size_t size;
};

// Everything Backward needs from one Forward call.
struct ForwardCache {
  VectorXd input;
  VectorXd pre1, act1;
  VectorXd projected;                 // projected_single only
  std::vector<VectorXd> block_inputs; // per quantum block
  VectorXd block_out;                 // concatenated expectations
  VectorXd stage_out;                 // 4 values fed to the mid layer
  VectorXd pre2, act2;
  VectorXd logits;
};

// Dense(2->4) -> act -> quantum stage -> Dense(4->4) -> act -> Dense(4->3).
//
// The quantum stage is two independent 2-qubit blocks on (x0, x1) and
// (x2, x3) for parallel_blocks; Dense(4->2) -> one block -> Dense(2->4) for
// projected_single; identity for the classical baseline.
class HybridModel {
 public:
  explicit HybridModel(const ModelConfig& config);

  VectorXd QuantumStageForward(const VectorXd& x) const;

  // Throws std::invalid_argument on wrong input size or non-finite input.
  VectorXd Logits(const VectorXd& x) const;
  VectorXd Forward(const VectorXd& x, ForwardCache& cache) const;
  // Gradient of <dlogits, logits> aligned with registry(). Throws on a cache
  // that does not match this model's shapes.
  VectorXd Backward(const ForwardCache& cache, const VectorXd& dlogits) const;

  // argmax of the logits; ties go to the lowest class index.
  int Predict(const VectorXd& x) const;

  VectorXd GetParameters() const;
  void SetParameters(std::span<const double> flat);

  const std::vector<ParamSlot>& registry() const { return registry_; }
  std::size_t num_params() const { return num_params_; }
  const ModelConfig& config() const { return config_; }
  const nn::DenseLayer& layer(LayerId id) const {
    return dense_[static_cast<int>(id)];
  }
  const std::vector<qsim::QuantumBlockSpec>& blocks() const { return blocks_; }

 private:
  VectorXd Activate(const VectorXd& pre) const;
  VectorXd ActivateGrad(const VectorXd& pre) const;
  void AddDense(LayerId id, const std::string& name, Eigen::Index in,
                Eigen::Index out, std::mt19937_64& rng);
  void AddBlock(const std::string& name, std::mt19937_64& rng);
  VectorXd StageForward(const VectorXd& act1, ForwardCache* cache) const;

  ModelConfig config_;
  tdaf::TunnelDiode diode_;
  std::array<nn::DenseLayer, kNumLayerIds> dense_;
  std::vector<qsim::QuantumBlockSpec> blocks_;
  std::vector<ParamSlot> registry_;
  std::size_t num_params_ = 0;
};

HybridModel BuildModel(const ModelConfig& config);

// argmax with ties broken toward the lowest index.
int ArgMax(const VectorXd& scores);

}  // namespace model
}  // namespace tunnelqnn

#endif  // TUNNELQNN_MODEL_H_
