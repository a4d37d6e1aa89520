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

#include "tunnelqnn/model.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tunnelqnn/rng.h"

namespace tunnelqnn {
namespace model {

namespace {

tdaf::TdafParams DiodeParams(const ModelConfig& config) {
  tdaf::TdafParams p;
  p.gain = config.gain;
  return p;
}

}  // namespace

std::string VariantName(Variant variant) {
  switch (variant) {
    case Variant::kTunnElQnn: return "TunnElQNN";
    case Variant::kReluQnn: return "ReLUQNN";
    case Variant::kClassicalTdaf: return "ClassicalTDAF";
  }
  return "unknown";
}

Variant ParseVariant(const std::string& name) {
  if (name == "TunnElQNN") return Variant::kTunnElQnn;
  if (name == "ReLUQNN") return Variant::kReluQnn;
  if (name == "ClassicalTDAF") return Variant::kClassicalTdaf;
  throw std::invalid_argument("model: unknown variant '" + name + "'");
}

std::string WiringName(Wiring wiring) {
  switch (wiring) {
    case Wiring::kParallelBlocks: return "parallel_blocks";
    case Wiring::kProjectedSingle: return "projected_single";
  }
  return "unknown";
}

Wiring ParseWiring(const std::string& name) {
  if (name == "parallel_blocks") return Wiring::kParallelBlocks;
  if (name == "projected_single") return Wiring::kProjectedSingle;
  throw std::invalid_argument("model: unknown wiring '" + name + "'");
}

void ModelConfig::Validate() const {
  if (has_quantum_stage()) {
    if (quantum_layers < 1) {
      throw std::invalid_argument("model: quantum variants need >= 1 layer");
    }
    if (embed_axes.empty()) {
      throw std::invalid_argument("model: embed_axes must be non-empty");
    }
  }
  DiodeParams(*this).Validate();
}

int ArgMax(const VectorXd& scores) {
  int best = 0;
  for (int i = 1; i < scores.size(); ++i) {
    if (scores(i) > scores(best)) best = i;
  }
  return best;
}

HybridModel::HybridModel(const ModelConfig& config)
    : config_(config), diode_((config.Validate(), DiodeParams(config))) {
  std::mt19937_64 rng = MakeRng(config_.seed, RngStream::kInit);
  AddDense(LayerId::kInput, "input", kInputDim, kHiddenDim, rng);
  if (config_.has_quantum_stage()) {
    if (config_.wiring == Wiring::kParallelBlocks) {
      AddBlock("block0", rng);
      AddBlock("block1", rng);
    } else {
      AddDense(LayerId::kProject, "project", kHiddenDim, kQubitsPerBlock, rng);
      AddBlock("block0", rng);
      AddDense(LayerId::kExpand, "expand", kQubitsPerBlock, kHiddenDim, rng);
    }
  }
  AddDense(LayerId::kMid, "mid", kHiddenDim, kHiddenDim, rng);
  AddDense(LayerId::kOutput, "output", kHiddenDim, kNumClasses, rng);
}

void HybridModel::AddDense(LayerId id, const std::string& name, Eigen::Index in,
                           Eigen::Index out, std::mt19937_64& rng) {
  dense_[static_cast<int>(id)] = nn::DenseLayer::Initialized(in, out, rng);
  const auto w = static_cast<std::size_t>(in * out);
  const auto b = static_cast<std::size_t>(out);
  registry_.push_back({name + ".weight", ParamSlot::Kind::kWeight,
                       static_cast<int>(id), num_params_, w});
  num_params_ += w;
  registry_.push_back({name + ".bias", ParamSlot::Kind::kBias,
                       static_cast<int>(id), num_params_, b});
  num_params_ += b;
}

void HybridModel::AddBlock(const std::string& name, std::mt19937_64& rng) {
  qsim::QuantumBlockSpec spec;
  spec.num_qubits = kQubitsPerBlock;
  spec.num_layers = config_.quantum_layers;
  spec.embed_axes = config_.embed_axes;
  spec.ring_closure = config_.ring_closure;
  spec.thetas.resize(spec.num_thetas());
  std::uniform_real_distribution<double> dist(0.0, 2.0 * std::numbers::pi);
  for (double& t : spec.thetas) t = dist(rng);
  const int index = static_cast<int>(blocks_.size());
  blocks_.push_back(std::move(spec));
  registry_.push_back({name + ".theta", ParamSlot::Kind::kTheta, index,
                       num_params_, blocks_.back().num_thetas()});
  num_params_ += blocks_.back().num_thetas();
}

VectorXd HybridModel::Activate(const VectorXd& pre) const {
  if (config_.variant == Variant::kReluQnn) return nn::Relu(pre);
  const double gain = config_.gain;
  return pre.unaryExpr([&](double v) { return gain * diode_.Current(v); });
}

VectorXd HybridModel::ActivateGrad(const VectorXd& pre) const {
  if (config_.variant == Variant::kReluQnn) return nn::ReluGrad(pre);
  const double gain = config_.gain;
  return pre.unaryExpr([&](double v) { return gain * diode_.Conductance(v); });
}

VectorXd HybridModel::StageForward(const VectorXd& act1,
                                   ForwardCache* cache) const {
  if (act1.size() != kHiddenDim || !act1.allFinite()) {
    throw std::invalid_argument("model: quantum stage needs 4 finite values");
  }
  if (!config_.has_quantum_stage()) return act1;

  VectorXd block_out(static_cast<Eigen::Index>(blocks_.size()) *
                     kQubitsPerBlock);
  VectorXd projected;
  std::vector<VectorXd> inputs;
  if (config_.wiring == Wiring::kParallelBlocks) {
    inputs = {act1.segment(0, 2), act1.segment(2, 2)};
  } else {
    projected = layer(LayerId::kProject).Forward(act1);
    inputs = {projected};
  }
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const std::vector<double> z = qsim::RunBlock(
        std::span<const double>(inputs[b].data(), inputs[b].size()),
        blocks_[b]);
    for (int q = 0; q < kQubitsPerBlock; ++q) {
      block_out(static_cast<Eigen::Index>(b) * kQubitsPerBlock + q) = z[q];
    }
  }
  VectorXd out = config_.wiring == Wiring::kParallelBlocks
                     ? block_out
                     : layer(LayerId::kExpand).Forward(block_out);
  if (cache != nullptr) {
    cache->projected = std::move(projected);
    cache->block_inputs = std::move(inputs);
    cache->block_out = std::move(block_out);
  }
  return out;
}

VectorXd HybridModel::QuantumStageForward(const VectorXd& x) const {
  return StageForward(x, nullptr);
}

VectorXd HybridModel::Forward(const VectorXd& x, ForwardCache& cache) const {
  if (x.size() != kInputDim || !x.allFinite()) {
    throw std::invalid_argument("model: input must be 2 finite values");
  }
  cache = ForwardCache{};
  cache.input = x;
  cache.pre1 = layer(LayerId::kInput).Forward(x);
  cache.act1 = Activate(cache.pre1);
  cache.stage_out = StageForward(cache.act1, &cache);
  cache.pre2 = layer(LayerId::kMid).Forward(cache.stage_out);
  cache.act2 = Activate(cache.pre2);
  cache.logits = layer(LayerId::kOutput).Forward(cache.act2);
  return cache.logits;
}

VectorXd HybridModel::Logits(const VectorXd& x) const {
  ForwardCache cache;
  return Forward(x, cache);
}

int HybridModel::Predict(const VectorXd& x) const { return ArgMax(Logits(x)); }

VectorXd HybridModel::Backward(const ForwardCache& cache,
                               const VectorXd& dlogits) const {
  if (dlogits.size() != kNumClasses || cache.input.size() != kInputDim ||
      cache.act2.size() != kHiddenDim || cache.stage_out.size() != kHiddenDim ||
      cache.block_inputs.size() !=
          (config_.has_quantum_stage() ? blocks_.size() : 0)) {
    throw std::invalid_argument("model: stale or mismatched forward cache");
  }

  std::array<nn::DenseGrads, kNumLayerIds> dense_grads;
  std::vector<Eigen::VectorXd> theta_grads(blocks_.size());
  auto grads_of = [&](LayerId id) -> nn::DenseGrads& {
    return dense_grads[static_cast<int>(id)];
  };

  grads_of(LayerId::kOutput) =
      layer(LayerId::kOutput).Backward(cache.act2, dlogits);
  const VectorXd d_pre2 = grads_of(LayerId::kOutput)
                              .d_input.cwiseProduct(ActivateGrad(cache.pre2));
  grads_of(LayerId::kMid) = layer(LayerId::kMid).Backward(cache.stage_out, d_pre2);
  const VectorXd& d_stage_out = grads_of(LayerId::kMid).d_input;

  VectorXd d_act1;
  if (!config_.has_quantum_stage()) {
    d_act1 = d_stage_out;
  } else {
    VectorXd d_block_out = d_stage_out;
    if (config_.wiring == Wiring::kProjectedSingle) {
      grads_of(LayerId::kExpand) =
          layer(LayerId::kExpand).Backward(cache.block_out, d_stage_out);
      d_block_out = grads_of(LayerId::kExpand).d_input;
    }
    VectorXd d_block_in(static_cast<Eigen::Index>(blocks_.size()) *
                        kQubitsPerBlock);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const VectorXd& in = cache.block_inputs[b];
      const qsim::BlockJacobian jac = qsim::BlockGradients(
          std::span<const double>(in.data(), in.size()), blocks_[b]);
      const VectorXd upstream = d_block_out.segment(
          static_cast<Eigen::Index>(b) * kQubitsPerBlock, kQubitsPerBlock);
      d_block_in.segment(static_cast<Eigen::Index>(b) * kQubitsPerBlock,
                         kQubitsPerBlock) = jac.d_features.transpose() * upstream;
      theta_grads[b] = jac.d_thetas.transpose() * upstream;
    }
    if (config_.wiring == Wiring::kProjectedSingle) {
      grads_of(LayerId::kProject) =
          layer(LayerId::kProject).Backward(cache.act1, d_block_in);
      d_act1 = grads_of(LayerId::kProject).d_input;
    } else {
      d_act1 = d_block_in;
    }
  }
  const VectorXd d_pre1 = d_act1.cwiseProduct(ActivateGrad(cache.pre1));
  grads_of(LayerId::kInput) = layer(LayerId::kInput).Backward(cache.input, d_pre1);

  VectorXd flat(static_cast<Eigen::Index>(num_params_));
  for (const ParamSlot& slot : registry_) {
    double* dst = flat.data() + slot.offset;
    switch (slot.kind) {
      case ParamSlot::Kind::kWeight: {
        const Eigen::MatrixXd& dw = dense_grads[slot.owner].d_weights;
        for (Eigen::Index r = 0; r < dw.rows(); ++r) {
          for (Eigen::Index c = 0; c < dw.cols(); ++c) *dst++ = dw(r, c);
        }
        break;
      }
      case ParamSlot::Kind::kBias: {
        const VectorXd& db = dense_grads[slot.owner].d_bias;
        std::copy(db.data(), db.data() + db.size(), dst);
        break;
      }
      case ParamSlot::Kind::kTheta: {
        const VectorXd& dt = theta_grads[static_cast<std::size_t>(slot.owner)];
        std::copy(dt.data(), dt.data() + dt.size(), dst);
        break;
      }
    }
  }
  return flat;
}

VectorXd HybridModel::GetParameters() const {
  VectorXd flat(static_cast<Eigen::Index>(num_params_));
  for (const ParamSlot& slot : registry_) {
    double* dst = flat.data() + slot.offset;
    switch (slot.kind) {
      case ParamSlot::Kind::kWeight: {
        const Eigen::MatrixXd& w = dense_[slot.owner].weights();
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
          for (Eigen::Index c = 0; c < w.cols(); ++c) *dst++ = w(r, c);
        }
        break;
      }
      case ParamSlot::Kind::kBias: {
        const VectorXd& b = dense_[slot.owner].bias();
        std::copy(b.data(), b.data() + b.size(), dst);
        break;
      }
      case ParamSlot::Kind::kTheta: {
        const auto& t = blocks_[static_cast<std::size_t>(slot.owner)].thetas;
        std::copy(t.begin(), t.end(), dst);
        break;
      }
    }
  }
  return flat;
}

void HybridModel::SetParameters(std::span<const double> flat) {
  if (flat.size() != num_params_) {
    throw std::invalid_argument("model: expected " +
                                std::to_string(num_params_) +
                                " parameters, got " +
                                std::to_string(flat.size()));
  }
  for (double v : flat) {
    if (!std::isfinite(v)) throw std::invalid_argument("model: non-finite parameter");
  }
  for (const ParamSlot& slot : registry_) {
    const double* src = flat.data() + slot.offset;
    switch (slot.kind) {
      case ParamSlot::Kind::kWeight: {
        Eigen::MatrixXd& w = dense_[slot.owner].weights();
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
          for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = *src++;
        }
        break;
      }
      case ParamSlot::Kind::kBias: {
        VectorXd& b = dense_[slot.owner].bias();
        std::copy(src, src + b.size(), b.data());
        break;
      }
      case ParamSlot::Kind::kTheta: {
        auto& t = blocks_[static_cast<std::size_t>(slot.owner)].thetas;
        std::copy(src, src + t.size(), t.begin());
        break;
      }
    }
  }
}

HybridModel BuildModel(const ModelConfig& config) { return HybridModel(config); }

}  // namespace model
}  // namespace tunnelqnn
