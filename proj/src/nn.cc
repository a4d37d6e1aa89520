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

#include "tunnelqnn/nn.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace tunnelqnn {
namespace nn {

namespace {

void CheckSize(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string("nn: ") + what + " size " +
                                std::to_string(got) + ", expected " +
                                std::to_string(want));
  }
}

}  // namespace

DenseLayer::DenseLayer(MatrixXd weights, VectorXd bias)
    : weights_(std::move(weights)), bias_(std::move(bias)) {
  CheckSize(bias_.size(), weights_.rows(), "bias");
  if (!weights_.allFinite() || !bias_.allFinite()) {
    throw std::invalid_argument("nn: non-finite layer parameters");
  }
}

DenseLayer::DenseLayer(Eigen::Index in, Eigen::Index out)
    : weights_(MatrixXd::Zero(out, in)), bias_(VectorXd::Zero(out)) {}

DenseLayer DenseLayer::Initialized(Eigen::Index in, Eigen::Index out,
                                   std::mt19937_64& rng) {
  const double bound = std::sqrt(1.0 / static_cast<double>(in));
  std::uniform_real_distribution<double> dist(-bound, bound);
  DenseLayer layer(in, out);
  for (Eigen::Index r = 0; r < out; ++r) {
    for (Eigen::Index c = 0; c < in; ++c) layer.weights_(r, c) = dist(rng);
  }
  for (Eigen::Index r = 0; r < out; ++r) layer.bias_(r) = dist(rng);
  return layer;
}

VectorXd DenseLayer::Forward(const VectorXd& x) const {
  CheckSize(x.size(), in(), "dense input");
  return weights_ * x + bias_;
}

DenseGrads DenseLayer::Backward(const VectorXd& x,
                                const VectorXd& upstream) const {
  CheckSize(x.size(), in(), "dense input");
  CheckSize(upstream.size(), out(), "dense upstream");
  return {upstream * x.transpose(), upstream, weights_.transpose() * upstream};
}

VectorXd Relu(const VectorXd& x) { return x.cwiseMax(0.0); }

VectorXd ReluGrad(const VectorXd& x) {
  return x.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; });
}

VectorXd Softmax(const VectorXd& logits) {
  const VectorXd e = (logits.array() - logits.maxCoeff()).exp();
  return e / e.sum();
}

LossAndGrad SoftmaxCrossEntropy(const VectorXd& logits, int label) {
  if (label < 0 || label >= logits.size()) {
    throw std::out_of_range("nn: label " + std::to_string(label) +
                            " out of range for " +
                            std::to_string(logits.size()) + " classes");
  }
  const double max = logits.maxCoeff();
  const VectorXd shifted = logits.array() - max;
  const double log_sum = std::log(shifted.array().exp().sum());
  LossAndGrad out;
  out.loss = log_sum - shifted(label);
  out.d_logits = (shifted.array() - log_sum).exp();
  out.d_logits(label) -= 1.0;
  return out;
}

void AdamStep(std::span<double> params, std::span<const double> grads,
              AdamState& state) {
  const auto n = static_cast<Eigen::Index>(params.size());
  CheckSize(static_cast<Eigen::Index>(grads.size()), n, "adam grads");
  CheckSize(state.m.size(), n, "adam first moment");
  CheckSize(state.v.size(), n, "adam second moment");

  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(state.beta1, t);
  const double correction2 = 1.0 - std::pow(state.beta2, t);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double g = grads[i];
    state.m(i) = state.beta1 * state.m(i) + (1.0 - state.beta1) * g;
    state.v(i) = state.beta2 * state.v(i) + (1.0 - state.beta2) * g * g;
    const double m_hat = state.m(i) / correction1;
    const double v_hat = state.v(i) / correction2;
    params[i] -= state.lr * m_hat / (std::sqrt(v_hat) + state.epsilon);
  }
}

}  // namespace nn
}  // namespace tunnelqnn
