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

#ifndef TUNNELQNN_NN_H_
#define TUNNELQNN_NN_H_

#include <cstdint>
#include <random>
#include <span>

#include <Eigen/Dense>

namespace tunnelqnn {
namespace nn {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct DenseGrads {
  MatrixXd d_weights;
  VectorXd d_bias;
  VectorXd d_input;
};

// y = W x + b.
class DenseLayer {
 public:
  DenseLayer() = default;
  DenseLayer(MatrixXd weights, VectorXd bias);
  // Zero-initialized out x in layer.
  DenseLayer(Eigen::Index in, Eigen::Index out);

  // Uniform on [-sqrt(1/in), sqrt(1/in)] for weights and bias, drawn
  // row-major weights first, then bias.
  static DenseLayer Initialized(Eigen::Index in, Eigen::Index out,
                                std::mt19937_64& rng);

  VectorXd Forward(const VectorXd& x) const;
  DenseGrads Backward(const VectorXd& x, const VectorXd& upstream) const;

  Eigen::Index in() const { return weights_.cols(); }
  Eigen::Index out() const { return weights_.rows(); }
  Eigen::Index num_params() const { return weights_.size() + bias_.size(); }

  const MatrixXd& weights() const { return weights_; }
  const VectorXd& bias() const { return bias_; }
  MatrixXd& weights() { return weights_; }
  VectorXd& bias() { return bias_; }

 private:
  MatrixXd weights_;
  VectorXd bias_;
};

VectorXd Relu(const VectorXd& x);
// Subgradient at 0 is 0.
VectorXd ReluGrad(const VectorXd& x);

struct LossAndGrad {
  double loss;
  VectorXd d_logits;
};

// -log softmax(logits)[label] with max-shift; d_logits = softmax - onehot.
LossAndGrad SoftmaxCrossEntropy(const VectorXd& logits, int label);
VectorXd Softmax(const VectorXd& logits);

struct AdamState {
  explicit AdamState(Eigen::Index num_params = 0, double lr = 0.02)
      : m(VectorXd::Zero(num_params)),
        v(VectorXd::Zero(num_params)),
        lr(lr) {}

  VectorXd m;
  VectorXd v;
  std::int64_t step = 0;
  double lr;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// One bias-corrected Adam update of `params` in place.
void AdamStep(std::span<double> params, std::span<const double> grads,
              AdamState& state);

}  // namespace nn
}  // namespace tunnelqnn

#endif  // TUNNELQNN_NN_H_
