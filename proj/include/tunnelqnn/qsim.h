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

#ifndef TUNNELQNN_QSIM_H_
#define TUNNELQNN_QSIM_H_

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

// Exact statevector simulation of small variational blocks.
//
// Rotation convention: R_axis(angle) = exp(-i * angle * P_axis), with P the
// Pauli matrix. This is the full-angle form; a rotation by `angle` here equals
// a half-angle-convention rotation by 2 * angle. Consequently
//   <Z> after R_X(x)|0> = cos(2x),
// and the parameter-shift rule for any single occurrence of an angle is
//   d<O>/d(angle) = <O>(angle + pi/4) - <O>(angle - pi/4).
//
// Qubit 0 is the most significant bit of the basis index, so |10> is index 2
// for two qubits.
namespace tunnelqnn {
namespace qsim {

using Complex = std::complex<double>;

enum class Axis { kX, kY, kZ };

char AxisName(Axis axis);
// Parses strings such as "XYZ" or "X". Throws on unknown letters or empty.
std::vector<Axis> ParseAxes(const std::string& text);
std::string AxesToString(std::span<const Axis> axes);

// Shift applied to an angle for the parameter-shift rule (see header note).
inline constexpr double kParameterShift = 0.7853981633974483;  // pi / 4

class StateVector {
 public:
  // |0...0> on `num_qubits` qubits. Throws unless 1 <= num_qubits <= 10.
  explicit StateVector(int num_qubits);

  // Throws unless the size is a power of two (>= 2) and the norm is 1 within
  // 1e-10.
  static StateVector FromAmplitudes(std::vector<Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }

  void ApplyRotation(int qubit, Axis axis, double angle);
  void ApplyCnot(int control, int target);

  // <psi| Z_qubit |psi>, exactly from the amplitudes.
  double ExpectationZ(int qubit) const;
  std::vector<double> ExpectationsZ() const;
  double SquaredNorm() const;

 private:
  StateVector() = default;
  void CheckQubit(int qubit) const;
  std::size_t BitMask(int qubit) const {
    return std::size_t{1} << (num_qubits_ - 1 - qubit);
  }

  int num_qubits_ = 0;
  std::vector<Complex> amplitudes_;
};

// Trainable block: angle embedding followed by `num_layers` entangler layers.
struct QuantumBlockSpec {
  int num_qubits = 2;
  int num_layers = 3;
  // Row-major num_layers x num_qubits.
  std::vector<double> thetas = std::vector<double>(6, 0.0);
  std::vector<Axis> embed_axes = {Axis::kX, Axis::kY, Axis::kZ};
  bool ring_closure = true;
  Axis rotation_gate = Axis::kX;

  double theta(int layer, int qubit) const {
    return thetas[static_cast<std::size_t>(layer * num_qubits + qubit)];
  }
  std::span<const double> layer_thetas(int layer) const {
    return std::span<const double>(thetas).subspan(
        static_cast<std::size_t>(layer * num_qubits),
        static_cast<std::size_t>(num_qubits));
  }
  std::size_t num_thetas() const {
    return static_cast<std::size_t>(num_layers * num_qubits);
  }

  void Validate() const;
};

// Applies R_axis(features[i]) to qubit i for every axis, in the given order.
void AngleEmbed(StateVector& state, std::span<const double> features,
                std::span<const Axis> axes);

// rotation_gate(theta_i) on every qubit, then CNOT(i, i+1) for
// i = 0..n-2, then CNOT(n-1, 0) when ring_closure is set.
void EntanglerLayer(StateVector& state, std::span<const double> layer_thetas,
                    const QuantumBlockSpec& spec);

// Pauli-Z expectations of every qubit after embedding + all layers on |0..0>.
std::vector<double> RunBlock(std::span<const double> features,
                             const QuantumBlockSpec& spec);

struct BlockJacobian {
  Eigen::MatrixXd d_features;  // n x n: d<Z_i>/d feature_j
  Eigen::MatrixXd d_thetas;    // n x (L n): d<Z_i>/d theta_k, row-major k
};

// Parameter-shift gradients. Each rotation occurrence contributes one
// two-point term; a feature embedded on k axes accumulates k terms.
BlockJacobian BlockGradients(std::span<const double> features,
                             const QuantumBlockSpec& spec);

}  // namespace qsim
}  // namespace tunnelqnn

#endif  // TUNNELQNN_QSIM_H_
