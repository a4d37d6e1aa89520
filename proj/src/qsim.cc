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

#include "tunnelqnn/qsim.h"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace tunnelqnn {
namespace qsim {

namespace {

constexpr int kMaxQubits = 10;

// A gate in a block circuit. Rotations remember which trainable input (if
// any) supplied their angle so gradients can be routed back.
struct Gate {
  enum class Kind { kRotation, kCnot };
  enum class Source { kNone, kFeature, kTheta };

  Kind kind;
  int qubit;   // rotation target or CNOT control
  int target;  // CNOT target
  Axis axis;
  double angle;
  Source source;
  int index;  // feature or theta index
};

void ApplyGate(StateVector& state, const Gate& gate, double delta = 0.0) {
  if (gate.kind == Gate::Kind::kRotation) {
    state.ApplyRotation(gate.qubit, gate.axis, gate.angle + delta);
  } else {
    state.ApplyCnot(gate.qubit, gate.target);
  }
}

void AppendEmbedding(std::vector<Gate>& gates, std::span<const double> features,
                     std::span<const Axis> axes) {
  for (std::size_t q = 0; q < features.size(); ++q) {
    for (Axis axis : axes) {
      gates.push_back({Gate::Kind::kRotation, static_cast<int>(q), -1, axis,
                       features[q], Gate::Source::kFeature,
                       static_cast<int>(q)});
    }
  }
}

void AppendEntangler(std::vector<Gate>& gates,
                     std::span<const double> layer_thetas, int theta_offset,
                     const QuantumBlockSpec& spec) {
  const int n = spec.num_qubits;
  for (int q = 0; q < n; ++q) {
    gates.push_back({Gate::Kind::kRotation, q, -1, spec.rotation_gate,
                     layer_thetas[static_cast<std::size_t>(q)],
                     Gate::Source::kTheta, theta_offset + q});
  }
  for (int q = 0; q + 1 < n; ++q) {
    gates.push_back({Gate::Kind::kCnot, q, q + 1, Axis::kZ, 0.0,
                     Gate::Source::kNone, -1});
  }
  if (spec.ring_closure && n > 1) {
    gates.push_back({Gate::Kind::kCnot, n - 1, 0, Axis::kZ, 0.0,
                     Gate::Source::kNone, -1});
  }
}

void CheckLength(std::size_t got, int want, const char* what) {
  if (got != static_cast<std::size_t>(want)) {
    throw std::invalid_argument(std::string("qsim: ") + what + " length " +
                                std::to_string(got) + " != n_qubits " +
                                std::to_string(want));
  }
}

std::vector<Gate> BuildBlockCircuit(std::span<const double> features,
                                    const QuantumBlockSpec& spec) {
  spec.Validate();
  CheckLength(features.size(), spec.num_qubits, "features");
  std::vector<Gate> gates;
  AppendEmbedding(gates, features, spec.embed_axes);
  for (int l = 0; l < spec.num_layers; ++l) {
    AppendEntangler(gates, spec.layer_thetas(l), l * spec.num_qubits, spec);
  }
  return gates;
}

}  // namespace

char AxisName(Axis axis) {
  switch (axis) {
    case Axis::kX: return 'X';
    case Axis::kY: return 'Y';
    case Axis::kZ: return 'Z';
  }
  return '?';
}

std::vector<Axis> ParseAxes(const std::string& text) {
  std::vector<Axis> axes;
  for (char ch : text) {
    switch (ch) {
      case 'X': case 'x': axes.push_back(Axis::kX); break;
      case 'Y': case 'y': axes.push_back(Axis::kY); break;
      case 'Z': case 'z': axes.push_back(Axis::kZ); break;
      default:
        throw std::invalid_argument("qsim: unknown axis '" +
                                    std::string(1, ch) + "'");
    }
  }
  if (axes.empty()) throw std::invalid_argument("qsim: empty axis list");
  return axes;
}

std::string AxesToString(std::span<const Axis> axes) {
  std::string out;
  for (Axis a : axes) out.push_back(AxisName(a));
  return out;
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("qsim: num_qubits must be in [1, 10]");
  }
  amplitudes_.assign(std::size_t{1} << num_qubits, Complex(0.0, 0.0));
  amplitudes_[0] = 1.0;
}

StateVector StateVector::FromAmplitudes(std::vector<Complex> amplitudes) {
  const std::size_t size = amplitudes.size();
  if (size < 2 || (size & (size - 1)) != 0) {
    throw std::invalid_argument("qsim: amplitude count must be a power of two");
  }
  int n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  if (n > kMaxQubits) throw std::invalid_argument("qsim: too many qubits");
  StateVector state;
  state.num_qubits_ = n;
  state.amplitudes_ = std::move(amplitudes);
  if (std::abs(state.SquaredNorm() - 1.0) > 1e-10) {
    throw std::invalid_argument("qsim: amplitudes are not normalized");
  }
  return state;
}

void StateVector::CheckQubit(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits_) {
    throw std::out_of_range("qsim: qubit " + std::to_string(qubit) +
                            " out of range for " + std::to_string(num_qubits_) +
                            " qubits");
  }
}

void StateVector::ApplyRotation(int qubit, Axis axis, double angle) {
  CheckQubit(qubit);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  // exp(-i angle P) = cos(angle) I - i sin(angle) P.
  Complex m00, m01, m10, m11;
  switch (axis) {
    case Axis::kX:
      m00 = c; m01 = Complex(0, -s); m10 = Complex(0, -s); m11 = c;
      break;
    case Axis::kY:
      m00 = c; m01 = -s; m10 = s; m11 = c;
      break;
    case Axis::kZ:
      m00 = Complex(c, -s); m01 = 0; m10 = 0; m11 = Complex(c, s);
      break;
  }
  const std::size_t mask = BitMask(qubit);
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if (i & mask) continue;
    const Complex lo = amplitudes_[i];
    const Complex hi = amplitudes_[i | mask];
    amplitudes_[i] = m00 * lo + m01 * hi;
    amplitudes_[i | mask] = m10 * lo + m11 * hi;
  }
}

void StateVector::ApplyCnot(int control, int target) {
  CheckQubit(control);
  CheckQubit(target);
  if (control == target) {
    throw std::invalid_argument("qsim: CNOT control equals target");
  }
  const std::size_t cmask = BitMask(control);
  const std::size_t tmask = BitMask(target);
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if ((i & cmask) && !(i & tmask)) {
      std::swap(amplitudes_[i], amplitudes_[i | tmask]);
    }
  }
}

double StateVector::ExpectationZ(int qubit) const {
  CheckQubit(qubit);
  const std::size_t mask = BitMask(qubit);
  double sum = 0.0;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    const double p = std::norm(amplitudes_[i]);
    sum += (i & mask) ? -p : p;
  }
  return sum;
}

std::vector<double> StateVector::ExpectationsZ() const {
  std::vector<double> out(static_cast<std::size_t>(num_qubits_));
  for (int q = 0; q < num_qubits_; ++q) out[q] = ExpectationZ(q);
  return out;
}

double StateVector::SquaredNorm() const {
  double sum = 0.0;
  for (const Complex& a : amplitudes_) sum += std::norm(a);
  return sum;
}

void QuantumBlockSpec::Validate() const {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("qsim: num_qubits must be in [1, 10]");
  }
  if (num_layers < 0) throw std::invalid_argument("qsim: num_layers < 0");
  if (thetas.size() != num_thetas()) {
    throw std::invalid_argument("qsim: thetas shape does not match (L, n)");
  }
  for (double t : thetas) {
    if (!std::isfinite(t)) throw std::invalid_argument("qsim: non-finite theta");
  }
  if (embed_axes.empty()) throw std::invalid_argument("qsim: empty embed_axes");
}

void AngleEmbed(StateVector& state, std::span<const double> features,
                std::span<const Axis> axes) {
  CheckLength(features.size(), state.num_qubits(), "features");
  std::vector<Gate> gates;
  AppendEmbedding(gates, features, axes);
  for (const Gate& g : gates) ApplyGate(state, g);
}

void EntanglerLayer(StateVector& state, std::span<const double> layer_thetas,
                    const QuantumBlockSpec& spec) {
  CheckLength(layer_thetas.size(), state.num_qubits(), "layer_thetas");
  if (spec.num_qubits != state.num_qubits()) {
    throw std::invalid_argument("qsim: spec and state disagree on n_qubits");
  }
  std::vector<Gate> gates;
  AppendEntangler(gates, layer_thetas, 0, spec);
  for (const Gate& g : gates) ApplyGate(state, g);
}

std::vector<double> RunBlock(std::span<const double> features,
                             const QuantumBlockSpec& spec) {
  const std::vector<Gate> gates = BuildBlockCircuit(features, spec);
  StateVector state(spec.num_qubits);
  for (const Gate& g : gates) ApplyGate(state, g);
  return state.ExpectationsZ();
}

BlockJacobian BlockGradients(std::span<const double> features,
                             const QuantumBlockSpec& spec) {
  const std::vector<Gate> gates = BuildBlockCircuit(features, spec);
  const int n = spec.num_qubits;
  BlockJacobian jac{Eigen::MatrixXd::Zero(n, n),
                    Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(
                                                 spec.num_thetas()))};

  // prefix[k] is the state before gate k.
  std::vector<StateVector> prefix;
  prefix.reserve(gates.size() + 1);
  prefix.emplace_back(n);
  for (const Gate& g : gates) {
    prefix.push_back(prefix.back());
    ApplyGate(prefix.back(), g);
  }

  auto shifted = [&](std::size_t k, double delta) {
    StateVector state = prefix[k];
    ApplyGate(state, gates[k], delta);
    for (std::size_t j = k + 1; j < gates.size(); ++j) ApplyGate(state, gates[j]);
    return state.ExpectationsZ();
  };

  for (std::size_t k = 0; k < gates.size(); ++k) {
    const Gate& g = gates[k];
    if (g.kind != Gate::Kind::kRotation || g.source == Gate::Source::kNone) {
      continue;
    }
    const std::vector<double> plus = shifted(k, kParameterShift);
    const std::vector<double> minus = shifted(k, -kParameterShift);
    Eigen::MatrixXd& dst =
        g.source == Gate::Source::kFeature ? jac.d_features : jac.d_thetas;
    for (int i = 0; i < n; ++i) dst(i, g.index) += plus[i] - minus[i];
  }
  return jac;
}

}  // namespace qsim
}  // namespace tunnelqnn
