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

#ifndef TUNNELQNN_TESTS_ORACLES_DENSE_UNITARY_H_
#define TUNNELQNN_TESTS_ORACLES_DENSE_UNITARY_H_

// Brute-force circuit oracle: every gate becomes a full 2^n x 2^n matrix
// (Kronecker products, qubit 0 leftmost), rotations come from a generic
// matrix exponential, and <Z_i> is psi^dagger (I x .. Z .. x I) psi.

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace tunnelqnn {
namespace oracle {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline CMatrix Pauli(char axis) {
  using C = std::complex<double>;
  CMatrix m(2, 2);
  switch (axis) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

// exp(-i angle P) by Eigen's general matrix exponential.
inline CMatrix RotationMatrix(char axis, double angle) {
  const CMatrix generator = std::complex<double>(0, -angle) * Pauli(axis);
  return generator.exp();
}

inline CMatrix Embed(const CMatrix& single, int qubit, int n) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    const CMatrix factor = q == qubit ? single : CMatrix::Identity(2, 2);
    out = Eigen::kroneckerProduct(out, factor).eval();
  }
  return out;
}

inline CMatrix CnotMatrix(int control, int target, int n) {
  const int dim = 1 << n;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    // bit for qubit q is (n - 1 - q)
    const bool c = (col >> (n - 1 - control)) & 1;
    const int row = c ? col ^ (1 << (n - 1 - target)) : col;
    m(row, col) = 1.0;
  }
  return m;
}

struct CircuitDescription {
  int num_qubits;
  std::vector<double> features;
  std::string embed_axes;  // e.g. "XYZ"
  std::vector<std::vector<double>> layer_thetas;
  char rotation_gate = 'X';
  bool ring_closure = true;
};

inline CMatrix CircuitUnitary(const CircuitDescription& c) {
  const int n = c.num_qubits;
  CMatrix u = CMatrix::Identity(1 << n, 1 << n);
  auto apply = [&](const CMatrix& g) { u = (g * u).eval(); };
  for (int q = 0; q < n; ++q) {
    for (char axis : c.embed_axes) {
      apply(Embed(RotationMatrix(axis, c.features[q]), q, n));
    }
  }
  for (const auto& layer : c.layer_thetas) {
    for (int q = 0; q < n; ++q) {
      apply(Embed(RotationMatrix(c.rotation_gate, layer[q]), q, n));
    }
    for (int q = 0; q + 1 < n; ++q) apply(CnotMatrix(q, q + 1, n));
    if (c.ring_closure && n > 1) apply(CnotMatrix(n - 1, 0, n));
  }
  return u;
}

inline std::vector<double> ZExpectations(const CVector& psi, int n) {
  std::vector<double> out;
  for (int q = 0; q < n; ++q) {
    const CMatrix z = Embed(Pauli('Z'), q, n);
    out.push_back((psi.adjoint() * z * psi)(0, 0).real());
  }
  return out;
}

inline std::vector<double> CircuitExpectations(const CircuitDescription& c) {
  CVector zero = CVector::Zero(1 << c.num_qubits);
  zero(0) = 1.0;
  return ZExpectations(CircuitUnitary(c) * zero, c.num_qubits);
}

}  // namespace oracle
}  // namespace tunnelqnn

#endif  // TUNNELQNN_TESTS_ORACLES_DENSE_UNITARY_H_
