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

#ifndef TUNNELQNN_TESTS_ORACLES_FORWARD_ORACLE_H_
#define TUNNELQNN_TESTS_ORACLES_FORWARD_ORACLE_H_

// Straight-line forward pass over a flat parameter vector. Reads parameters
// in the documented registry order and uses the dense-unitary circuit oracle
// for the quantum blocks.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "oracles/dense_unitary.h"

namespace tunnelqnn {
namespace oracle {

struct ForwardSpec {
  std::string variant;  // "TunnElQNN", "ReLUQNN", "ClassicalTDAF"
  std::string wiring;   // "parallel_blocks", "projected_single"
  int layers = 3;
  std::string axes = "XYZ";
  bool ring_closure = true;
  double gain = 25.0;
};

inline double NaiveDiode(double v) {
  const long double q = 1.602176634e-19L, kb = 1.380649e-23L, t = 300.0L;
  const long double a = 0.0039L, b = 0.5L, c = 0.0874L, d = 0.0073L,
                    n1 = 0.0352L, n2 = 0.0031L, h = 0.0367L;
  const long double alpha = q * (b - c) / (kb * t), eta = q * n1 / (kb * t),
                    gamma = q * n2 / (kb * t);
  const long double lv = v;
  const long double j1 = a * std::log((1 + std::exp(alpha + eta * lv)) /
                                      (1 + std::exp(alpha - eta * lv))) *
                         (std::numbers::pi_v<long double> / 2 +
                          std::atan((c - n1 * lv) / d));
  const long double j2 = h * (std::exp(gamma * lv) - 1);
  return static_cast<double>(j1 + j2);
}

class FlatReader {
 public:
  explicit FlatReader(const std::vector<double>& p) : p_(p) {}
  // y = W x + b with W stored row-major then b.
  std::vector<double> Dense(const std::vector<double>& x, int out) {
    const std::size_t in = x.size();
    std::vector<double> w(p_.begin() + pos_, p_.begin() + pos_ + out * in);
    pos_ += out * in;
    std::vector<double> y(out);
    for (int r = 0; r < out; ++r) {
      double acc = 0;
      for (std::size_t c = 0; c < in; ++c) acc += w[r * in + c] * x[c];
      y[r] = acc + p_[pos_ + r];
    }
    pos_ += out;
    return y;
  }
  std::vector<double> Take(std::size_t n) {
    std::vector<double> out(p_.begin() + pos_, p_.begin() + pos_ + n);
    pos_ += n;
    return out;
  }
  std::size_t consumed() const { return pos_; }

 private:
  const std::vector<double>& p_;
  std::size_t pos_ = 0;
};

inline std::vector<double> OracleLogits(const ForwardSpec& s,
                                        const std::vector<double>& params,
                                        double x0, double x1) {
  auto act = [&](std::vector<double> v) {
    for (double& e : v) {
      e = s.variant == "ReLUQNN" ? (e > 0 ? e : 0.0) : s.gain * NaiveDiode(e);
    }
    return v;
  };
  auto block = [&](const std::vector<double>& features,
                   const std::vector<double>& thetas) {
    CircuitDescription c;
    c.num_qubits = 2;
    c.features = features;
    c.embed_axes = s.axes;
    c.ring_closure = s.ring_closure;
    for (int l = 0; l < s.layers; ++l) {
      c.layer_thetas.push_back({thetas[2 * l], thetas[2 * l + 1]});
    }
    return CircuitExpectations(c);
  };

  FlatReader r(params);
  std::vector<double> h = act(r.Dense({x0, x1}, 4));
  if (s.variant != "ClassicalTDAF") {
    if (s.wiring == "parallel_blocks") {
      const auto t0 = r.Take(2 * s.layers);
      const auto t1 = r.Take(2 * s.layers);
      const auto z0 = block({h[0], h[1]}, t0);
      const auto z1 = block({h[2], h[3]}, t1);
      h = {z0[0], z0[1], z1[0], z1[1]};
    } else {
      const auto proj = r.Dense(h, 2);
      const auto t0 = r.Take(2 * s.layers);
      h = r.Dense(block(proj, t0), 4);
    }
  }
  h = act(r.Dense(h, 4));
  return r.Dense(h, 3);
}

}  // namespace oracle
}  // namespace tunnelqnn

#endif  // TUNNELQNN_TESTS_ORACLES_FORWARD_ORACLE_H_
