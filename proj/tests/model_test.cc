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

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles/dense_unitary.h"
#include "oracles/forward_oracle.h"
#include "tunnelqnn/nn.h"

namespace tunnelqnn {
namespace model {
namespace {

ModelConfig Config(Variant v, Wiring w = Wiring::kParallelBlocks, int layers = 3,
                   std::uint64_t seed = 17) {
  ModelConfig c;
  c.variant = v;
  c.wiring = w;
  c.quantum_layers = layers;
  c.seed = seed;
  return c;
}

oracle::ForwardSpec SpecFor(const ModelConfig& c) {
  oracle::ForwardSpec s;
  s.variant = VariantName(c.variant);
  s.wiring = WiringName(c.wiring);
  s.layers = c.quantum_layers;
  s.axes = qsim::AxesToString(c.embed_axes);
  s.ring_closure = c.ring_closure;
  s.gain = c.gain;
  return s;
}

double Loss(const HybridModel& m, const VectorXd& x, int label) {
  return nn::SoftmaxCrossEntropy(m.Logits(x), label).loss;
}

TEST_CASE("parameter counts") {
  CHECK(BuildModel(Config(Variant::kTunnElQnn)).num_params() == 59);
  CHECK(BuildModel(Config(Variant::kReluQnn)).num_params() == 59);
  CHECK(BuildModel(Config(Variant::kClassicalTdaf)).num_params() == 47);
  // 12 + (8 + 2) + 6 + (8 + 4) + 20 + 15
  CHECK(BuildModel(Config(Variant::kTunnElQnn, Wiring::kProjectedSingle)).num_params() ==
        75);
  CHECK(BuildModel(Config(Variant::kTunnElQnn, Wiring::kParallelBlocks, 5)).num_params() ==
        47 + 20);
}

TEST_CASE("registry covers every parameter exactly once") {
  for (Variant v : {Variant::kTunnElQnn, Variant::kReluQnn, Variant::kClassicalTdaf}) {
    for (Wiring w : {Wiring::kParallelBlocks, Wiring::kProjectedSingle}) {
      const HybridModel m(Config(v, w));
      std::size_t expected = 0;
      for (const ParamSlot& slot : m.registry()) {
        CHECK(slot.offset == expected);
        expected += slot.size;
      }
      CHECK(expected == m.num_params());
    }
  }
  const HybridModel classical(Config(Variant::kClassicalTdaf));
  for (const ParamSlot& slot : classical.registry()) {
    CHECK(slot.kind != ParamSlot::Kind::kTheta);
  }
}

TEST_CASE("invalid configs are rejected") {
  ModelConfig c = Config(Variant::kTunnElQnn);
  c.quantum_layers = 0;
  CHECK_THROWS_AS(BuildModel(c), std::invalid_argument);
  c.variant = Variant::kClassicalTdaf;  // ignores quantum fields
  CHECK_NOTHROW(BuildModel(c));
  c = Config(Variant::kReluQnn);
  c.embed_axes.clear();
  CHECK_THROWS_AS(BuildModel(c), std::invalid_argument);
  CHECK_THROWS_AS(ParseVariant("GELUQNN"), std::invalid_argument);
  CHECK_THROWS_AS(ParseWiring("serial"), std::invalid_argument);
  CHECK(ParseVariant("ClassicalTDAF") == Variant::kClassicalTdaf);
}

TEST_CASE("variants share shapes, layout and initialization stream") {
  const HybridModel tunnel(Config(Variant::kTunnElQnn));
  const HybridModel relu(Config(Variant::kReluQnn));
  REQUIRE(tunnel.registry().size() == relu.registry().size());
  for (std::size_t i = 0; i < tunnel.registry().size(); ++i) {
    CHECK(tunnel.registry()[i].name == relu.registry()[i].name);
    CHECK(tunnel.registry()[i].offset == relu.registry()[i].offset);
  }
  CHECK(tunnel.GetParameters() == relu.GetParameters());
  CHECK(HybridModel(Config(Variant::kTunnElQnn, Wiring::kParallelBlocks, 3, 18))
            .GetParameters() != tunnel.GetParameters());
}

TEST_CASE("quantum stage") {
  HybridModel m(Config(Variant::kTunnElQnn));
  VectorXd params = m.GetParameters();
  for (const ParamSlot& slot : m.registry()) {
    if (slot.kind == ParamSlot::Kind::kTheta) {
      for (std::size_t i = 0; i < slot.size; ++i) params(slot.offset + i) = 0.0;
    }
  }
  m.SetParameters(std::span<const double>(params.data(), params.size()));
  CHECK(m.QuantumStageForward(VectorXd::Zero(4)) == VectorXd::Ones(4));

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  const HybridModel r(Config(Variant::kTunnElQnn, Wiring::kParallelBlocks, 4, 99));
  for (int trial = 0; trial < 50; ++trial) {
    VectorXd x(4);
    for (int i = 0; i < 4; ++i) x(i) = u(rng);
    const VectorXd out = r.QuantumStageForward(x);
    CHECK(out.cwiseAbs().maxCoeff() <= 1.0 + 1e-15);
    for (int b = 0; b < 2; ++b) {
      oracle::CircuitDescription c;
      c.num_qubits = 2;
      c.features = {x(2 * b), x(2 * b + 1)};
      c.embed_axes = "XYZ";
      for (int l = 0; l < 4; ++l) {
        c.layer_thetas.push_back({r.blocks()[b].theta(l, 0), r.blocks()[b].theta(l, 1)});
      }
      const auto want = oracle::CircuitExpectations(c);
      CHECK(std::abs(out(2 * b) - want[0]) <= 1e-12);
      CHECK(std::abs(out(2 * b + 1) - want[1]) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(r.QuantumStageForward(VectorXd::Zero(3)), std::invalid_argument);

  const HybridModel classical(Config(Variant::kClassicalTdaf));
  const VectorXd x = (VectorXd(4) << 3.0, -1.0, 0.5, 9.0).finished();
  CHECK(classical.QuantumStageForward(x) == x);
}

TEST_CASE("zero weights give the output bias") {
  HybridModel m(Config(Variant::kTunnElQnn));
  VectorXd params = VectorXd::Zero(static_cast<Eigen::Index>(m.num_params()));
  const ParamSlot& out_bias = m.registry().back();
  REQUIRE(out_bias.name == "output.bias");
  params(out_bias.offset) = 0.25;
  params(out_bias.offset + 1) = -1.0;
  params(out_bias.offset + 2) = 3.5;
  m.SetParameters(std::span<const double>(params.data(), params.size()));
  const VectorXd logits = m.Logits((VectorXd(2) << 0.7, -1.3).finished());
  CHECK(logits == (VectorXd(3) << 0.25, -1.0, 3.5).finished());
}

TEST_CASE("forward matches the straight-line oracle") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (Variant v : {Variant::kTunnElQnn, Variant::kReluQnn, Variant::kClassicalTdaf}) {
    for (Wiring w : {Wiring::kParallelBlocks, Wiring::kProjectedSingle}) {
      const ModelConfig cfg = Config(v, w, 2, 1234);
      const HybridModel m(cfg);
      const VectorXd p = m.GetParameters();
      const std::vector<double> flat(p.data(), p.data() + p.size());
      for (int trial = 0; trial < 10; ++trial) {
        const double x0 = u(rng), x1 = u(rng);
        const VectorXd got = m.Logits((VectorXd(2) << x0, x1).finished());
        const auto want = oracle::OracleLogits(SpecFor(cfg), flat, x0, x1);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(got(k) - want[k]) <= 1e-10);
      }
      const VectorXd x = (VectorXd(2) << 0.3, 0.1).finished();
      CHECK(m.Logits(x) == m.Logits(x));
    }
  }
}

TEST_CASE("backward with zero upstream is zero") {
  const HybridModel m(Config(Variant::kTunnElQnn));
  ForwardCache cache;
  m.Forward((VectorXd(2) << 0.5, -0.5).finished(), cache);
  CHECK(m.Backward(cache, VectorXd::Zero(3)).isZero(0));
}

TEST_CASE("backward rejects a mismatched cache") {
  const HybridModel quantum(Config(Variant::kTunnElQnn));
  const HybridModel classical(Config(Variant::kClassicalTdaf));
  ForwardCache cache;
  classical.Forward((VectorXd(2) << 0.5, -0.5).finished(), cache);
  CHECK_THROWS_AS(quantum.Backward(cache, VectorXd::Ones(3)), std::invalid_argument);
  CHECK_THROWS_AS(quantum.Backward(ForwardCache{}, VectorXd::Ones(3)),
                  std::invalid_argument);
  quantum.Forward((VectorXd(2) << 0.5, -0.5).finished(), cache);
  CHECK_THROWS_AS(quantum.Backward(cache, VectorXd::Ones(2)), std::invalid_argument);
}

TEST_CASE("full-model gradient equals finite differences") {
  const double h = 1e-5;
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (Variant v : {Variant::kTunnElQnn, Variant::kReluQnn, Variant::kClassicalTdaf}) {
    for (Wiring w : {Wiring::kParallelBlocks, Wiring::kProjectedSingle}) {
      HybridModel m(Config(v, w, 3, 7));
      for (int trial = 0; trial < 3; ++trial) {
        const VectorXd x = (VectorXd(2) << u(rng), u(rng)).finished();
        const int label = trial % 3;
        ForwardCache cache;
        const VectorXd logits = m.Forward(x, cache);
        const VectorXd grad =
            m.Backward(cache, nn::SoftmaxCrossEntropy(logits, label).d_logits);
        REQUIRE(grad.size() == static_cast<Eigen::Index>(m.num_params()));
        const VectorXd base = m.GetParameters();
        for (Eigen::Index i = 0; i < base.size(); ++i) {
          VectorXd p = base;
          p(i) += h;
          m.SetParameters(std::span<const double>(p.data(), p.size()));
          const double up = Loss(m, x, label);
          p(i) -= 2 * h;
          m.SetParameters(std::span<const double>(p.data(), p.size()));
          const double down = Loss(m, x, label);
          INFO(VariantName(v) << " " << WiringName(w) << " param " << i);
          CHECK(std::abs(grad(i) - (up - down) / (2 * h)) <= 1e-5);
        }
        m.SetParameters(std::span<const double>(base.data(), base.size()));
      }
    }
  }
}

TEST_CASE("predict is argmax with lowest-index ties") {
  CHECK(ArgMax((VectorXd(3) << 0.1, 0.9, 0.3).finished()) == 1);
  CHECK(ArgMax((VectorXd(3) << 1, 1, 0).finished()) == 0);
  CHECK(ArgMax((VectorXd(3) << 0, 2, 2).finished()) == 1);

  const HybridModel m(Config(Variant::kTunnElQnn));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 20; ++i) {
    const VectorXd x = (VectorXd(2) << u(rng), u(rng)).finished();
    CHECK(m.Predict(x) == ArgMax(m.Logits(x)));
  }
}

TEST_CASE("parameter round trip and validation") {
  HybridModel m(Config(Variant::kTunnElQnn, Wiring::kProjectedSingle));
  const VectorXd p = m.GetParameters();
  HybridModel other(Config(Variant::kTunnElQnn, Wiring::kProjectedSingle, 3, 999));
  other.SetParameters(std::span<const double>(p.data(), p.size()));
  CHECK(other.GetParameters() == p);

  std::vector<double> short_params(3, 0.0);
  CHECK_THROWS_AS(m.SetParameters(short_params), std::invalid_argument);
  std::vector<double> nan_params(m.num_params(), 0.0);
  nan_params[5] = NAN;
  CHECK_THROWS_AS(m.SetParameters(nan_params), std::invalid_argument);
  CHECK_THROWS_AS(m.Logits((VectorXd(2) << NAN, 0).finished()), std::invalid_argument);
}

}  // namespace
}  // namespace model
}  // namespace tunnelqnn
