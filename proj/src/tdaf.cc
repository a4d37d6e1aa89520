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

#include "tunnelqnn/tdaf.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tunnelqnn {
namespace tdaf {

namespace {

void CheckFinite(double voltage) {
  if (!std::isfinite(voltage)) {
    throw std::invalid_argument("tdaf: voltage must be finite");
  }
}

}  // namespace

double Softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

double Logistic(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void TdafParams::Validate() const {
  if (!(d > 0)) throw std::invalid_argument("tdaf: d must be > 0");
  if (!(temperature > 0)) throw std::invalid_argument("tdaf: T must be > 0");
  if (!(a > 0)) throw std::invalid_argument("tdaf: a must be > 0");
  if (!(h > 0)) throw std::invalid_argument("tdaf: h must be > 0");
  const Coefficients k = DeriveCoefficients(*this);
  if (!std::isfinite(k.alpha) || !std::isfinite(k.eta) ||
      !std::isfinite(k.gamma)) {
    throw std::invalid_argument("tdaf: derived coefficients are not finite");
  }
  if (!(k.eta > 0)) throw std::invalid_argument("tdaf: eta must be > 0");
  if (!(k.gamma > 0)) throw std::invalid_argument("tdaf: gamma must be > 0");
  if (!std::isfinite(gain)) throw std::invalid_argument("tdaf: gain not finite");
}

Coefficients DeriveCoefficients(const TdafParams& p) {
  if (!(p.temperature > 0)) {
    throw std::invalid_argument("tdaf: temperature must be > 0, got " +
                                std::to_string(p.temperature));
  }
  const double thermal = p.boltzmann * p.temperature;
  return {p.charge * (p.b - p.c) / thermal, p.charge * p.n1 / thermal,
          p.charge * p.n2 / thermal};
}

TunnelDiode::TunnelDiode(const TdafParams& params)
    : params_(params), coeff_{} {
  params_.Validate();
  coeff_ = DeriveCoefficients(params_);
}

double TunnelDiode::Current(double v) const {
  CheckFinite(v);
  const auto& p = params_;
  const double log_ratio = Softplus(coeff_.alpha + coeff_.eta * v) -
                           Softplus(coeff_.alpha - coeff_.eta * v);
  const double window = std::numbers::pi / 2 + std::atan((p.c - p.n1 * v) / p.d);
  const double j1 = p.a * log_ratio * window;
  const double j2 = p.h * std::expm1(coeff_.gamma * v);
  return j1 + j2;
}

double TunnelDiode::Conductance(double v) const {
  CheckFinite(v);
  const auto& p = params_;
  const double up = coeff_.alpha + coeff_.eta * v;
  const double down = coeff_.alpha - coeff_.eta * v;
  const double log_ratio = Softplus(up) - Softplus(down);
  const double u = (p.c - p.n1 * v) / p.d;
  const double window = std::numbers::pi / 2 + std::atan(u);
  const double d_log_ratio = coeff_.eta * (Logistic(up) + Logistic(down));
  const double d_window = (-p.n1 / p.d) / (1.0 + u * u);
  return p.a * (d_log_ratio * window + log_ratio * d_window) +
         p.h * coeff_.gamma * std::exp(coeff_.gamma * v);
}

double TdafCurrent(double voltage, const TdafParams& params) {
  return TunnelDiode(params).Current(voltage);
}

double TdafDerivative(double voltage, const TdafParams& params) {
  return TunnelDiode(params).Conductance(voltage);
}

std::vector<double> TdafActivate(std::span<const double> x,
                                 const TdafParams& params) {
  const TunnelDiode diode(params);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = params.gain * diode.Current(x[i]);
  }
  return out;
}

std::vector<double> TdafActivateGrad(std::span<const double> x,
                                     const TdafParams& params) {
  const TunnelDiode diode(params);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = params.gain * diode.Conductance(x[i]);
  }
  return out;
}

}  // namespace tdaf
}  // namespace tunnelqnn
