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

#ifndef TUNNELQNN_TDAF_H_
#define TUNNELQNN_TDAF_H_

#include <span>
#include <vector>

namespace tunnelqnn {
namespace tdaf {

// Tunnel-diode I-V model parameters. Voltages in volts, currents in amperes.
// Defaults are the diode constants used throughout the project; b already
// carries the x10 enlargement relative to the measured device.
struct TdafParams {
  double a = 0.0039;      // current scale (A)
  double b = 0.5;         // voltage offset (V)
  double c = 0.0874;      // peak-position voltage (V)
  double d = 0.0073;      // arctan width (V)
  double n1 = 0.0352;     // ideality factor
  double n2 = 0.0031;     // ideality factor
  double h = 0.0367;      // excess-current scale (A)
  double temperature = 300.0;         // K
  double charge = 1.602176634e-19;    // C (CODATA 2018, exact)
  double boltzmann = 1.380649e-23;    // J/K (CODATA 2018, exact)
  // Output scale when used as a network activation. The raw current peaks
  // near 0.07 A; 25 brings it to order one.
  double gain = 25.0;

  // Throws std::invalid_argument unless d, T, a, h > 0 and the derived
  // coefficients are finite with eta, gamma > 0.
  void Validate() const;
};

struct Coefficients {
  double alpha;  // q(b - c) / (kB T), dimensionless
  double eta;    // q n1 / (kB T), 1/V
  double gamma;  // q n2 / (kB T), 1/V
};

// Rejects T <= 0. Does not enforce eta, gamma > 0; see TdafParams::Validate.
Coefficients DeriveCoefficients(const TdafParams& params);

// I(V) = J1(V) + J2(V) with
//   J1 = a * ln((1 + e^{alpha + eta V}) / (1 + e^{alpha - eta V}))
//          * (pi/2 + atan((c - n1 V) / d))
//   J2 = h * (e^{gamma V} - 1).
// The log ratio is evaluated as softplus(alpha + eta V) - softplus(alpha - eta V)
// so it stays finite for large |V|.
class TunnelDiode {
 public:
  explicit TunnelDiode(const TdafParams& params = {});

  // Both throw std::invalid_argument on non-finite input.
  double Current(double voltage) const;
  double Conductance(double voltage) const;  // dI/dV

  const TdafParams& params() const { return params_; }
  const Coefficients& coefficients() const { return coeff_; }

 private:
  TdafParams params_;
  Coefficients coeff_;
};

double TdafCurrent(double voltage, const TdafParams& params);
double TdafDerivative(double voltage, const TdafParams& params);

// Elementwise gain * I(x_i) and gain * I'(x_i).
std::vector<double> TdafActivate(std::span<const double> x,
                                 const TdafParams& params);
std::vector<double> TdafActivateGrad(std::span<const double> x,
                                     const TdafParams& params);

// ln(1 + e^z) without overflow.
double Softplus(double z);
// 1 / (1 + e^{-z}) without overflow.
double Logistic(double z);

}  // namespace tdaf
}  // namespace tunnelqnn

#endif  // TUNNELQNN_TDAF_H_
