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

#ifndef TUNNELQNN_TESTS_ORACLES_TDAF_ORACLE_H_
#define TUNNELQNN_TESTS_ORACLES_TDAF_ORACLE_H_

// 50-digit evaluation of the diode current straight from its closed form.
// Shares no code with src/tdaf.cc.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace tunnelqnn {
namespace oracle {

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

struct DiodeConstants {
  HighPrecision a{"0.0039"}, b{"0.5"}, c{"0.0874"}, d{"0.0073"};
  HighPrecision n1{"0.0352"}, n2{"0.0031"}, h{"0.0367"};
  HighPrecision temperature{"300"};
  HighPrecision charge{"1.602176634e-19"};
  HighPrecision boltzmann{"1.380649e-23"};

  HighPrecision alpha() const { return charge * (b - c) / (boltzmann * temperature); }
  HighPrecision eta() const { return charge * n1 / (boltzmann * temperature); }
  HighPrecision gamma() const { return charge * n2 / (boltzmann * temperature); }
};

inline HighPrecision DiodeCurrent(const HighPrecision& v,
                                  const DiodeConstants& k = {}) {
  using boost::multiprecision::atan;
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  const HighPrecision pi = boost::math::constants::pi<HighPrecision>();
  const HighPrecision ratio =
      (1 + exp(k.alpha() + k.eta() * v)) / (1 + exp(k.alpha() - k.eta() * v));
  const HighPrecision j1 = k.a * log(ratio) * (pi / 2 + atan((k.c - k.n1 * v) / k.d));
  const HighPrecision j2 = k.h * (exp(k.gamma() * v) - 1);
  return j1 + j2;
}

// Central difference of DiodeCurrent in 50-digit arithmetic.
inline double DiodeConductanceFd(double v, double step = 1e-8) {
  const HighPrecision hv(v);
  const HighPrecision hs(step);
  return static_cast<double>((DiodeCurrent(hv + hs) - DiodeCurrent(hv - hs)) /
                             (2 * hs));
}

}  // namespace oracle
}  // namespace tunnelqnn

#endif  // TUNNELQNN_TESTS_ORACLES_TDAF_ORACLE_H_
