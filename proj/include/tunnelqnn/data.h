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

#ifndef TUNNELQNN_DATA_H_
#define TUNNELQNN_DATA_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace tunnelqnn {
namespace data {

// Class indices: 0 = P (purple), 1 = C (cyan), 2 = R (red).
inline constexpr int kNumClasses = 3;

struct Point {
  double x;
  double y;
};

struct Dataset {
  std::vector<Point> points;
  std::vector<int> labels;
  double shift = 0.0;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;

  std::size_t size() const { return points.size(); }
  std::array<std::size_t, kNumClasses> ClassCounts() const;
};

// Noise-free point of class `label` at arc parameter t in [0, pi].
Point HalfCirclePoint(int label, double t, double shift);

// Three interleaved half-circles. Class k has ceil((n - k) / 3) points on
//   (cos t + k * shift, sin t)        for even k,
//   (cos t + k * shift, 0.5 - sin t)  for odd k,
// with t ~ U[0, pi] and N(0, noise_sigma^2) added to both coordinates.
// Points are emitted class by class. Throws on n < 3 or noise_sigma < 0.
Dataset GenerateHalfCircles(std::size_t n, double shift, double noise_sigma,
                            std::uint64_t seed);

// Stratified split: each class is shuffled and cut so the total train size is
// round(n * train_fraction), distributing remainders by largest fraction.
// Throws unless 0 < train_fraction < 1 and both sides are non-empty.
std::pair<Dataset, Dataset> Split(const Dataset& dataset, double train_fraction,
                                  std::uint64_t seed);

struct ScalingStats {
  std::array<double, 2> mean{0.0, 0.0};
  std::array<double, 2> stddev{1.0, 1.0};  // population (ddof = 0)

  Point Apply(Point p) const {
    return {(p.x - mean[0]) / stddev[0], (p.y - mean[1]) / stddev[1]};
  }
};

struct Standardized {
  Dataset train;
  Dataset test;
  ScalingStats stats;
};

// z-scores both sets with statistics of `train` only. Throws on an empty
// train set or a zero-variance coordinate.
Standardized Standardize(const Dataset& train, const Dataset& test);
ScalingStats FitScaling(const Dataset& train);
Dataset ApplyScaling(const Dataset& dataset, const ScalingStats& stats);

// CSV with header "x,y,label"; doubles in shortest round-trip form.
void WriteCsv(std::ostream& out, const Dataset& dataset);
Dataset ReadCsv(std::istream& in);

}  // namespace data
}  // namespace tunnelqnn

#endif  // TUNNELQNN_DATA_H_
