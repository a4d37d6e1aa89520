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

#include "tunnelqnn/data.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tunnelqnn/csv.h"
#include "tunnelqnn/rng.h"

namespace tunnelqnn {
namespace data {

namespace {

Dataset Subset(const Dataset& src, const std::vector<std::size_t>& indices) {
  Dataset out;
  out.shift = src.shift;
  out.noise_sigma = src.noise_sigma;
  out.seed = src.seed;
  out.points.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (std::size_t i : indices) {
    out.points.push_back(src.points[i]);
    out.labels.push_back(src.labels[i]);
  }
  return out;
}

}  // namespace

std::array<std::size_t, kNumClasses> Dataset::ClassCounts() const {
  std::array<std::size_t, kNumClasses> counts{};
  for (int label : labels) ++counts.at(static_cast<std::size_t>(label));
  return counts;
}

Point HalfCirclePoint(int label, double t, double shift) {
  const double y = (label % 2) == 1 ? 0.5 - std::sin(t) : std::sin(t);
  return {std::cos(t) + label * shift, y};
}

Dataset GenerateHalfCircles(std::size_t n, double shift, double noise_sigma,
                            std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("data: need n >= 3 samples");
  if (!std::isfinite(shift)) throw std::invalid_argument("data: shift not finite");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw std::invalid_argument("data: noise_sigma must be >= 0");
  }

  std::mt19937_64 rng = MakeRng(seed, RngStream::kData);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::normal_distribution<double> noise(0.0, 1.0);

  Dataset ds;
  ds.shift = shift;
  ds.noise_sigma = noise_sigma;
  ds.seed = seed;
  ds.points.reserve(n);
  ds.labels.reserve(n);
  for (int k = 0; k < kNumClasses; ++k) {
    const std::size_t count = (n - static_cast<std::size_t>(k) + 2) / 3;
    for (std::size_t i = 0; i < count; ++i) {
      const double t = angle(rng);
      const double nx = noise_sigma * noise(rng);
      const double ny = noise_sigma * noise(rng);
      const Point base = HalfCirclePoint(k, t, shift);
      ds.points.push_back({base.x + nx, base.y + ny});
      ds.labels.push_back(k);
    }
  }
  return ds;
}

std::pair<Dataset, Dataset> Split(const Dataset& dataset, double train_fraction,
                                  std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("data: train_fraction must be in (0, 1)");
  }
  const std::size_t n = dataset.size();
  const auto target = static_cast<std::size_t>(
      std::llround(static_cast<double>(n) * train_fraction));
  if (target == 0 || target == n) {
    throw std::invalid_argument("data: split leaves one side empty");
  }

  std::array<std::vector<std::size_t>, kNumClasses> by_class;
  for (std::size_t i = 0; i < n; ++i) {
    by_class.at(static_cast<std::size_t>(dataset.labels[i])).push_back(i);
  }

  // Largest-remainder apportionment of the train quota across classes.
  std::array<std::size_t, kNumClasses> quota{};
  std::array<double, kNumClasses> remainder{};
  std::size_t assigned = 0;
  for (int k = 0; k < kNumClasses; ++k) {
    const double exact = static_cast<double>(by_class[k].size()) * train_fraction;
    quota[k] = static_cast<std::size_t>(std::floor(exact));
    remainder[k] = exact - std::floor(exact);
    assigned += quota[k];
  }
  std::array<int, kNumClasses> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; assigned < target; ++i) {
    const int k = order[i % kNumClasses];
    if (quota[k] < by_class[k].size()) {
      ++quota[k];
      ++assigned;
    }
  }

  std::mt19937_64 rng = MakeRng(seed, RngStream::kSplit);
  std::vector<std::size_t> train_idx, test_idx;
  for (int k = 0; k < kNumClasses; ++k) {
    std::vector<std::size_t>& idx = by_class[k];
    std::shuffle(idx.begin(), idx.end(), rng);
    train_idx.insert(train_idx.end(), idx.begin(), idx.begin() + quota[k]);
    test_idx.insert(test_idx.end(), idx.begin() + quota[k], idx.end());
  }
  std::shuffle(train_idx.begin(), train_idx.end(), rng);
  std::shuffle(test_idx.begin(), test_idx.end(), rng);
  return {Subset(dataset, train_idx), Subset(dataset, test_idx)};
}

ScalingStats FitScaling(const Dataset& train) {
  if (train.size() == 0) throw std::invalid_argument("data: empty train set");
  ScalingStats stats;
  const double count = static_cast<double>(train.size());
  for (int axis = 0; axis < 2; ++axis) {
    double sum = 0.0;
    for (const Point& p : train.points) sum += axis == 0 ? p.x : p.y;
    const double mean = sum / count;
    double sq = 0.0;
    for (const Point& p : train.points) {
      const double d = (axis == 0 ? p.x : p.y) - mean;
      sq += d * d;
    }
    const double stddev = std::sqrt(sq / count);
    if (!(stddev > 0.0)) {
      throw std::invalid_argument("data: zero-variance coordinate " +
                                  std::string(axis == 0 ? "x" : "y"));
    }
    stats.mean[axis] = mean;
    stats.stddev[axis] = stddev;
  }
  return stats;
}

Dataset ApplyScaling(const Dataset& dataset, const ScalingStats& stats) {
  Dataset out = dataset;
  for (Point& p : out.points) p = stats.Apply(p);
  return out;
}

Standardized Standardize(const Dataset& train, const Dataset& test) {
  const ScalingStats stats = FitScaling(train);
  return {ApplyScaling(train, stats), ApplyScaling(test, stats), stats};
}

void WriteCsv(std::ostream& out, const Dataset& dataset) {
  out << "x,y,label\n";
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    out << csv::FormatDouble(dataset.points[i].x) << ','
        << csv::FormatDouble(dataset.points[i].y) << ',' << dataset.labels[i]
        << '\n';
  }
}

Dataset ReadCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("data: empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,y,label") {
    throw std::invalid_argument("data: expected header 'x,y,label'");
  }
  Dataset ds;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = csv::SplitFields(line);
    if (fields.size() != 3) {
      throw std::invalid_argument("data: line " + std::to_string(line_no) +
                                  " needs 3 fields");
    }
    const long long label = csv::ParseInt(fields[2]);
    if (label < 0 || label >= kNumClasses) {
      throw std::invalid_argument("data: line " + std::to_string(line_no) +
                                  " has label outside {0,1,2}");
    }
    ds.points.push_back({csv::ParseDouble(fields[0]), csv::ParseDouble(fields[1])});
    ds.labels.push_back(static_cast<int>(label));
  }
  return ds;
}

}  // namespace data
}  // namespace tunnelqnn
