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

#ifndef TUNNELQNN_HARNESS_H_
#define TUNNELQNN_HARNESS_H_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tunnelqnn/data.h"
#include "tunnelqnn/model.h"

namespace tunnelqnn {
namespace harness {

struct DataConfig {
  std::size_t n = 2000;
  double shift = 1.5;
  double noise_sigma = 0.1;
  double train_fraction = 0.8;
};

struct TrainConfig {
  int epochs = 150;
  int batch_size = 128;
  double lr = 0.02;
  std::uint64_t seed = 42;
  model::ModelConfig model;
  DataConfig data;
  int grid = 200;  // decision-boundary resolution per axis

  void Validate() const;
};

struct EpochRecord {
  int epoch;         // 1-based
  double loss;       // mean training cross-entropy over the epoch
  double train_acc;  // fraction of training samples classified correctly
};

struct MetricsLog {
  std::vector<EpochRecord> epochs;
  double test_accuracy = 0.0;
  double wall_seconds = 0.0;
};

using Confusion = std::array<std::array<std::size_t, 3>, 3>;

struct EvalResult {
  double accuracy = 0.0;
  Confusion confusion{};  // confusion[true][predicted]
};

// Raw data plus its standardized split. Every run derives this from
// (DataConfig, seed) alone, so variants trained with one seed share it.
struct PreparedData {
  data::Dataset raw;
  data::Dataset train;  // standardized
  data::Dataset test;   // standardized
  data::ScalingStats stats;
};

PreparedData PrepareData(const DataConfig& config, std::uint64_t seed);

struct TrainResult {
  model::HybridModel model;
  MetricsLog log;
  PreparedData data;
  EvalResult test;
};

// Adam on mean mini-batch cross-entropy. Each epoch reshuffles the training
// set from a dedicated RNG stream and includes the final partial batch.
TrainResult Train(const TrainConfig& config);
TrainResult TrainOnData(const TrainConfig& config, PreparedData prepared);

EvalResult Evaluate(const model::HybridModel& model,
                    const data::Dataset& standardized);

struct BoundingBox {
  double x_min, x_max, y_min, y_max;
};

// Bounding box of raw points padded by `pad` on every side.
BoundingBox DataBoundingBox(const data::Dataset& raw, double pad = 0.5);

// resolution x resolution lattice in raw coordinates. labels is row-major
// with rows along y: labels[row * resolution + col] is the prediction at
// (xs[col], ys[row]).
struct BoundaryGrid {
  int resolution = 0;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<int> labels;

  int at(int row, int col) const { return labels[row * resolution + col]; }
};

BoundaryGrid DecisionBoundary(const model::HybridModel& model,
                              const data::ScalingStats& stats,
                              const BoundingBox& bbox, int resolution);

struct TrialResult {
  std::uint64_t seed;
  double test_accuracy;
  MetricsLog log;
};

struct SweepPoint {
  double knob;
  model::Variant variant;
  std::vector<TrialResult> trials;
  double mean_accuracy;
  double std_accuracy;  // sample standard deviation (n - 1)
};

// For each layer count L, `trials` runs seeded base.seed + trial index.
std::vector<SweepPoint> DepthSweep(const TrainConfig& base,
                                   const std::vector<int>& layer_counts,
                                   int trials);

struct ShiftSweepResult {
  std::vector<SweepPoint> points;      // shift-major, then variant
  std::vector<BoundaryGrid> boundaries;  // trial-0 grid per point
};

ShiftSweepResult ShiftSweep(const TrainConfig& base,
                            const std::vector<double>& shifts,
                            const std::vector<model::Variant>& variants,
                            int trials = 1);

struct VariantReport {
  model::Variant variant;
  MetricsLog log;
  EvalResult test;
  BoundaryGrid boundary;
};

struct CompareReport {
  std::vector<VariantReport> runs;  // TunnElQNN, then ReLUQNN
  BoundingBox bbox;
};

CompareReport Compare(const TrainConfig& config);

double Mean(const std::vector<double>& values);
double SampleStd(const std::vector<double>& values);

// Runs task(0..count-1) on up to hardware_concurrency threads; results keep
// index order regardless of scheduling.
void ParallelFor(std::size_t count, const std::function<void(std::size_t)>& task);

// File bodies.
std::string MetricsCsv(const MetricsLog& log);       // epoch,loss,train_acc
std::string ConfusionCsv(const Confusion& confusion);
std::string BoundaryCsv(const BoundaryGrid& grid);   // gx,gy,pred
// knob,mean_acc,std_acc; a variant column is inserted when requested.
std::string SweepCsv(const std::vector<SweepPoint>& points, bool with_variant);
std::string TrialsCsv(const std::vector<SweepPoint>& points);
// V,I,dIdV in amperes and siemens, `points` samples on [v_min, v_max].
std::string IvCurveCsv(double v_min, double v_max, int points);

}  // namespace harness
}  // namespace tunnelqnn

#endif  // TUNNELQNN_HARNESS_H_
