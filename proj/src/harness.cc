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

#include "tunnelqnn/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tunnelqnn/csv.h"
#include "tunnelqnn/nn.h"
#include "tunnelqnn/rng.h"
#include "tunnelqnn/tdaf.h"

namespace tunnelqnn {
namespace harness {

using Eigen::VectorXd;

namespace {

VectorXd ToVector(const data::Point& p) {
  VectorXd v(2);
  v << p.x, p.y;
  return v;
}

}  // namespace

void TrainConfig::Validate() const {
  if (epochs < 1) throw std::invalid_argument("train: epochs must be >= 1");
  if (batch_size < 1) throw std::invalid_argument("train: batch_size must be >= 1");
  if (!(lr >= 0.0) || !std::isfinite(lr)) {
    throw std::invalid_argument("train: lr must be finite and >= 0");
  }
  if (grid < 2) throw std::invalid_argument("train: grid must be >= 2");
  model.Validate();
}

PreparedData PrepareData(const DataConfig& config, std::uint64_t seed) {
  PreparedData out;
  out.raw = data::GenerateHalfCircles(config.n, config.shift,
                                      config.noise_sigma, seed);
  auto [train, test] = data::Split(out.raw, config.train_fraction, seed);
  data::Standardized scaled = data::Standardize(train, test);
  out.train = std::move(scaled.train);
  out.test = std::move(scaled.test);
  out.stats = scaled.stats;
  return out;
}

TrainResult Train(const TrainConfig& config) {
  config.Validate();
  return TrainOnData(config, PrepareData(config.data, config.seed));
}

TrainResult TrainOnData(const TrainConfig& config, PreparedData prepared) {
  config.Validate();
  const auto start = std::chrono::steady_clock::now();

  model::ModelConfig model_config = config.model;
  model_config.seed = config.seed;
  model::HybridModel net(model_config);

  const data::Dataset& train = prepared.train;
  const std::size_t n = train.size();
  if (n == 0) throw std::invalid_argument("train: empty training set");
  std::vector<VectorXd> inputs;
  inputs.reserve(n);
  for (const data::Point& p : train.points) inputs.push_back(ToVector(p));

  nn::AdamState adam(static_cast<Eigen::Index>(net.num_params()), config.lr);
  VectorXd params = net.GetParameters();
  std::mt19937_64 shuffle_rng = MakeRng(config.seed, RngStream::kShuffle);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  MetricsLog log;
  model::ForwardCache cache;
  const auto batch = static_cast<std::size_t>(config.batch_size);
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    double loss_sum = 0.0;
    std::size_t correct = 0;
    for (std::size_t begin = 0; begin < n; begin += batch) {
      const std::size_t end = std::min(n, begin + batch);
      VectorXd grad = VectorXd::Zero(params.size());
      for (std::size_t i = begin; i < end; ++i) {
        const std::size_t idx = order[i];
        const VectorXd logits = net.Forward(inputs[idx], cache);
        const int label = train.labels[idx];
        const nn::LossAndGrad lg = nn::SoftmaxCrossEntropy(logits, label);
        loss_sum += lg.loss;
        if (model::ArgMax(logits) == label) ++correct;
        grad += net.Backward(cache, lg.d_logits);
      }
      grad /= static_cast<double>(end - begin);
      nn::AdamStep(std::span<double>(params.data(), params.size()),
                   std::span<const double>(grad.data(), grad.size()), adam);
      net.SetParameters(std::span<const double>(params.data(), params.size()));
    }
    log.epochs.push_back({epoch, loss_sum / static_cast<double>(n),
                          static_cast<double>(correct) / static_cast<double>(n)});
  }

  EvalResult test = Evaluate(net, prepared.test);
  log.test_accuracy = test.accuracy;
  log.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return TrainResult{std::move(net), std::move(log), std::move(prepared), test};
}

EvalResult Evaluate(const model::HybridModel& net,
                    const data::Dataset& standardized) {
  EvalResult result;
  if (standardized.size() == 0) return result;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < standardized.size(); ++i) {
    const int truth = standardized.labels[i];
    const int pred = net.Predict(ToVector(standardized.points[i]));
    ++result.confusion.at(static_cast<std::size_t>(truth))
          .at(static_cast<std::size_t>(pred));
    if (truth == pred) ++correct;
  }
  result.accuracy =
      static_cast<double>(correct) / static_cast<double>(standardized.size());
  return result;
}

BoundingBox DataBoundingBox(const data::Dataset& raw, double pad) {
  if (raw.size() == 0) throw std::invalid_argument("boundary: empty dataset");
  BoundingBox box{raw.points[0].x, raw.points[0].x, raw.points[0].y,
                  raw.points[0].y};
  for (const data::Point& p : raw.points) {
    box.x_min = std::min(box.x_min, p.x);
    box.x_max = std::max(box.x_max, p.x);
    box.y_min = std::min(box.y_min, p.y);
    box.y_max = std::max(box.y_max, p.y);
  }
  box.x_min -= pad;
  box.x_max += pad;
  box.y_min -= pad;
  box.y_max += pad;
  return box;
}

BoundaryGrid DecisionBoundary(const model::HybridModel& net,
                              const data::ScalingStats& stats,
                              const BoundingBox& bbox, int resolution) {
  if (resolution < 2) throw std::invalid_argument("boundary: resolution < 2");
  if (!(bbox.x_max > bbox.x_min) || !(bbox.y_max > bbox.y_min) ||
      !std::isfinite(bbox.x_max - bbox.x_min) ||
      !std::isfinite(bbox.y_max - bbox.y_min)) {
    throw std::invalid_argument("boundary: degenerate bounding box");
  }
  BoundaryGrid grid;
  grid.resolution = resolution;
  const double denom = resolution - 1;
  for (int i = 0; i < resolution; ++i) {
    grid.xs.push_back(std::lerp(bbox.x_min, bbox.x_max, i / denom));
    grid.ys.push_back(std::lerp(bbox.y_min, bbox.y_max, i / denom));
  }
  grid.labels.resize(static_cast<std::size_t>(resolution) * resolution);
  for (int row = 0; row < resolution; ++row) {
    for (int col = 0; col < resolution; ++col) {
      const data::Point p = stats.Apply({grid.xs[col], grid.ys[row]});
      grid.labels[static_cast<std::size_t>(row) * resolution + col] =
          net.Predict(ToVector(p));
    }
  }
  return grid;
}

double Mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double SampleStd(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  // Shifted by the first value so identical inputs give exactly zero.
  const double n = static_cast<double>(values.size());
  double sum = 0.0, sq = 0.0;
  for (double v : values) {
    sum += v - values.front();
    sq += (v - values.front()) * (v - values.front());
  }
  return std::sqrt(std::max(0.0, (sq - sum * sum / n) / (n - 1.0)));
}

void ParallelFor(std::size_t count,
                 const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min<std::size_t>(
      count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace {

SweepPoint Summarize(double knob, model::Variant variant,
                     std::vector<TrialResult> trials) {
  std::vector<double> accs;
  for (const TrialResult& t : trials) accs.push_back(t.test_accuracy);
  return {knob, variant, std::move(trials), Mean(accs), SampleStd(accs)};
}

}  // namespace

std::vector<SweepPoint> DepthSweep(const TrainConfig& base,
                                   const std::vector<int>& layer_counts,
                                   int trials) {
  if (trials < 2) throw std::invalid_argument("sweep: trials must be >= 2");
  if (layer_counts.empty()) throw std::invalid_argument("sweep: no layer counts");
  const std::size_t per = static_cast<std::size_t>(trials);
  std::vector<TrialResult> flat(layer_counts.size() * per);
  ParallelFor(flat.size(), [&](std::size_t job) {
    TrainConfig cfg = base;
    cfg.model.quantum_layers = layer_counts[job / per];
    cfg.seed = base.seed + job % per;
    const TrainResult r = Train(cfg);
    flat[job] = {cfg.seed, r.test.accuracy, r.log};
  });
  std::vector<SweepPoint> out;
  for (std::size_t i = 0; i < layer_counts.size(); ++i) {
    out.push_back(Summarize(
        layer_counts[i], base.model.variant,
        std::vector<TrialResult>(flat.begin() + i * per,
                                 flat.begin() + (i + 1) * per)));
  }
  return out;
}

ShiftSweepResult ShiftSweep(const TrainConfig& base,
                            const std::vector<double>& shifts,
                            const std::vector<model::Variant>& variants,
                            int trials) {
  if (trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
  if (shifts.empty() || variants.empty()) {
    throw std::invalid_argument("sweep: need at least one shift and variant");
  }
  const std::size_t per = static_cast<std::size_t>(trials);
  const std::size_t cells = shifts.size() * variants.size();
  std::vector<TrialResult> flat(cells * per);
  std::vector<BoundaryGrid> grids(cells);
  ParallelFor(flat.size(), [&](std::size_t job) {
    const std::size_t cell = job / per;
    const std::size_t trial = job % per;
    TrainConfig cfg = base;
    cfg.data.shift = shifts[cell / variants.size()];
    cfg.model.variant = variants[cell % variants.size()];
    cfg.seed = base.seed + trial;
    const TrainResult r = Train(cfg);
    flat[job] = {cfg.seed, r.test.accuracy, r.log};
    if (trial == 0) {
      grids[cell] = DecisionBoundary(r.model, r.data.stats,
                                     DataBoundingBox(r.data.raw), cfg.grid);
    }
  });
  ShiftSweepResult out;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    out.points.push_back(Summarize(
        shifts[cell / variants.size()], variants[cell % variants.size()],
        std::vector<TrialResult>(flat.begin() + cell * per,
                                 flat.begin() + (cell + 1) * per)));
  }
  out.boundaries = std::move(grids);
  return out;
}

CompareReport Compare(const TrainConfig& config) {
  config.Validate();
  const std::vector<model::Variant> variants = {model::Variant::kTunnElQnn,
                                                model::Variant::kReluQnn};
  const PreparedData prepared = PrepareData(config.data, config.seed);
  CompareReport report;
  report.bbox = DataBoundingBox(prepared.raw);
  report.runs.resize(variants.size());
  ParallelFor(variants.size(), [&](std::size_t i) {
    TrainConfig cfg = config;
    cfg.model.variant = variants[i];
    TrainResult r = TrainOnData(cfg, prepared);
    report.runs[i] = {variants[i], std::move(r.log), r.test,
                      DecisionBoundary(r.model, prepared.stats, report.bbox,
                                       cfg.grid)};
  });
  return report;
}

std::string MetricsCsv(const MetricsLog& log) {
  std::ostringstream out;
  out << "epoch,loss,train_acc\n";
  for (const EpochRecord& e : log.epochs) {
    out << e.epoch << ',' << csv::FormatDouble(e.loss) << ','
        << csv::FormatDouble(e.train_acc) << '\n';
  }
  return out.str();
}

std::string ConfusionCsv(const Confusion& confusion) {
  std::ostringstream out;
  out << "true\\pred,P,C,R\n";
  const char* names[] = {"P", "C", "R"};
  for (std::size_t t = 0; t < 3; ++t) {
    out << names[t];
    for (std::size_t p = 0; p < 3; ++p) out << ',' << confusion[t][p];
    out << '\n';
  }
  return out.str();
}

std::string BoundaryCsv(const BoundaryGrid& grid) {
  std::ostringstream out;
  out << "gx,gy,pred\n";
  for (int row = 0; row < grid.resolution; ++row) {
    for (int col = 0; col < grid.resolution; ++col) {
      out << csv::FormatDouble(grid.xs[col]) << ','
          << csv::FormatDouble(grid.ys[row]) << ',' << grid.at(row, col)
          << '\n';
    }
  }
  return out.str();
}

std::string SweepCsv(const std::vector<SweepPoint>& points, bool with_variant) {
  std::ostringstream out;
  out << (with_variant ? "knob,variant,mean_acc,std_acc\n"
                       : "knob,mean_acc,std_acc\n");
  for (const SweepPoint& p : points) {
    out << csv::FormatDouble(p.knob) << ',';
    if (with_variant) out << model::VariantName(p.variant) << ',';
    out << csv::FormatDouble(p.mean_accuracy) << ','
        << csv::FormatDouble(p.std_accuracy) << '\n';
  }
  return out.str();
}

std::string TrialsCsv(const std::vector<SweepPoint>& points) {
  std::ostringstream out;
  out << "knob,variant,trial,seed,test_acc\n";
  for (const SweepPoint& p : points) {
    for (std::size_t t = 0; t < p.trials.size(); ++t) {
      out << csv::FormatDouble(p.knob) << ',' << model::VariantName(p.variant)
          << ',' << t << ',' << p.trials[t].seed << ','
          << csv::FormatDouble(p.trials[t].test_accuracy) << '\n';
    }
  }
  return out.str();
}

std::string IvCurveCsv(double v_min, double v_max, int points) {
  if (points < 2) throw std::invalid_argument("iv-curve: need >= 2 points");
  if (!(v_max > v_min)) throw std::invalid_argument("iv-curve: empty range");
  const tdaf::TunnelDiode diode;
  std::ostringstream out;
  out << "V,I,dIdV\n";
  for (int i = 0; i < points; ++i) {
    const double v = v_min + (v_max - v_min) * i / (points - 1);
    out << csv::FormatDouble(v) << ',' << csv::FormatDouble(diode.Current(v))
        << ',' << csv::FormatDouble(diode.Conductance(v)) << '\n';
  }
  return out.str();
}

}  // namespace harness
}  // namespace tunnelqnn
