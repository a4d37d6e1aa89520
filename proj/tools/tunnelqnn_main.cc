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

// Command-line driver: data generation, the diode curve, training,
// evaluation, decision boundaries, the variant comparison and both sweeps.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tunnelqnn/config_io.h"
#include "tunnelqnn/csv.h"
#include "tunnelqnn/data.h"
#include "tunnelqnn/harness.h"
#include "tunnelqnn/model.h"

namespace {

using nlohmann::json;
using tunnelqnn::csv::WriteFile;
namespace harness = tunnelqnn::harness;
namespace model = tunnelqnn::model;
namespace config_io = tunnelqnn::config_io;

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::string config_path;
};

struct Overrides {
  std::optional<double> shift;
  std::optional<int> layers;
  std::optional<int> grid;
  std::optional<int> epochs;
  std::optional<std::string> variant;
  std::optional<std::string> wiring;
};

void AddCommon(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--seed", flags.seed, "Run seed");
  cmd->add_option("--out-dir", flags.out_dir, "Output directory");
  cmd->add_option("--config", flags.config_path, "JSON TrainConfig file");
}

harness::TrainConfig LoadConfig(const CommonFlags& flags, const Overrides& o) {
  harness::TrainConfig cfg;
  if (!flags.config_path.empty()) {
    cfg = config_io::TrainConfigFromJson(
        tunnelqnn::csv::ReadFile(flags.config_path));
  }
  if (flags.seed) cfg.seed = *flags.seed;
  if (o.shift) cfg.data.shift = *o.shift;
  if (o.layers) cfg.model.quantum_layers = *o.layers;
  if (o.grid) cfg.grid = *o.grid;
  if (o.epochs) cfg.epochs = *o.epochs;
  if (o.variant) cfg.model.variant = model::ParseVariant(*o.variant);
  if (o.wiring) cfg.model.wiring = model::ParseWiring(*o.wiring);
  cfg.model.seed = cfg.seed;
  cfg.Validate();
  return cfg;
}

std::string Path(const CommonFlags& flags, const std::string& name) {
  return (std::filesystem::path(flags.out_dir) / name).string();
}

json ConfusionJson(const harness::Confusion& c) {
  json rows = json::array();
  for (const auto& row : c) rows.push_back(row);
  return rows;
}

json ConfigJson(const harness::TrainConfig& cfg) {
  return json::parse(config_io::TrainConfigToJson(cfg));
}

template <typename T>
std::vector<T> ParseList(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if constexpr (std::is_same_v<T, double>) {
      out.push_back(tunnelqnn::csv::ParseDouble(item));
    } else if constexpr (std::is_same_v<T, int>) {
      out.push_back(static_cast<int>(tunnelqnn::csv::ParseInt(item)));
    } else {
      out.push_back(item);
    }
  }
  if (out.empty()) throw std::invalid_argument("empty list '" + text + "'");
  return out;
}

void WriteVariantRun(const CommonFlags& flags, const std::string& prefix,
                     const harness::MetricsLog& log,
                     const harness::EvalResult& test,
                     const harness::BoundaryGrid& grid) {
  WriteFile(Path(flags, prefix + "metrics.csv"), harness::MetricsCsv(log));
  WriteFile(Path(flags, prefix + "confusion.csv"),
            harness::ConfusionCsv(test.confusion));
  WriteFile(Path(flags, prefix + "boundary.csv"), harness::BoundaryCsv(grid));
}

void PrintRuntime(const char* command, double seconds) {
  std::cout << command << ": done in " << seconds << " s\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid quantum-classical network with a tunnel-diode activation"};
  app.require_subcommand(1);

  CommonFlags flags;
  Overrides ov;

  auto* gen = app.add_subcommand("gen-data", "Write the half-circles dataset");
  AddCommon(gen, flags);
  std::size_t gen_n = 2000;
  double gen_sigma = 0.1;
  gen->add_option("--n", gen_n, "Sample count");
  gen->add_option("--shift", ov.shift, "Horizontal shift between arcs");
  gen->add_option("--sigma", gen_sigma, "Gaussian noise std");

  auto* iv = app.add_subcommand("iv-curve", "Write V,I,dIdV of the diode");
  AddCommon(iv, flags);
  double v_min = -1.0, v_max = 5.0;
  int iv_points = 1001;
  iv->add_option("--vmin", v_min);
  iv->add_option("--vmax", v_max);
  iv->add_option("--points", iv_points);

  auto* train = app.add_subcommand("train", "Train one model");
  AddCommon(train, flags);
  train->add_option("--variant", ov.variant, "TunnElQNN | ReLUQNN | ClassicalTDAF");
  train->add_option("--wiring", ov.wiring, "parallel_blocks | projected_single");
  train->add_option("--layers", ov.layers, "Entangler layers per block");
  train->add_option("--shift", ov.shift);
  train->add_option("--epochs", ov.epochs);
  train->add_option("--grid", ov.grid, "Boundary resolution per axis");

  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint");
  AddCommon(eval, flags);
  std::string model_path;
  std::string data_path;
  eval->add_option("--model", model_path, "Checkpoint (model.json)")->required();
  eval->add_option("--data", data_path,
                   "Raw x,y,label CSV; defaults to the checkpoint's test split");

  auto* boundary = app.add_subcommand("boundary", "Decision boundary of a checkpoint");
  AddCommon(boundary, flags);
  boundary->add_option("--model", model_path, "Checkpoint (model.json)")->required();
  boundary->add_option("--grid", ov.grid);

  auto* compare = app.add_subcommand("compare", "TunnElQNN vs ReLUQNN");
  AddCommon(compare, flags);
  compare->add_option("--layers", ov.layers);
  compare->add_option("--shift", ov.shift);
  compare->add_option("--epochs", ov.epochs);
  compare->add_option("--grid", ov.grid);

  auto* sweep_depth = app.add_subcommand("sweep-depth", "Accuracy vs entangler layers");
  AddCommon(sweep_depth, flags);
  std::string depth_list = "1,2,3,4,5";
  int trials = 5;
  sweep_depth->add_option("--layers", depth_list, "Comma-separated layer counts");
  sweep_depth->add_option("--trials", trials);
  sweep_depth->add_option("--shift", ov.shift, "Defaults to 1.0 without --config");
  sweep_depth->add_option("--epochs", ov.epochs);

  auto* sweep_shift = app.add_subcommand("sweep-shift", "Accuracy vs class overlap");
  AddCommon(sweep_shift, flags);
  std::string shift_list = "0.2,1,3";
  std::string variant_list = "TunnElQNN,ClassicalTDAF";
  int shift_trials = 1;
  sweep_shift->add_option("--shifts", shift_list);
  sweep_shift->add_option("--variant", variant_list, "Comma-separated variants");
  sweep_shift->add_option("--trials", shift_trials);
  sweep_shift->add_option("--layers", ov.layers);
  sweep_shift->add_option("--epochs", ov.epochs);
  sweep_shift->add_option("--grid", ov.grid);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*gen) {
      const std::uint64_t seed = flags.seed.value_or(harness::TrainConfig{}.seed);
      const auto ds = tunnelqnn::data::GenerateHalfCircles(
          gen_n, ov.shift.value_or(1.5), gen_sigma, seed);
      std::ostringstream out;
      tunnelqnn::data::WriteCsv(out, ds);
      WriteFile(Path(flags, "data.csv"), out.str());
    } else if (*iv) {
      WriteFile(Path(flags, "iv_curve.csv"),
                harness::IvCurveCsv(v_min, v_max, iv_points));
    } else if (*train) {
      const auto cfg = LoadConfig(flags, ov);
      const auto r = harness::Train(cfg);
      const auto grid = harness::DecisionBoundary(
          r.model, r.data.stats, harness::DataBoundingBox(r.data.raw), cfg.grid);
      WriteVariantRun(flags, "", r.log, r.test, grid);
      WriteFile(Path(flags, "model.json"),
                config_io::SerializeCheckpoint(cfg, r.data.stats, r.model));
      const json result{
          {"command", "train"},
          {"variant", model::VariantName(cfg.model.variant)},
          {"final_train_accuracy", r.log.epochs.back().train_acc},
          {"final_train_loss", r.log.epochs.back().loss},
          {"test_accuracy", r.test.accuracy},
          {"confusion", ConfusionJson(r.test.confusion)},
          {"num_params", r.model.num_params()},
          {"config", ConfigJson(cfg)}};
      WriteFile(Path(flags, "result.json"), result.dump(2) + "\n");
      PrintRuntime("train", r.log.wall_seconds);
    } else if (*eval) {
      const std::string text = tunnelqnn::csv::ReadFile(model_path);
      const auto cp = config_io::ParseCheckpoint(text);
      const auto net = config_io::RestoreModel(text);
      tunnelqnn::data::Dataset scaled;
      if (data_path.empty()) {
        scaled = harness::PrepareData(cp.config.data, cp.config.seed).test;
      } else {
        std::istringstream in(tunnelqnn::csv::ReadFile(data_path));
        scaled = tunnelqnn::data::ApplyScaling(tunnelqnn::data::ReadCsv(in),
                                               cp.stats);
      }
      if (scaled.size() == 0) throw std::invalid_argument("eval: empty dataset");
      const auto res = harness::Evaluate(net, scaled);
      WriteFile(Path(flags, "confusion.csv"), harness::ConfusionCsv(res.confusion));
      const json result{{"command", "eval"},
                        {"accuracy", res.accuracy},
                        {"samples", scaled.size()},
                        {"confusion", ConfusionJson(res.confusion)},
                        {"config", ConfigJson(cp.config)}};
      WriteFile(Path(flags, "result.json"), result.dump(2) + "\n");
      std::cout << "accuracy " << res.accuracy << "\n";
    } else if (*boundary) {
      const std::string text = tunnelqnn::csv::ReadFile(model_path);
      const auto cp = config_io::ParseCheckpoint(text);
      const auto net = config_io::RestoreModel(text);
      const auto raw = harness::PrepareData(cp.config.data, cp.config.seed).raw;
      const auto grid = harness::DecisionBoundary(
          net, cp.stats, harness::DataBoundingBox(raw), ov.grid.value_or(cp.config.grid));
      WriteFile(Path(flags, "boundary.csv"), harness::BoundaryCsv(grid));
    } else if (*compare) {
      const auto cfg = LoadConfig(flags, ov);
      const auto report = harness::Compare(cfg);
      json runs = json::array();
      double seconds = 0.0;
      for (const auto& run : report.runs) {
        const std::string name = model::VariantName(run.variant);
        WriteVariantRun(flags, name + "/", run.log, run.test, run.boundary);
        runs.push_back({{"variant", name},
                        {"final_train_accuracy", run.log.epochs.back().train_acc},
                        {"test_accuracy", run.test.accuracy},
                        {"confusion", ConfusionJson(run.test.confusion)}});
        seconds += run.log.wall_seconds;
      }
      const json result{{"command", "compare"}, {"runs", runs},
                        {"config", ConfigJson(cfg)}};
      WriteFile(Path(flags, "result.json"), result.dump(2) + "\n");
      PrintRuntime("compare", seconds);
    } else if (*sweep_depth) {
      if (!ov.shift && flags.config_path.empty()) ov.shift = 1.0;
      const auto cfg = LoadConfig(flags, ov);
      const auto points =
          harness::DepthSweep(cfg, ParseList<int>(depth_list), trials);
      WriteFile(Path(flags, "sweep.csv"), harness::SweepCsv(points, false));
      WriteFile(Path(flags, "trials.csv"), harness::TrialsCsv(points));
      json rows = json::array();
      for (const auto& p : points) {
        rows.push_back({{"layers", p.knob},
                        {"mean_accuracy", p.mean_accuracy},
                        {"std_accuracy", p.std_accuracy}});
      }
      const json result{{"command", "sweep-depth"}, {"trials", trials},
                        {"points", rows}, {"config", ConfigJson(cfg)}};
      WriteFile(Path(flags, "result.json"), result.dump(2) + "\n");
    } else if (*sweep_shift) {
      const auto cfg = LoadConfig(flags, ov);
      std::vector<model::Variant> variants;
      for (const auto& v : ParseList<std::string>(variant_list)) {
        variants.push_back(model::ParseVariant(v));
      }
      const auto res = harness::ShiftSweep(cfg, ParseList<double>(shift_list),
                                           variants, shift_trials);
      WriteFile(Path(flags, "sweep.csv"), harness::SweepCsv(res.points, true));
      WriteFile(Path(flags, "trials.csv"), harness::TrialsCsv(res.points));
      json rows = json::array();
      for (std::size_t i = 0; i < res.points.size(); ++i) {
        const auto& p = res.points[i];
        const std::string name = "boundary_" + model::VariantName(p.variant) +
                                 "_shift" + tunnelqnn::csv::FormatDouble(p.knob) +
                                 ".csv";
        WriteFile(Path(flags, name), harness::BoundaryCsv(res.boundaries[i]));
        rows.push_back({{"shift", p.knob},
                        {"variant", model::VariantName(p.variant)},
                        {"mean_accuracy", p.mean_accuracy},
                        {"std_accuracy", p.std_accuracy},
                        {"boundary", name}});
      }
      const json result{{"command", "sweep-shift"}, {"trials", shift_trials},
                        {"points", rows}, {"config", ConfigJson(cfg)}};
      WriteFile(Path(flags, "result.json"), result.dump(2) + "\n");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
