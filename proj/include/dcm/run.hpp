#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dcm/config.hpp"
#include "dcm/evaluate.hpp"
#include "dcm/optim.hpp"
#include "dcm/physics.hpp"

namespace dcm {

struct RunOptions {
  bool quiet = true;
};

struct RunSummary {
  LossReport final_loss;
  ErrorMetric metric;
  double flux_profile_max_deviation = 0.0;  // max |q_pred - q_exact| / |q_exact| along the profile line
  std::size_t adam_iterations = 0;
  std::size_t lbfgs_iterations = 0;
  TrainStatus status = TrainStatus::Completed;
  double wall_ms = 0.0;
  std::vector<std::string> files;
};

/// Samples, attaches boundary conditions, trains, evaluates and writes
/// config.json, convergence.csv, fields.csv, fields.vtk, params.txt,
/// flux_profile.csv and summary.json into cfg.output_dir.
RunSummary run_train(const RunConfig& cfg, const RunOptions& opts = {});

/// Writes collocation.csv (and config.json) for the configured case.
std::vector<std::string> run_sample(const RunConfig& cfg);

/// Evaluates a stored parameter snapshot against the case oracle.
RunSummary run_evaluate(const RunConfig& cfg, const std::string& params_path, const RunOptions& opts = {});

enum class VaryAxis { Activation, Sampler, Depth, NInterior, NPerFace, Schedule };

VaryAxis parse_vary_axis(std::string_view name);
std::string vary_axis_name(VaryAxis axis);

/// Default variant labels for an axis (all activations, all samplers,
/// depths 1..6, ...).
std::vector<std::string> default_variants(VaryAxis axis);

/// Applies one variant label to a base configuration. Throws ConfigError
/// for labels that do not fit the axis.
RunConfig apply_variant(const RunConfig& base, VaryAxis axis, const std::string& label);

struct MatrixRow {
  std::string variant;
  RunSummary summary;
};

/// Trains every variant and writes comparison.csv into base.output_dir.
/// Throws ConfigError when `variants` is empty.
std::vector<MatrixRow> run_matrix(const RunConfig& base, VaryAxis axis, const std::vector<std::string>& variants,
                                  const RunOptions& opts = {});

/// Trains in memory without touching the file system.
struct TrainedRun {
  NetworkParams params;
  TrainResult result;
  CaseEvaluation evaluation;
  RunSummary summary;
};
TrainedRun train_case(const RunConfig& cfg, const RunOptions& opts = {});

}  // namespace dcm
