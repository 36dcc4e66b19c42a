#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dcm/loss_kernel.hpp"
#include "dcm/network.hpp"
#include "dcm/physics.hpp"

namespace dcm {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t max_iters = 1000;

  /// Throws std::invalid_argument when out of range.
  void validate() const;
};

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  std::size_t t = 0;

  explicit AdamState(std::size_t n = 0) : m(n, 0.0), v(n, 0.0) {}
};

/// One bias-corrected Adam update of `theta` in place. Throws NumericalError
/// if any gradient entry is non-finite (state and theta are left untouched).
void adam_step(AdamState& state, std::span<const double> grad, const AdamConfig& cfg, std::span<double> theta);

struct LbfgsConfig {
  std::size_t memory = 10;
  std::size_t max_iters = 2000;
  double gradient_tolerance = 1e-9;
  double c1 = 1e-4;
  double c2 = 0.9;

  void validate() const;
};

/// f(theta, grad) -> value; must fill grad.
using Objective = std::function<double(std::span<const double> theta, std::span<double> grad)>;

enum class LbfgsStatus { Converged, MaxIterations, LineSearchFailed, NonFinite };

std::string to_string(LbfgsStatus s);

struct LbfgsResult {
  std::vector<double> theta;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  LbfgsStatus status = LbfgsStatus::MaxIterations;
  std::vector<double> values;  // objective after each accepted step, starting with f(theta0)
};

/// Called after each accepted step with (iteration, theta, f(theta)).
using LbfgsObserver = std::function<void(std::size_t, std::span<const double>, double)>;

/// Limited-memory BFGS with a strong-Wolfe line search (bracketing + cubic
/// interpolation zoom, at most 40 trial steps). A failed line search returns
/// the best point found so far with status LineSearchFailed.
LbfgsResult lbfgs_minimize(const Objective& f, std::vector<double> theta0, const LbfgsConfig& cfg,
                           const LbfgsObserver& observer = {});

enum class Phase { Adam, Lbfgs };

std::string to_string(Phase p);

struct IterationRecord {
  std::size_t iteration = 0;
  Phase phase = Phase::Adam;
  LossReport loss;
  double elapsed_ms = 0.0;  // since training start
};

struct TrainHistory {
  std::vector<IterationRecord> records;

  std::size_t iterations(Phase p) const;
};

enum class TrainStatus { Completed, Converged, LineSearchFailed, NonFinite };

std::string to_string(TrainStatus s);

struct TrainResult {
  NetworkParams params;  // last finite state
  TrainHistory history;
  TrainStatus status = TrainStatus::Completed;
};

/// Observer hook for training; receives every history record with the
/// parameters it was evaluated at.
using TrainObserver = std::function<void(const IterationRecord&, std::span<const double> theta)>;

/// Full-batch Adam for adam.max_iters steps, then L-BFGS. Record 0 is the
/// initial loss; record i is the loss after the i-th step.
TrainResult train(NetworkParams params, const CollocationLoss& loss, const AdamConfig& adam,
                  const LbfgsConfig& lbfgs, const TrainObserver& observer = {});

TrainResult train(NetworkParams params, const MaterialModel& model, const CollocationSet& set,
                  const AdamConfig& adam, const LbfgsConfig& lbfgs, const TrainObserver& observer = {});

}  // namespace dcm
