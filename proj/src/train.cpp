#include <algorithm>
#include <chrono>
#include <cmath>

#include "dcm/errors.hpp"
#include "dcm/optim.hpp"

namespace dcm {

std::string to_string(Phase p) { return p == Phase::Adam ? "adam" : "lbfgs"; }

std::string to_string(TrainStatus s) {
  switch (s) {
    case TrainStatus::Completed: return "completed";
    case TrainStatus::Converged: return "converged";
    case TrainStatus::LineSearchFailed: return "line_search_failed";
    case TrainStatus::NonFinite: return "non_finite";
  }
  return "unknown";
}

std::size_t TrainHistory::iterations(Phase p) const {
  std::size_t n = 0;
  for (const auto& r : records)
    if (r.phase == p && r.iteration > 0) ++n;
  return n;
}

namespace {

bool finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

TrainResult train(NetworkParams params, const CollocationLoss& loss, const AdamConfig& adam,
                  const LbfgsConfig& lbfgs, const TrainObserver& observer) {
  adam.validate();
  lbfgs.validate();
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };

  TrainResult out{params, {}, TrainStatus::Completed};
  auto push = [&](std::size_t iter, Phase phase, const LossReport& rep, std::span<const double> theta) {
    IterationRecord rec{iter, phase, rep, elapsed()};
    out.history.records.push_back(rec);
    if (observer) observer(rec, theta);
  };

  std::vector<double> grad(params.size());
  std::size_t iter = 0;

  if (adam.max_iters > 0) {
    AdamState state(params.size());
    for (std::size_t t = 0;; ++t) {
      const LossReport rep = loss.evaluate(params, grad);
      if (!std::isfinite(rep.total) || !finite(grad)) {
        out.status = TrainStatus::NonFinite;
        return out;
      }
      push(iter, Phase::Adam, rep, params.values());
      out.params = params;
      if (t == adam.max_iters) break;
      adam_step(state, grad, adam, params.values());
      ++iter;
    }
  }

  if (lbfgs.max_iters > 0) {
    NetworkParams work = params;
    LossReport last_report;
    std::vector<double> last_theta;
    const Objective objective = [&](std::span<const double> theta, std::span<double> g) {
      work.assign(theta);
      last_report = loss.evaluate(work, g);
      last_theta.assign(theta.begin(), theta.end());
      return last_report.total;
    };
    const std::size_t base = iter;
    bool initial_recorded = adam.max_iters > 0;
    const LbfgsObserver on_step = [&](std::size_t k, std::span<const double> theta, double) {
      if (!std::equal(theta.begin(), theta.end(), last_theta.begin(), last_theta.end())) {
        work.assign(theta);
        last_report = loss.evaluate(work);
      }
      push(base + k, Phase::Lbfgs, last_report, theta);
    };

    if (!initial_recorded) {
      const LossReport rep = loss.evaluate(params);
      if (!std::isfinite(rep.total)) {
        out.status = TrainStatus::NonFinite;
        return out;
      }
      push(0, Phase::Lbfgs, rep, params.values());
    }

    std::vector<double> theta0(params.values().begin(), params.values().end());
    const LbfgsResult res = lbfgs_minimize(objective, std::move(theta0), lbfgs, on_step);
    if (res.status == LbfgsStatus::NonFinite) {
      out.status = TrainStatus::NonFinite;
      return out;
    }
    out.params.assign(res.theta);
    if (res.status == LbfgsStatus::Converged) out.status = TrainStatus::Converged;
    if (res.status == LbfgsStatus::LineSearchFailed) out.status = TrainStatus::LineSearchFailed;
  }
  return out;
}

TrainResult train(NetworkParams params, const MaterialModel& model, const CollocationSet& set,
                  const AdamConfig& adam, const LbfgsConfig& lbfgs, const TrainObserver& observer) {
  const CollocationLoss loss(model, set);
  return train(std::move(params), loss, adam, lbfgs, observer);
}

}  // namespace dcm
