#include "dcm/optim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "dcm/errors.hpp"

namespace dcm {

void AdamConfig::validate() const {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("adam.learning_rate: must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw std::invalid_argument("adam.beta1: must lie in [0,1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw std::invalid_argument("adam.beta2: must lie in [0,1)");
  if (!(epsilon > 0.0)) throw std::invalid_argument("adam.epsilon: must be positive");
}

void LbfgsConfig::validate() const {
  if (memory < 1) throw std::invalid_argument("lbfgs.memory: must be at least 1");
  if (!(c1 > 0.0 && c1 < c2 && c2 < 1.0)) throw std::invalid_argument("lbfgs.c1, lbfgs.c2: require 0 < c1 < c2 < 1");
  if (!(gradient_tolerance >= 0.0)) throw std::invalid_argument("lbfgs.gradient_tolerance: must be >= 0");
}

void adam_step(AdamState& state, std::span<const double> grad, const AdamConfig& cfg, std::span<double> theta) {
  if (grad.size() != theta.size() || state.m.size() != theta.size()) {
    throw std::invalid_argument("adam: gradient, state and parameter sizes differ");
  }
  for (std::size_t i = 0; i < grad.size(); ++i) {
    if (!std::isfinite(grad[i])) {
      throw NumericalError("adam: non-finite gradient entry at index " + std::to_string(i));
    }
  }
  ++state.t;
  const double t = static_cast<double>(state.t);
  const double bc1 = 1.0 - std::pow(cfg.beta1, t);
  const double bc2 = 1.0 - std::pow(cfg.beta2, t);
  for (std::size_t i = 0; i < grad.size(); ++i) {
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * grad[i];
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * grad[i] * grad[i];
    const double mhat = state.m[i] / bc1;
    const double vhat = state.v[i] / bc2;
    theta[i] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.epsilon);
  }
}

std::string to_string(LbfgsStatus s) {
  switch (s) {
    case LbfgsStatus::Converged: return "converged";
    case LbfgsStatus::MaxIterations: return "max_iterations";
    case LbfgsStatus::LineSearchFailed: return "line_search_failed";
    case LbfgsStatus::NonFinite: return "non_finite";
  }
  return "unknown";
}

namespace {

double dotp(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(std::span<const double> a) { return std::sqrt(dotp(a, a)); }

// Minimizer of the cubic matching values and slopes at a and b.
double cubic_min(double a, double fa, double ga, double b, double fb, double gb) {
  const double d1 = ga + gb - 3.0 * (fa - fb) / (a - b);
  const double disc = d1 * d1 - ga * gb;
  if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double d2 = std::copysign(std::sqrt(disc), b - a);
  return b - (b - a) * (gb + d2 - d1) / (gb - ga + 2.0 * d2);
}

constexpr std::size_t kMaxTrials = 40;

struct Trial {
  double alpha = 0.0;
  double f = 0.0;
  double slope = 0.0;
  std::vector<double> x;
  std::vector<double> g;
};

struct LineSearch {
  const Objective& f;
  const LbfgsConfig& cfg;
  std::span<const double> x0;
  std::span<const double> dir;
  double f0;
  double slope0;
  std::size_t trials = 0;
  Trial best;  // lowest finite value seen

  Trial eval(double alpha) {
    ++trials;
    Trial t;
    t.alpha = alpha;
    t.x.resize(x0.size());
    t.g.resize(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i) t.x[i] = x0[i] + alpha * dir[i];
    t.f = f(t.x, t.g);
    t.slope = dotp(t.g, dir);
    if (!std::isfinite(t.f) || !std::isfinite(t.slope)) {
      t.f = std::numeric_limits<double>::infinity();
    } else if (t.f < best.f) {
      best = t;
    }
    return t;
  }

  bool sufficient(const Trial& t) const { return t.f <= f0 + cfg.c1 * t.alpha * slope0; }
  bool curvature(const Trial& t) const { return std::abs(t.slope) <= -cfg.c2 * slope0; }

  std::optional<Trial> zoom(Trial lo, Trial hi) {
    while (trials < kMaxTrials) {
      const double a = std::min(lo.alpha, hi.alpha), b = std::max(lo.alpha, hi.alpha);
      const double width = b - a;
      if (width <= 1e-16 * std::max(1.0, b)) return std::nullopt;
      double alpha = std::isfinite(hi.f) ? cubic_min(lo.alpha, lo.f, lo.slope, hi.alpha, hi.f, hi.slope)
                                         : std::numeric_limits<double>::quiet_NaN();
      if (!std::isfinite(alpha) || alpha < a + 0.1 * width || alpha > b - 0.1 * width) alpha = 0.5 * (a + b);
      Trial t = eval(alpha);
      if (!sufficient(t) || t.f >= lo.f) {
        hi = std::move(t);
      } else {
        if (curvature(t)) return t;
        if (t.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
        lo = std::move(t);
      }
    }
    return std::nullopt;
  }

  std::optional<Trial> run(double alpha_init) {
    best.f = f0;
    best.alpha = 0.0;
    Trial prev;
    prev.alpha = 0.0;
    prev.f = f0;
    prev.slope = slope0;
    double alpha = alpha_init;
    for (bool first = true; trials < kMaxTrials; first = false) {
      Trial t = eval(alpha);
      if (!sufficient(t) || (!first && t.f >= prev.f)) return zoom(std::move(prev), std::move(t));
      if (curvature(t)) return t;
      if (t.slope >= 0.0) return zoom(std::move(t), std::move(prev));
      prev = std::move(t);
      alpha *= 2.0;
    }
    return std::nullopt;
  }
};

}  // namespace

LbfgsResult lbfgs_minimize(const Objective& f, std::vector<double> theta0, const LbfgsConfig& cfg,
                           const LbfgsObserver& observer) {
  cfg.validate();
  const std::size_t n = theta0.size();
  LbfgsResult res;
  res.theta = std::move(theta0);
  std::vector<double> g(n);
  res.value = f(res.theta, g);
  res.evaluations = 1;
  res.values.push_back(res.value);
  if (!std::isfinite(res.value) || !std::all_of(g.begin(), g.end(), [](double v) { return std::isfinite(v); })) {
    res.status = LbfgsStatus::NonFinite;
    return res;
  }

  std::deque<std::vector<double>> S, Y;
  std::deque<double> rho;
  std::vector<double> dir(n), alpha_buf;

  if (norm2(g) <= cfg.gradient_tolerance) {
    res.status = LbfgsStatus::Converged;
    return res;
  }

  for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
    // Two-loop recursion: dir = -H g.
    std::vector<double> q(g);
    alpha_buf.assign(S.size(), 0.0);
    for (std::size_t i = S.size(); i-- > 0;) {
      alpha_buf[i] = rho[i] * dotp(S[i], q);
      for (std::size_t k = 0; k < n; ++k) q[k] -= alpha_buf[i] * Y[i][k];
    }
    double gamma = 1.0;
    if (!S.empty()) gamma = dotp(S.back(), Y.back()) / dotp(Y.back(), Y.back());
    for (auto& v : q) v *= gamma;
    for (std::size_t i = 0; i < S.size(); ++i) {
      const double beta = rho[i] * dotp(Y[i], q);
      for (std::size_t k = 0; k < n; ++k) q[k] += (alpha_buf[i] - beta) * S[i][k];
    }
    for (std::size_t k = 0; k < n; ++k) dir[k] = -q[k];

    double slope0 = dotp(g, dir);
    if (!(slope0 < 0.0)) {
      S.clear();
      Y.clear();
      rho.clear();
      for (std::size_t k = 0; k < n; ++k) dir[k] = -g[k];
      slope0 = dotp(g, dir);
    }
    const double alpha0 = S.empty() ? std::min(1.0, 1.0 / norm2(g)) : 1.0;

    LineSearch ls{f, cfg, res.theta, dir, res.value, slope0, 0, {}};
    auto step = ls.run(alpha0);
    res.evaluations += ls.trials;
    if (!step) {
      if (ls.best.f < res.value) {
        res.theta = ls.best.x;
        res.value = ls.best.f;
        res.values.push_back(res.value);
        res.iterations = iter;
        if (observer) observer(iter, res.theta, res.value);
      }
      res.status = LbfgsStatus::LineSearchFailed;
      return res;
    }

    std::vector<double> s(n), y(n);
    for (std::size_t k = 0; k < n; ++k) {
      s[k] = step->x[k] - res.theta[k];
      y[k] = step->g[k] - g[k];
    }
    const double sy = dotp(s, y);
    if (sy > 1e-12 * norm2(s) * norm2(y)) {
      if (S.size() == cfg.memory) {
        S.pop_front();
        Y.pop_front();
        rho.pop_front();
      }
      S.push_back(std::move(s));
      Y.push_back(std::move(y));
      rho.push_back(1.0 / sy);
    }
    res.theta = std::move(step->x);
    g = std::move(step->g);
    res.value = step->f;
    res.values.push_back(res.value);
    res.iterations = iter;
    if (observer) observer(iter, res.theta, res.value);
    if (norm2(g) <= cfg.gradient_tolerance) {
      res.status = LbfgsStatus::Converged;
      return res;
    }
  }
  res.status = LbfgsStatus::MaxIterations;
  return res;
}

}  // namespace dcm
