#include "dcm/network.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "jet_propagation.hpp"

namespace dcm {

NetworkParams::NetworkParams(std::size_t input_dim, std::span<const std::size_t> hidden_widths,
                             std::size_t output_dim, ActivationKind activation)
    : activation_(activation) {
  if (input_dim != 3 || output_dim != 1) {
    throw std::invalid_argument("network must map R^3 to R (got " + std::to_string(input_dim) +
                                " -> " + std::to_string(output_dim) + ")");
  }
  if (hidden_widths.empty()) throw std::invalid_argument("at least one hidden layer is required");
  if (activation.type == ActivationType::Swish && !(activation.beta > 0.0)) {
    throw std::invalid_argument("swish beta must be positive");
  }
  std::size_t prev = input_dim;
  std::size_t offset = 0;
  auto add_layer = [&](std::size_t rows) {
    if (rows == 0) throw std::invalid_argument("layer widths must be positive");
    LayerShape s{rows, prev, offset, offset + rows * prev};
    offset = s.bias_offset + rows;
    layers_.push_back(s);
    prev = rows;
  };
  for (auto w : hidden_widths) add_layer(w);
  add_layer(output_dim);
  values_.assign(offset, 0.0);
}

std::size_t NetworkParams::max_width() const {
  std::size_t w = input_dim();
  for (const auto& s : layers_) w = std::max(w, s.rows);
  return w;
}

void NetworkParams::assign(std::span<const double> theta) {
  if (theta.size() != values_.size()) {
    throw std::invalid_argument("parameter vector has " + std::to_string(theta.size()) +
                                " entries, network expects " + std::to_string(values_.size()));
  }
  std::copy(theta.begin(), theta.end(), values_.begin());
}

bool NetworkParams::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

NetworkParams init_params(const NetworkSpec& spec) {
  NetworkParams params(spec.input_dim, spec.hidden_widths, spec.output_dim, spec.activation);
  std::mt19937_64 rng(spec.seed);
  auto theta = params.values();
  for (const auto& s : params.layers()) {
    const double limit = std::sqrt(6.0 / static_cast<double>(s.rows + s.cols));
    for (std::size_t i = 0; i < s.rows * s.cols; ++i) {
      // 53 random bits -> [0,1); avoids the implementation-defined distributions.
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      theta[s.weight_offset + i] = limit * (2.0 * u - 1.0);
    }
  }
  return params;
}

double forward(const NetworkParams& params, const Point3& x) {
  const std::size_t width = params.max_width();
  std::vector<double> cur(width), next(width);
  std::copy(x.begin(), x.end(), cur.begin());
  const auto theta = params.values();
  const auto& layers = params.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& s = layers[l];
    const bool hidden = l + 1 < layers.size();
    for (std::size_t j = 0; j < s.rows; ++j) {
      double a = 0.0;
      const double* w = theta.data() + s.weight_offset + j * s.cols;
      for (std::size_t k = 0; k < s.cols; ++k) a += w[k] * cur[k];
      a += theta[s.bias_offset + j];
      next[j] = hidden ? activation_eval(params.activation(), a).f : a;
    }
    std::swap(cur, next);
  }
  return cur[0];
}

JetTriple forward_jet(const NetworkParams& params, const Point3& x) {
  using detail::kJetCols;
  const std::size_t width = params.max_width();
  std::vector<double> y(width * kJetCols), a(width * kJetCols);
  detail::seed_input_jet(x, y.data());
  const auto& layers = params.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    detail::affine_jet(params, l, y.data(), a.data(), kJetCols);
    if (l + 1 < layers.size()) {
      detail::activate_jet(params.activation(), a.data(), y.data(), layers[l].rows, 2);
    }
  }
  return detail::output_jet(a.data());
}

}  // namespace dcm
