#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dcm/activation.hpp"
#include "dcm/jet.hpp"

namespace dcm {

struct NetworkSpec {
  std::size_t input_dim = 3;
  std::vector<std::size_t> hidden_widths{30, 30};
  std::size_t output_dim = 1;
  ActivationKind activation{};
  std::uint64_t seed = 0;
};

/// Placement of one affine layer inside the flat parameter vector.
/// Weights are stored row-major (rows = layer width), followed by the bias.
struct LayerShape {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t weight_offset = 0;
  std::size_t bias_offset = 0;
};

/// Weights and biases of a dense feedforward net, held as one flat vector so
/// the optimizers can work on it directly. Hidden layers use `activation()`,
/// the output layer is the identity.
class NetworkParams {
 public:
  NetworkParams() = default;
  NetworkParams(std::size_t input_dim, std::span<const std::size_t> hidden_widths,
                std::size_t output_dim, ActivationKind activation);

  const std::vector<LayerShape>& layers() const { return layers_; }
  std::size_t num_layers() const { return layers_.size(); }
  std::size_t size() const { return values_.size(); }
  std::size_t input_dim() const { return layers_.front().cols; }
  std::size_t output_dim() const { return layers_.back().rows; }
  std::size_t max_width() const;
  const ActivationKind& activation() const { return activation_; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  double weight(std::size_t layer, std::size_t row, std::size_t col) const {
    const auto& s = layers_[layer];
    return values_[s.weight_offset + row * s.cols + col];
  }
  double& weight(std::size_t layer, std::size_t row, std::size_t col) {
    const auto& s = layers_[layer];
    return values_[s.weight_offset + row * s.cols + col];
  }
  double bias(std::size_t layer, std::size_t row) const {
    return values_[layers_[layer].bias_offset + row];
  }
  double& bias(std::size_t layer, std::size_t row) { return values_[layers_[layer].bias_offset + row]; }

  /// Same architecture, different values. Throws std::invalid_argument on size mismatch.
  void assign(std::span<const double> theta);

  bool all_finite() const;

 private:
  std::vector<LayerShape> layers_;
  std::vector<double> values_;
  ActivationKind activation_{};
};

/// Glorot-uniform weights, zero biases, fully determined by `spec.seed`.
NetworkParams init_params(const NetworkSpec& spec);

double forward(const NetworkParams& params, const Point3& x);

/// Exact value, gradient and pure second derivatives of the network output
/// with respect to the three inputs, by propagating per-coordinate jets.
JetTriple forward_jet(const NetworkParams& params, const Point3& x);

/// Network viewed as a ScalarField.
class NetworkField final : public ScalarField {
 public:
  explicit NetworkField(const NetworkParams& params) : params_(&params) {}
  JetTriple jet(const Point3& x) const override { return forward_jet(*params_, x); }

 private:
  const NetworkParams* params_;
};

}  // namespace dcm
