#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dcm/network.hpp"

namespace dcm {

/// How many input derivatives a recorded pass carries.
enum class JetOrder { Value = 0, Gradient = 1, Full = 2 };

/// Records per-point jet forward passes through a network so the gradient of
/// any scalar built from the recorded outputs can be pulled back onto the
/// parameters. This is the serial reference path; the blocked OpenMP kernel
/// in loss_kernel.hpp computes the same quantities for the training loss.
class Tape {
 public:
  explicit Tape(const NetworkParams& params);

  /// Forward jet at `x`, recorded. Returns the output jet; derivative slots
  /// beyond `order` are zero.
  JetTriple record(const Point3& x, JetOrder order = JetOrder::Full);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  void clear() { entries_.clear(); }

  /// Accumulates d/dtheta of sum_p <adjoints[p], output_p> into `grad`.
  /// `adjoints` must have one entry per recorded point, in recording order.
  /// Throws std::logic_error when nothing was recorded.
  void backward(std::span<const JetTriple> adjoints, std::span<double> grad) const;

 private:
  struct Entry {
    JetOrder order;
    std::vector<double> layer_inputs;  // Y_l per layer, concatenated
    std::vector<double> pre_acts;      // A_l per layer, concatenated
  };

  const NetworkParams* params_;
  std::vector<std::size_t> input_offsets_;
  std::vector<std::size_t> pre_offsets_;
  std::size_t input_total_ = 0;
  std::size_t pre_total_ = 0;
  std::vector<Entry> entries_;
};

/// A loss expressed over a Tape: records whatever points it needs, fills one
/// adjoint (dLoss/d output jet) per recorded point and returns the loss.
using TapedLoss = std::function<double(Tape& tape, std::vector<JetTriple>& adjoints)>;

struct LossGradient {
  double loss = 0.0;
  std::vector<double> grad;
};

LossGradient loss_grad(const NetworkParams& params, const TapedLoss& loss_eval);

}  // namespace dcm
