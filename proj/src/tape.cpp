#include "dcm/tape.hpp"

#include <algorithm>
#include <stdexcept>

#include "jet_propagation.hpp"

namespace dcm {

using detail::kJetCols;

Tape::Tape(const NetworkParams& params) : params_(&params) {
  for (const auto& s : params.layers()) {
    input_offsets_.push_back(input_total_);
    input_total_ += s.cols * kJetCols;
    pre_offsets_.push_back(pre_total_);
    pre_total_ += s.rows * kJetCols;
  }
}

JetTriple Tape::record(const Point3& x, JetOrder order) {
  const auto& layers = params_->layers();
  const int ord = static_cast<int>(order);
  const std::size_t ncols = detail::used_cols(ord);
  Entry e{order, std::vector<double>(input_total_), std::vector<double>(pre_total_)};
  detail::seed_input_jet(x, e.layer_inputs.data());
  if (ord < 2) {
    for (std::size_t k = 0; k < 3; ++k) {
      double* yk = e.layer_inputs.data() + k * kJetCols;
      std::fill(yk + ncols, yk + kJetCols, 0.0);
    }
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    double* a = e.pre_acts.data() + pre_offsets_[l];
    detail::affine_jet(*params_, l, e.layer_inputs.data() + input_offsets_[l], a, ncols);
    if (l + 1 < layers.size()) {
      detail::activate_jet(params_->activation(), a, e.layer_inputs.data() + input_offsets_[l + 1],
                           layers[l].rows, ord);
    }
  }
  const JetTriple out = detail::output_jet(e.pre_acts.data() + pre_offsets_.back());
  entries_.push_back(std::move(e));
  return out;
}

void Tape::backward(std::span<const JetTriple> adjoints, std::span<double> grad) const {
  if (entries_.empty()) throw std::logic_error("tape is empty: no forward pass was recorded");
  if (adjoints.size() != entries_.size()) {
    throw std::invalid_argument("one adjoint per recorded point is required");
  }
  if (grad.size() != params_->size()) throw std::invalid_argument("gradient buffer has wrong size");

  const auto& layers = params_->layers();
  const auto theta = params_->values();
  const std::size_t width = params_->max_width();
  std::vector<double> abar(width * kJetCols), ybar(width * kJetCols);

  for (std::size_t p = 0; p < entries_.size(); ++p) {
    const Entry& e = entries_[p];
    const int ord = static_cast<int>(e.order);
    const std::size_t ncols = detail::used_cols(ord);
    const JetTriple& adj = adjoints[p];

    std::fill(abar.begin(), abar.end(), 0.0);
    abar[0] = adj.value;
    for (std::size_t i = 0; i < 3; ++i) {
      if (ord >= 1) abar[1 + i] = adj.grad[i];
      if (ord >= 2) abar[4 + i] = adj.lap_diag[i];
    }

    for (std::size_t l = layers.size(); l-- > 0;) {
      const auto& s = layers[l];
      const double* y = e.layer_inputs.data() + input_offsets_[l];
      for (std::size_t j = 0; j < s.rows; ++j) {
        const double* aj = abar.data() + j * kJetCols;
        double* gw = grad.data() + s.weight_offset + j * s.cols;
        for (std::size_t k = 0; k < s.cols; ++k) {
          const double* yk = y + k * kJetCols;
          double acc = 0.0;
          for (std::size_t c = 0; c < ncols; ++c) acc += aj[c] * yk[c];
          gw[k] += acc;
        }
        grad[s.bias_offset + j] += aj[0];
      }
      if (l == 0) break;

      // ybar = W^T abar
      std::fill(ybar.begin(), ybar.begin() + s.cols * kJetCols, 0.0);
      for (std::size_t j = 0; j < s.rows; ++j) {
        const double* aj = abar.data() + j * kJetCols;
        const double* w = theta.data() + s.weight_offset + j * s.cols;
        for (std::size_t k = 0; k < s.cols; ++k) {
          double* yk = ybar.data() + k * kJetCols;
          for (std::size_t c = 0; c < ncols; ++c) yk[c] += w[k] * aj[c];
        }
      }

      // Reverse through y = sigma(a) of the previous layer.
      const double* a_prev = e.pre_acts.data() + pre_offsets_[l - 1];
      std::fill(abar.begin(), abar.end(), 0.0);
      for (std::size_t k = 0; k < s.cols; ++k) {
        const double* a = a_prev + k * kJetCols;
        const double* yb = ybar.data() + k * kJetCols;
        double* ab = abar.data() + k * kJetCols;
        const auto d = activation_derivs(params_->activation(), a[0]);
        double a0 = yb[0] * d.d1;
        for (std::size_t i = 0; i < 3; ++i) {
          if (ord >= 1) {
            a0 += yb[1 + i] * d.d2 * a[1 + i];
            ab[1 + i] = yb[1 + i] * d.d1;
          }
          if (ord >= 2) {
            a0 += yb[4 + i] * (d.d3 * a[1 + i] * a[1 + i] + d.d2 * a[4 + i]);
            ab[1 + i] += yb[4 + i] * 2.0 * d.d2 * a[1 + i];
            ab[4 + i] = yb[4 + i] * d.d1;
          }
        }
        ab[0] = a0;
      }
    }
  }
}

LossGradient loss_grad(const NetworkParams& params, const TapedLoss& loss_eval) {
  Tape tape(params);
  std::vector<JetTriple> adjoints;
  LossGradient out;
  out.loss = loss_eval(tape, adjoints);
  out.grad.assign(params.size(), 0.0);
  tape.backward(adjoints, out.grad);
  return out;
}

}  // namespace dcm
