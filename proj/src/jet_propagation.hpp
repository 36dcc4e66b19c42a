#pragma once

// Per-point jet propagation shared by forward_jet and the recording Tape.
// Jets are laid out as width x 7 row-major blocks: column 0 is the value,
// 1..3 the first derivatives, 4..6 the pure second derivatives.

#include <cstddef>
#include <vector>

#include "dcm/network.hpp"

namespace dcm::detail {

inline constexpr std::size_t kJetCols = 7;

inline std::size_t used_cols(int order) { return order == 0 ? 1 : order == 1 ? 4 : 7; }

// out = W * in (+ b on the value column)
inline void affine_jet(const NetworkParams& p, std::size_t layer, const double* in, double* out,
                       std::size_t ncols) {
  const auto& s = p.layers()[layer];
  const auto theta = p.values();
  for (std::size_t j = 0; j < s.rows; ++j) {
    double acc[kJetCols] = {};
    const double* w = theta.data() + s.weight_offset + j * s.cols;
    for (std::size_t k = 0; k < s.cols; ++k) {
      const double* yk = in + k * kJetCols;
      for (std::size_t c = 0; c < ncols; ++c) acc[c] += w[k] * yk[c];
    }
    acc[0] += theta[s.bias_offset + j];
    double* a = out + j * kJetCols;
    for (std::size_t c = 0; c < kJetCols; ++c) a[c] = c < ncols ? acc[c] : 0.0;
  }
}

inline void activate_jet(const ActivationKind& kind, const double* a, double* y, std::size_t rows,
                         int order) {
  for (std::size_t j = 0; j < rows; ++j) {
    const double* aj = a + j * kJetCols;
    double* yj = y + j * kJetCols;
    const auto s = activation_eval(kind, aj[0]);
    yj[0] = s.f;
    for (std::size_t i = 0; i < 3; ++i) {
      yj[1 + i] = order >= 1 ? s.d1 * aj[1 + i] : 0.0;
      yj[4 + i] = order >= 2 ? s.d2 * aj[1 + i] * aj[1 + i] + s.d1 * aj[4 + i] : 0.0;
    }
  }
}

inline void seed_input_jet(const Point3& x, double* y) {
  for (std::size_t k = 0; k < 3; ++k) {
    double* yk = y + k * kJetCols;
    for (std::size_t c = 0; c < kJetCols; ++c) yk[c] = 0.0;
    yk[0] = x[k];
    yk[1 + k] = 1.0;
  }
}

inline JetTriple output_jet(const double* a) {
  JetTriple out;
  out.value = a[0];
  for (std::size_t i = 0; i < 3; ++i) {
    out.grad[i] = a[1 + i];
    out.lap_diag[i] = a[4 + i];
  }
  return out;
}

}  // namespace dcm::detail
