#include "dcm/loss_kernel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>

namespace dcm {
namespace {

using Matrix = Eigen::MatrixXd;
using RowMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using RowMapMut = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

struct BlockResult {
  double sum_sq = 0.0;
  std::vector<double> grad;
};

}  // namespace

CollocationLoss::CollocationLoss(const MaterialModel& model, const CollocationSet& set) {
  if (set.interior.empty()) throw std::invalid_argument("collocation set has no interior points");
  interior_.reserve(set.interior.size());
  for (const auto& x : set.interior) {
    const auto c = conductivity(model, x);
    interior_.push_back({x, c.k, c.grad, 0.0});
  }
  for (const auto& b : set.dirichlet) dirichlet_.push_back({b.x, 0.0, b.normal, b.prescribed});
  for (const auto& b : set.neumann) {
    const auto c = conductivity(model, b.x);
    neumann_.push_back({b.x, c.k, b.normal, b.prescribed});
  }
  auto add_blocks = [&](Term t, std::size_t n) {
    for (std::size_t b = 0; b < n; b += kBlockSize) blocks_.push_back({t, b, std::min(n, b + kBlockSize)});
  };
  add_blocks(Term::Interior, interior_.size());
  add_blocks(Term::Dirichlet, dirichlet_.size());
  add_blocks(Term::Neumann, neumann_.size());
}

const std::vector<CollocationLoss::PointData>& CollocationLoss::points(Term t) const {
  return t == Term::Interior ? interior_ : t == Term::Dirichlet ? dirichlet_ : neumann_;
}

LossReport CollocationLoss::evaluate(const NetworkParams& params) const {
  return run(params, {}, false);
}

LossReport CollocationLoss::evaluate(const NetworkParams& params, std::span<double> grad) const {
  if (grad.size() != params.size()) throw std::invalid_argument("gradient buffer has wrong size");
  return run(params, grad, true);
}

LossReport CollocationLoss::run(const NetworkParams& params, std::span<double> grad, bool want_grad) const {
  const auto& layers = params.layers();
  const std::size_t nl = layers.size();
  const double* theta = params.values().data();
  const ActivationKind act = params.activation();
  const std::size_t nparams = params.size();
  const long nblocks = static_cast<long>(blocks_.size());
  std::vector<BlockResult> results(blocks_.size());

  const double inv_n[3] = {
      1.0 / static_cast<double>(interior_.size()),
      dirichlet_.empty() ? 0.0 : 1.0 / static_cast<double>(dirichlet_.size()),
      neumann_.empty() ? 0.0 : 1.0 / static_cast<double>(neumann_.size()),
  };

#pragma omp parallel for schedule(static)
  for (long bi = 0; bi < nblocks; ++bi) {
    const Block& blk = blocks_[static_cast<std::size_t>(bi)];
    const auto& pts = points(blk.term);
    const std::size_t np = blk.end - blk.begin;
    // Jet columns per point: value only, value+gradient, or full.
    const std::size_t C = blk.term == Term::Interior ? 7 : blk.term == Term::Neumann ? 4 : 1;
    const std::size_t ncol = np * C;

    std::vector<Matrix> Y(nl), A(nl), D1(nl), D2(nl), D3(nl);
    Y[0] = Matrix::Zero(3, static_cast<Eigen::Index>(ncol));
    for (std::size_t p = 0; p < np; ++p) {
      const auto& x = pts[blk.begin + p].x;
      for (std::size_t k = 0; k < 3; ++k) {
        Y[0](k, p * C) = x[k];
        if (C > 1) Y[0](k, p * C + 1 + k) = 1.0;
      }
    }

    for (std::size_t l = 0; l < nl; ++l) {
      const auto& s = layers[l];
      const RowMap W(theta + s.weight_offset, s.rows, s.cols);
      A[l].noalias() = W * Y[l];
      for (std::size_t p = 0; p < np; ++p)
        for (std::size_t j = 0; j < s.rows; ++j) A[l](j, p * C) += theta[s.bias_offset + j];
      if (l + 1 == nl) break;

      Matrix& y = Y[l + 1];
      y.resize(s.rows, ncol);
      if (want_grad) {
        D1[l].resize(s.rows, np);
        D2[l].resize(s.rows, np);
        D3[l].resize(s.rows, np);
      }
      for (std::size_t p = 0; p < np; ++p) {
        const std::size_t c0 = p * C;
        for (std::size_t j = 0; j < s.rows; ++j) {
          const auto d = activation_derivs(act, A[l](j, c0));
          y(j, c0) = d.f;
          if (C > 1) {
            for (std::size_t i = 1; i <= 3; ++i) y(j, c0 + i) = d.d1 * A[l](j, c0 + i);
          }
          if (C > 4) {
            for (std::size_t i = 1; i <= 3; ++i) {
              const double ai = A[l](j, c0 + i);
              y(j, c0 + 3 + i) = d.d2 * ai * ai + d.d1 * A[l](j, c0 + 3 + i);
            }
          }
          if (want_grad) {
            D1[l](j, p) = d.d1;
            D2[l](j, p) = d.d2;
            D3[l](j, p) = d.d3;
          }
        }
      }
    }

    // Loss head: residuals and their adjoints with respect to the output jets.
    const Matrix& out = A[nl - 1];
    Matrix abar;
    if (want_grad) abar = Matrix::Zero(1, static_cast<Eigen::Index>(ncol));
    const double scale = 2.0 * inv_n[static_cast<int>(blk.term)];
    double sum_sq = 0.0;
    for (std::size_t p = 0; p < np; ++p) {
      const auto& pd = pts[blk.begin + p];
      const std::size_t c0 = p * C;
      switch (blk.term) {
        case Term::Interior: {
          const double lap = out(0, c0 + 4) + out(0, c0 + 5) + out(0, c0 + 6);
          const double r =
              pd.k * lap + pd.v[0] * out(0, c0 + 1) + pd.v[1] * out(0, c0 + 2) + pd.v[2] * out(0, c0 + 3);
          sum_sq += r * r;
          if (want_grad) {
            for (std::size_t i = 0; i < 3; ++i) {
              abar(0, c0 + 1 + i) = scale * r * pd.v[i];
              abar(0, c0 + 4 + i) = scale * r * pd.k;
            }
          }
          break;
        }
        case Term::Dirichlet: {
          const double e = out(0, c0) - pd.target;
          sum_sq += e * e;
          if (want_grad) abar(0, c0) = scale * e;
          break;
        }
        case Term::Neumann: {
          const double q =
              -pd.k * (pd.v[0] * out(0, c0 + 1) + pd.v[1] * out(0, c0 + 2) + pd.v[2] * out(0, c0 + 3));
          const double e = q - pd.target;
          sum_sq += e * e;
          if (want_grad)
            for (std::size_t i = 0; i < 3; ++i) abar(0, c0 + 1 + i) = -scale * e * pd.k * pd.v[i];
          break;
        }
      }
    }
    BlockResult& res = results[static_cast<std::size_t>(bi)];
    res.sum_sq = sum_sq;
    if (!want_grad) continue;

    // Reverse pass.
    res.grad.assign(nparams, 0.0);
    Matrix ybar;
    for (std::size_t l = nl; l-- > 0;) {
      const auto& s = layers[l];
      RowMapMut gW(res.grad.data() + s.weight_offset, s.rows, s.cols);
      gW.noalias() += abar * Y[l].transpose();
      for (std::size_t j = 0; j < s.rows; ++j) {
        double acc = 0.0;
        for (std::size_t p = 0; p < np; ++p) acc += abar(j, p * C);
        res.grad[s.bias_offset + j] += acc;
      }
      if (l == 0) break;

      const RowMap W(theta + s.weight_offset, s.rows, s.cols);
      ybar.noalias() = W.transpose() * abar;
      const Matrix& a = A[l - 1];
      abar.resize(s.cols, ncol);
      for (std::size_t p = 0; p < np; ++p) {
        const std::size_t c0 = p * C;
        for (std::size_t k = 0; k < s.cols; ++k) {
          const double d1 = D1[l - 1](k, p), d2 = D2[l - 1](k, p), d3 = D3[l - 1](k, p);
          double a0 = ybar(k, c0) * d1;
          if (C > 1) {
            for (std::size_t i = 1; i <= 3; ++i) {
              const double ai = a(k, c0 + i);
              a0 += ybar(k, c0 + i) * d2 * ai;
              abar(k, c0 + i) = ybar(k, c0 + i) * d1;
            }
          }
          if (C > 4) {
            for (std::size_t i = 1; i <= 3; ++i) {
              const double ai = a(k, c0 + i);
              const double yb = ybar(k, c0 + 3 + i);
              a0 += yb * (d3 * ai * ai + d2 * a(k, c0 + 3 + i));
              abar(k, c0 + i) += yb * 2.0 * d2 * ai;
              abar(k, c0 + 3 + i) = yb * d1;
            }
          }
          abar(k, c0) = a0;
        }
      }
    }
  }

  double sums[3] = {0.0, 0.0, 0.0};
  for (std::size_t b = 0; b < blocks_.size(); ++b) sums[static_cast<int>(blocks_[b].term)] += results[b].sum_sq;

  LossReport rep;
  rep.n_interior = interior_.size();
  rep.n_dirichlet = dirichlet_.size();
  rep.n_neumann = neumann_.size();
  rep.mse_g = sums[0] * inv_n[0];
  rep.mse_d = sums[1] * inv_n[1];
  rep.mse_n = sums[2] * inv_n[2];
  rep.total = rep.mse_g + rep.mse_d + rep.mse_n;

  if (want_grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (const auto& r : results)
      for (std::size_t i = 0; i < nparams; ++i) grad[i] += r.grad[i];
  }
  return rep;
}

}  // namespace dcm
