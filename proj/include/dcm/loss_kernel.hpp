#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dcm/material.hpp"
#include "dcm/network.hpp"
#include "dcm/physics.hpp"
#include "dcm/sampling.hpp"

namespace dcm {

/// Collocation loss with per-point conductivity data precomputed once.
///
/// Points are processed in fixed blocks of `kBlockSize`; each block runs its
/// forward jets and reverse pass as dense matrix products and writes into its
/// own slot. Slots are reduced serially in block order, so results do not
/// depend on the OpenMP thread count.
class CollocationLoss {
 public:
  static constexpr std::size_t kBlockSize = 64;

  CollocationLoss(const MaterialModel& model, const CollocationSet& set);

  LossReport evaluate(const NetworkParams& params) const;

  /// Loss plus its gradient; `grad` must have params.size() entries and is overwritten.
  LossReport evaluate(const NetworkParams& params, std::span<double> grad) const;

  std::size_t num_interior() const { return interior_.size(); }
  std::size_t num_dirichlet() const { return dirichlet_.size(); }
  std::size_t num_neumann() const { return neumann_.size(); }

 private:
  enum class Term { Interior, Dirichlet, Neumann };

  struct PointData {
    Point3 x;
    double k;      // conductivity (interior, Neumann)
    Vec3 v;        // grad k (interior) or outward normal (Neumann)
    double target; // phi_bar or q_bar
  };

  struct Block {
    Term term;
    std::size_t begin;
    std::size_t end;
  };

  LossReport run(const NetworkParams& params, std::span<double> grad, bool want_grad) const;
  const std::vector<PointData>& points(Term t) const;

  std::vector<PointData> interior_;
  std::vector<PointData> dirichlet_;
  std::vector<PointData> neumann_;
  std::vector<Block> blocks_;
};

}  // namespace dcm
