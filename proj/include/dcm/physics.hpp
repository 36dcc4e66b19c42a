#pragma once

#include <cstddef>
#include <vector>

#include "dcm/cases.hpp"
#include "dcm/jet.hpp"
#include "dcm/material.hpp"
#include "dcm/network.hpp"
#include "dcm/sampling.hpp"

namespace dcm {

/// k lap(phi) + grad(k) . grad(phi), the expanded divergence form.
double pde_residual(const JetTriple& phi, const Conductivity& k);
double pde_residual(const ScalarField& field, const MaterialModel& model, const Point3& x);

/// q = -k grad(phi) . n. Throws std::invalid_argument unless |n| = 1 within 1e-9.
double flux(const JetTriple& phi, double k, const Vec3& n);
double flux(const ScalarField& field, const MaterialModel& model, const Point3& x, const Vec3& n);

struct LossReport {
  double total = 0.0;
  double mse_g = 0.0;
  double mse_d = 0.0;
  double mse_n = 0.0;
  std::size_t n_interior = 0;
  std::size_t n_dirichlet = 0;
  std::size_t n_neumann = 0;
};

struct LossAndGrad {
  LossReport report;
  std::vector<double> grad;
};

enum class Backend { Serial, Parallel };

/// Mean-square PDE, Dirichlet and Neumann residuals of an arbitrary field.
/// Throws std::invalid_argument when the interior set is empty.
LossReport assemble_loss(const ScalarField& field, const MaterialModel& model, const CollocationSet& set);

/// Network loss. The parallel backend is the blocked OpenMP kernel, the
/// serial backend replays the per-point Tape.
LossReport assemble_loss(const NetworkParams& params, const MaterialModel& model,
                         const CollocationSet& set, Backend backend = Backend::Parallel);

LossAndGrad assemble_loss_grad(const NetworkParams& params, const MaterialModel& model,
                               const CollocationSet& set, Backend backend = Backend::Parallel);

/// Moves the sampled boundary points of `set` into Dirichlet / Neumann lists
/// with the prescribed values of `id`. Throws std::invalid_argument when the
/// faces do not belong to the case geometry.
CollocationSet attach_case_bcs(CaseId id, CollocationSet set);

}  // namespace dcm
