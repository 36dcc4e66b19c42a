#pragma once

#include <iosfwd>
#include <string>

#include "dcm/evaluate.hpp"
#include "dcm/network.hpp"
#include "dcm/optim.hpp"
#include "dcm/sampling.hpp"

namespace dcm {

/// Fixed numeric format for every CSV/VTK value: 17 significant digits, scientific.
std::string format_real(double v);

/// iter,phase,total,mse_g,mse_d,mse_n,ms. `ms` is written as 0 unless
/// `with_wall_clock`, which keeps the file byte-reproducible.
void write_convergence_csv(std::ostream& os, const TrainHistory& history, bool with_wall_clock);

/// x,y,z,phi_pred,phi_exact,q_pred,q_exact,abs_err
void write_fields_csv(std::ostream& os, const FieldTable& table);

/// Legacy ASCII VTK structured grid carrying the same columns as point data.
void write_fields_vtk(std::ostream& os, const FieldTable& table);

/// x,y,z,kind,nx,ny,nz,prescribed with kind in {interior, dirichlet, neumann}.
void write_collocation_csv(std::ostream& os, const CollocationSet& set);

/// Text snapshot: header, activation, layer shapes, then row-major weights
/// and biases one value per line (round-trips exactly).
void write_params(std::ostream& os, const NetworkParams& params);
NetworkParams read_params(std::istream& is);

NetworkParams load_params(const std::string& path);

}  // namespace dcm
