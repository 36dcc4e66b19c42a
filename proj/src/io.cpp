#include "dcm/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dcm/errors.hpp"

namespace dcm {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_convergence_csv(std::ostream& os, const TrainHistory& history, bool with_wall_clock) {
  os << "iter,phase,total,mse_g,mse_d,mse_n,ms\n";
  for (const auto& r : history.records) {
    os << r.iteration << ',' << to_string(r.phase) << ',' << format_real(r.loss.total) << ','
       << format_real(r.loss.mse_g) << ',' << format_real(r.loss.mse_d) << ',' << format_real(r.loss.mse_n) << ','
       << format_real(with_wall_clock ? r.elapsed_ms : 0.0) << '\n';
  }
}

void write_fields_csv(std::ostream& os, const FieldTable& table) {
  os << "x,y,z,phi_pred,phi_exact,q_pred,q_exact,abs_err\n";
  for (const auto& r : table.rows) {
    os << format_real(r.x[0]) << ',' << format_real(r.x[1]) << ',' << format_real(r.x[2]) << ','
       << format_real(r.phi_pred) << ',' << format_real(r.phi_exact) << ',' << format_real(r.q_pred) << ','
       << format_real(r.q_exact) << ',' << format_real(std::abs(r.phi_pred - r.phi_exact)) << '\n';
  }
}

void write_fields_vtk(std::ostream& os, const FieldTable& table) {
  const std::size_t n = table.rows.size();
  os << "# vtk DataFile Version 3.0\n"
     << "dcm field table\n"
     << "ASCII\n"
     << "DATASET STRUCTURED_GRID\n"
     << "DIMENSIONS " << table.dims[0] << ' ' << table.dims[1] << ' ' << table.dims[2] << '\n'
     << "POINTS " << n << " double\n";
  for (const auto& r : table.rows)
    os << format_real(r.x[0]) << ' ' << format_real(r.x[1]) << ' ' << format_real(r.x[2]) << '\n';
  os << "POINT_DATA " << n << '\n';
  auto scalars = [&](const char* name, auto&& get) {
    os << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (const auto& r : table.rows) os << format_real(get(r)) << '\n';
  };
  scalars("phi_pred", [](const FieldRow& r) { return r.phi_pred; });
  scalars("phi_exact", [](const FieldRow& r) { return r.phi_exact; });
  scalars("q_pred", [](const FieldRow& r) { return r.q_pred; });
  scalars("q_exact", [](const FieldRow& r) { return r.q_exact; });
  scalars("abs_err", [](const FieldRow& r) { return std::abs(r.phi_pred - r.phi_exact); });
}

void write_collocation_csv(std::ostream& os, const CollocationSet& set) {
  os << "x,y,z,kind,nx,ny,nz,prescribed\n";
  auto row = [&](const Point3& x, const char* kind, const Vec3& n, double v) {
    os << format_real(x[0]) << ',' << format_real(x[1]) << ',' << format_real(x[2]) << ',' << kind << ','
       << format_real(n[0]) << ',' << format_real(n[1]) << ',' << format_real(n[2]) << ',' << format_real(v) << '\n';
  };
  for (const auto& x : set.interior) row(x, "interior", {0.0, 0.0, 0.0}, 0.0);
  for (const auto& b : set.dirichlet) row(b.x, "dirichlet", b.normal, b.prescribed);
  for (const auto& b : set.neumann) row(b.x, "neumann", b.normal, b.prescribed);
}

void write_params(std::ostream& os, const NetworkParams& params) {
  os << "dcm-params 1\n";
  os << "activation " << activation_name(params.activation().type) << ' ' << format_real(params.activation().beta)
     << '\n';
  os << "layers " << params.num_layers() << '\n';
  for (const auto& s : params.layers()) os << s.rows << ' ' << s.cols << '\n';
  for (double v : params.values()) os << format_real(v) << '\n';
}

NetworkParams read_params(std::istream& is) {
  std::string tag;
  int version = 0;
  if (!(is >> tag >> version) || tag != "dcm-params" || version != 1) {
    throw IoError("not a dcm parameter snapshot");
  }
  std::string act_name;
  double beta = 1.0;
  std::size_t nl = 0;
  if (!(is >> tag >> act_name >> beta) || tag != "activation") throw IoError("snapshot: missing activation line");
  if (!(is >> tag >> nl) || tag != "layers" || nl < 2) throw IoError("snapshot: bad layer count");
  std::vector<std::size_t> rows(nl), cols(nl);
  for (std::size_t l = 0; l < nl; ++l)
    if (!(is >> rows[l] >> cols[l])) throw IoError("snapshot: bad layer shape");
  for (std::size_t l = 1; l < nl; ++l)
    if (cols[l] != rows[l - 1]) throw IoError("snapshot: layer shapes do not chain");
  ActivationKind act;
  try {
    act.type = parse_activation(act_name);
  } catch (const ConfigError& e) {
    throw IoError(std::string("snapshot: ") + e.what());
  }
  act.beta = beta;
  std::vector<std::size_t> hidden(rows.begin(), rows.end() - 1);
  NetworkParams p = [&] {
    try {
      return NetworkParams(cols[0], hidden, rows.back(), act);
    } catch (const std::invalid_argument& e) {
      throw IoError(std::string("snapshot: ") + e.what());
    }
  }();
  for (auto& v : p.values()) {
    std::string tok;
    if (!(is >> tok)) throw IoError("snapshot: truncated parameter list");
    v = std::strtod(tok.c_str(), nullptr);
  }
  std::string extra;
  if (is >> extra) throw IoError("snapshot: trailing data");
  return p;
}

NetworkParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read parameter snapshot '" + path + "'");
  return read_params(in);
}

}  // namespace dcm
