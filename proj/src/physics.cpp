#include "dcm/physics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dcm/loss_kernel.hpp"
#include "dcm/tape.hpp"

namespace dcm {

double pde_residual(const JetTriple& phi, const Conductivity& k) {
  return k.k * phi.laplacian() + dot(k.grad, phi.grad);
}

double pde_residual(const ScalarField& field, const MaterialModel& model, const Point3& x) {
  return pde_residual(field.jet(x), conductivity(model, x));
}

double flux(const JetTriple& phi, double k, const Vec3& n) {
  if (std::abs(std::sqrt(dot(n, n)) - 1.0) > 1e-9) throw std::invalid_argument("flux normal is not unit length");
  return -k * dot(phi.grad, n);
}

double flux(const ScalarField& field, const MaterialModel& model, const Point3& x, const Vec3& n) {
  return flux(field.jet(x), conductivity(model, x).k, n);
}

namespace {

void finish(LossReport& rep, double sum_g, double sum_d, double sum_n) {
  rep.mse_g = sum_g / static_cast<double>(rep.n_interior);
  rep.mse_d = rep.n_dirichlet ? sum_d / static_cast<double>(rep.n_dirichlet) : 0.0;
  rep.mse_n = rep.n_neumann ? sum_n / static_cast<double>(rep.n_neumann) : 0.0;
  rep.total = rep.mse_g + rep.mse_d + rep.mse_n;
}

LossReport counts_of(const CollocationSet& set) {
  if (set.interior.empty()) throw std::invalid_argument("collocation set has no interior points");
  LossReport rep;
  rep.n_interior = set.interior.size();
  rep.n_dirichlet = set.dirichlet.size();
  rep.n_neumann = set.neumann.size();
  return rep;
}

// Serial reference: every point recorded on one Tape, sums in index order.
LossAndGrad serial_loss_grad(const NetworkParams& params, const MaterialModel& model,
                             const CollocationSet& set) {
  LossReport rep = counts_of(set);
  const TapedLoss loss = [&](Tape& tape, std::vector<JetTriple>& adj) {
    const double ng = 2.0 / static_cast<double>(rep.n_interior);
    const double nd = rep.n_dirichlet ? 2.0 / static_cast<double>(rep.n_dirichlet) : 0.0;
    const double nn = rep.n_neumann ? 2.0 / static_cast<double>(rep.n_neumann) : 0.0;
    double sg = 0.0, sd = 0.0, sn = 0.0;
    for (const auto& x : set.interior) {
      const auto c = conductivity(model, x);
      const double r = pde_residual(tape.record(x, JetOrder::Full), c);
      sg += r * r;
      JetTriple a;
      for (int i = 0; i < 3; ++i) {
        a.grad[i] = ng * r * c.grad[i];
        a.lap_diag[i] = ng * r * c.k;
      }
      adj.push_back(a);
    }
    for (const auto& b : set.dirichlet) {
      const double e = tape.record(b.x, JetOrder::Value).value - b.prescribed;
      sd += e * e;
      JetTriple a;
      a.value = nd * e;
      adj.push_back(a);
    }
    for (const auto& b : set.neumann) {
      const double k = conductivity(model, b.x).k;
      const double e = flux(tape.record(b.x, JetOrder::Gradient), k, b.normal) - b.prescribed;
      sn += e * e;
      JetTriple a;
      for (int i = 0; i < 3; ++i) a.grad[i] = -nn * e * k * b.normal[i];
      adj.push_back(a);
    }
    finish(rep, sg, sd, sn);
    return rep.total;
  };
  auto lg = loss_grad(params, loss);
  return {rep, std::move(lg.grad)};
}

}  // namespace

LossReport assemble_loss(const ScalarField& field, const MaterialModel& model, const CollocationSet& set) {
  LossReport rep = counts_of(set);
  double sg = 0.0, sd = 0.0, sn = 0.0;
  for (const auto& x : set.interior) {
    const double r = pde_residual(field, model, x);
    sg += r * r;
  }
  for (const auto& b : set.dirichlet) {
    const double e = field.jet(b.x).value - b.prescribed;
    sd += e * e;
  }
  for (const auto& b : set.neumann) {
    const double e = flux(field, model, b.x, b.normal) - b.prescribed;
    sn += e * e;
  }
  finish(rep, sg, sd, sn);
  return rep;
}

LossReport assemble_loss(const NetworkParams& params, const MaterialModel& model, const CollocationSet& set,
                         Backend backend) {
  if (backend == Backend::Serial) return assemble_loss(NetworkField(params), model, set);
  return CollocationLoss(model, set).evaluate(params);
}

LossAndGrad assemble_loss_grad(const NetworkParams& params, const MaterialModel& model,
                               const CollocationSet& set, Backend backend) {
  if (backend == Backend::Serial) return serial_loss_grad(params, model, set);
  LossAndGrad out;
  out.grad.assign(params.size(), 0.0);
  out.report = CollocationLoss(model, set).evaluate(params, out.grad);
  return out;
}

CollocationSet attach_case_bcs(CaseId id, CollocationSet set) {
  const Geometry geom = case_geometry(id);
  const auto faces = faces_of(geom);
  const MaterialModel model = case_material(id);
  for (auto& b : set.boundary) {
    if (std::find(faces.begin(), faces.end(), b.face) == faces.end()) {
      throw std::invalid_argument("boundary face " + face_name(b.face) + " does not belong to case " +
                                  case_name(id));
    }
    bool dirichlet = false;
    switch (id) {
      case CaseId::Case1Parabolic:
      case CaseId::Case1Exponential:
      case CaseId::Case1Trigonometric:
        dirichlet = b.face == Face::ZMin || b.face == Face::ZMax;
        b.prescribed = b.face == Face::ZMax ? 100.0 : 0.0;
        break;
      case CaseId::Case2Poly3D:
        dirichlet = b.face == Face::XMin || b.face == Face::YMin || b.face == Face::ZMin;
        b.prescribed = dirichlet ? 0.0 : flux(analytic_phi(id, b.x), conductivity(model, b.x).k, b.normal);
        break;
      case CaseId::Case3Cylinder:
        dirichlet = b.face == Face::Inner || b.face == Face::Outer;
        b.prescribed = b.face == Face::Outer ? 100.0 : 0.0;
        break;
    }
    (dirichlet ? set.dirichlet : set.neumann).push_back(b);
  }
  set.boundary.clear();
  return set;
}

}  // namespace dcm
