#include "dcm/evaluate.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>

#include "dcm/physics.hpp"

namespace dcm {

ErrorMetric compare(std::span<const double> predicted, std::span<const double> exact) {
  if (predicted.size() != exact.size() || exact.empty()) throw std::invalid_argument("compare: size mismatch");
  double np = 0.0, ne = 0.0, nd = 0.0, maxd = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    np += predicted[i] * predicted[i];
    ne += exact[i] * exact[i];
    const double d = predicted[i] - exact[i];
    nd += d * d;
    maxd = std::max(maxd, std::abs(d));
  }
  ErrorMetric m;
  const double norm_e = std::sqrt(ne);
  m.relative_error = std::abs(std::sqrt(np) - norm_e) / norm_e;
  m.max_abs_error = maxd;
  m.l2_relative_error = std::sqrt(nd) / norm_e;
  return m;
}

FieldTable evaluation_grid(CaseId id, std::size_t resolution) {
  if (resolution < 2) throw std::invalid_argument("evaluation grid needs at least 2 points per axis");
  FieldTable t;
  const Geometry geom = case_geometry(id);
  auto centre = [](std::size_t i, std::size_t n) { return (static_cast<double>(i) + 0.5) / static_cast<double>(n); };
  if (const auto* c = std::get_if<AnnularCylinder>(&geom)) {
    const std::size_t nr = resolution;
    const auto nth = static_cast<std::size_t>(std::lround(48.0 * static_cast<double>(resolution) / 21.0));
    const auto nz = std::max<std::size_t>(2, static_cast<std::size_t>(std::lround(5.0 * static_cast<double>(resolution) / 21.0)));
    t.dims = {nr, nth, nz};
    for (std::size_t k = 0; k < nz; ++k)
      for (std::size_t j = 0; j < nth; ++j)
        for (std::size_t i = 0; i < nr; ++i) {
          const double r = c->r_inner + (c->r_outer - c->r_inner) * centre(i, nr);
          const double th = 2.0 * std::numbers::pi * centre(j, nth);
          t.rows.push_back({{r * std::cos(th), r * std::sin(th), c->height * centre(k, nz)}, 0, 0, 0, 0});
        }
  } else {
    const std::size_t n = resolution;
    t.dims = {n, n, n};
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) t.rows.push_back({{centre(i, n), centre(j, n), centre(k, n)}, 0, 0, 0, 0});
  }
  return t;
}

Vec3 canonical_normal(CaseId id, const Point3& x) {
  if (id == CaseId::Case3Cylinder) {
    const double r = std::hypot(x[0], x[1]);
    return {x[0] / r, x[1] / r, 0.0};
  }
  return {0.0, 0.0, 1.0};
}

CaseEvaluation evaluate_case(CaseId id, const ScalarField& predicted, std::size_t resolution) {
  CaseEvaluation ev;
  ev.table = evaluation_grid(id, resolution);
  const MaterialModel model = case_material(id);
  const AnalyticSolution exact(id);
  auto& rows = ev.table.rows;
  const long n = static_cast<long>(rows.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    FieldRow& r = rows[static_cast<std::size_t>(i)];
    const double k = conductivity(model, r.x).k;
    const Vec3 nrm = canonical_normal(id, r.x);
    const JetTriple jp = predicted.jet(r.x);
    const JetTriple je = exact.jet(r.x);
    r.phi_pred = jp.value;
    r.phi_exact = je.value;
    r.q_pred = flux(jp, k, nrm);
    r.q_exact = flux(je, k, nrm);
  }
  std::vector<double> pp, pe, qp, qe;
  for (const auto& r : rows) {
    pp.push_back(r.phi_pred);
    pe.push_back(r.phi_exact);
    qp.push_back(r.q_pred);
    qe.push_back(r.q_exact);
  }
  ev.metric = compare(pp, pe);
  ev.metric.flux_relative_error = compare(qp, qe).l2_relative_error;
  return ev;
}

std::vector<FluxSample> flux_profile(CaseId id, const ScalarField& predicted, const Point3& from, const Point3& to,
                                     std::size_t n_samples) {
  if (n_samples == 0) throw std::invalid_argument("flux profile needs at least one sample");
  const MaterialModel model = case_material(id);
  const AnalyticSolution exact(id);
  std::vector<FluxSample> out;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double s = (static_cast<double>(i) + 0.5) / static_cast<double>(n_samples);
    const Point3 x{from[0] + s * (to[0] - from[0]), from[1] + s * (to[1] - from[1]), from[2] + s * (to[2] - from[2])};
    const double k = conductivity(model, x).k;
    const Vec3 nrm = canonical_normal(id, x);
    out.push_back({s, flux(predicted.jet(x), k, nrm), flux(exact.jet(x), k, nrm)});
  }
  return out;
}

std::vector<FluxSample> default_flux_profile(CaseId id, const ScalarField& predicted, std::size_t n_samples) {
  if (id == CaseId::Case3Cylinder) {
    const auto c = std::get<AnnularCylinder>(case_geometry(id));
    return flux_profile(id, predicted, {c.r_inner, 0.0, 0.5 * c.height}, {c.r_outer, 0.0, 0.5 * c.height}, n_samples);
  }
  return flux_profile(id, predicted, {0.5, 0.5, 0.0}, {0.5, 0.5, 1.0}, n_samples);
}

}  // namespace dcm
