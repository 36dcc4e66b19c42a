#pragma once

#include <array>
#include <span>
#include <cstddef>
#include <vector>

#include "dcm/cases.hpp"
#include "dcm/jet.hpp"

namespace dcm {

/// e = | ||pred|| - ||exact|| | / ||exact|| plus pointwise diagnostics.
struct ErrorMetric {
  double relative_error = 0.0;
  double max_abs_error = 0.0;
  double l2_relative_error = 0.0;  // ||pred - exact|| / ||exact||
  double flux_relative_error = 0.0;
};

ErrorMetric compare(std::span<const double> predicted, std::span<const double> exact);

struct FieldRow {
  Point3 x;
  double phi_pred;
  double phi_exact;
  double q_pred;
  double q_exact;
};

/// Structured evaluation grid; `x` varies fastest, then y, then z.
struct FieldTable {
  std::array<std::size_t, 3> dims{};
  std::vector<FieldRow> rows;
};

struct CaseEvaluation {
  ErrorMetric metric;
  FieldTable table;
};

/// Cell-centred grid points of the case geometry: `resolution`^3 for the
/// cube; (n, round(48n/21), max(2, round(5n/21))) over (r, theta, z) for the
/// cylinder. Throws std::invalid_argument when resolution < 2.
FieldTable evaluation_grid(CaseId id, std::size_t resolution);

/// Normal used for reported flux at x: +e_z for cube cases, outward radial
/// for the cylinder.
Vec3 canonical_normal(CaseId id, const Point3& x);

CaseEvaluation evaluate_case(CaseId id, const ScalarField& predicted, std::size_t resolution);

struct FluxSample {
  double s;
  double q_pred;
  double q_exact;
};

/// Flux along the line from `from` to `to` at n cell-centred samples, with
/// the case's canonical normal. `s` is the fraction along the line.
std::vector<FluxSample> flux_profile(CaseId id, const ScalarField& predicted, const Point3& from,
                                     const Point3& to, std::size_t n_samples);

/// Centre z-line for cube cases, mid-height radial line at theta = 0 for the cylinder.
std::vector<FluxSample> default_flux_profile(CaseId id, const ScalarField& predicted, std::size_t n_samples);

}  // namespace dcm
