#pragma once

#include <string>
#include <string_view>

#include "dcm/jet.hpp"
#include "dcm/material.hpp"
#include "dcm/sampling.hpp"

namespace dcm {

enum class CaseId {
  Case1Parabolic,
  Case1Exponential,
  Case1Trigonometric,
  Case2Poly3D,
  Case3Cylinder,
};

inline constexpr CaseId kAllCases[] = {CaseId::Case1Parabolic, CaseId::Case1Exponential,
                                       CaseId::Case1Trigonometric, CaseId::Case2Poly3D,
                                       CaseId::Case3Cylinder};

std::string case_name(CaseId id);
CaseId parse_case(std::string_view name);

/// Geometry and conductivity of a benchmark case.
Geometry case_geometry(CaseId id);
MaterialModel case_material(CaseId id);

/// Closed-form solution of the case with its derivatives. Throws
/// std::out_of_range when x is outside the case geometry.
JetTriple analytic_phi(CaseId id, const Point3& x);

/// Closed-form solution as a ScalarField.
class AnalyticSolution final : public ScalarField {
 public:
  explicit AnalyticSolution(CaseId id) : id_(id) {}
  JetTriple jet(const Point3& x) const override { return analytic_phi(id_, x); }
  CaseId id() const { return id_; }

 private:
  CaseId id_;
};

}  // namespace dcm
