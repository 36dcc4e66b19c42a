#include "dcm/cases.hpp"

#include <cmath>
#include <stdexcept>

#include "dcm/detail/names.hpp"
#include "dcm/errors.hpp"

namespace dcm {
namespace {

constexpr double kTopValue = 100.0;
constexpr double kRInner = 0.3;
constexpr double kROuter = 0.5;
constexpr double kHeight = 0.1;

constexpr std::array<double, 8> kPolyCoeffs{5.0, 0.2, 0.4, 0.6, 0.1, 0.2, 0.3, 0.7};

// phi depends on z only.
JetTriple z_profile(double v, double d1, double d2) {
  JetTriple j;
  j.value = v;
  j.grad = {0.0, 0.0, d1};
  j.lap_diag = {0.0, 0.0, d2};
  return j;
}

JetTriple case2_phi(const Point3& x) {
  // phi = P/g with P = xyz and g the trilinear form; P_ii = g_ii = 0, so
  // phi_ii = -2 P_i g_i / g^2 + 2 P g_i^2 / g^3.
  const auto& c = kPolyCoeffs;
  const double px = x[0], py = x[1], pz = x[2];
  const double g = c[0] + c[1] * px + c[2] * py + c[3] * pz + c[4] * px * py + c[5] * py * pz + c[6] * pz * px +
                   c[7] * px * py * pz;
  const Vec3 dg{c[1] + c[4] * py + c[6] * pz + c[7] * py * pz, c[2] + c[4] * px + c[5] * pz + c[7] * px * pz,
                c[3] + c[5] * py + c[6] * px + c[7] * px * py};
  const double P = px * py * pz;
  const Vec3 dP{py * pz, px * pz, px * py};
  JetTriple j;
  j.value = P / g;
  for (int i = 0; i < 3; ++i) {
    j.grad[i] = dP[i] / g - P * dg[i] / (g * g);
    j.lap_diag[i] = -2.0 * dP[i] * dg[i] / (g * g) + 2.0 * P * dg[i] * dg[i] / (g * g * g);
  }
  return j;
}

JetTriple case3_phi(const Point3& x) {
  const double C = kTopValue / std::log(kROuter / kRInner);
  const double r2 = x[0] * x[0] + x[1] * x[1];
  JetTriple j;
  j.value = C * std::log(std::sqrt(r2) / kRInner);
  j.grad = {C * x[0] / r2, C * x[1] / r2, 0.0};
  const double r4 = r2 * r2;
  j.lap_diag = {C * (x[1] * x[1] - x[0] * x[0]) / r4, C * (x[0] * x[0] - x[1] * x[1]) / r4, 0.0};
  return j;
}

}  // namespace

std::string case_name(CaseId id) {
  switch (id) {
    case CaseId::Case1Parabolic: return "case1_parabolic";
    case CaseId::Case1Exponential: return "case1_exponential";
    case CaseId::Case1Trigonometric: return "case1_trigonometric";
    case CaseId::Case2Poly3D: return "case2_poly3d";
    case CaseId::Case3Cylinder: return "case3_cylinder";
  }
  return "unknown";
}

CaseId parse_case(std::string_view name) {
  const auto key = detail::normalize_name(name);
  for (auto id : kAllCases)
    if (detail::normalize_name(case_name(id)) == key) return id;
  throw ConfigError("unknown case '" + std::string(name) + "'");
}

Geometry case_geometry(CaseId id) {
  if (id == CaseId::Case3Cylinder) return AnnularCylinder{kRInner, kROuter, kHeight};
  return UnitCube{};
}

MaterialModel case_material(CaseId id) {
  switch (id) {
    case CaseId::Case1Parabolic: return MaterialModel(Parabolic{5.0, 1.0, 2.0, Axis::Z});
    case CaseId::Case1Exponential: return MaterialModel(Exponential{5.0, 1.0, 0.0, 1.0, Axis::Z});
    case CaseId::Case1Trigonometric: return MaterialModel(Trigonometric{5.0, 1.0, 2.0, 1.0, Axis::Z});
    case CaseId::Case2Poly3D: return MaterialModel(Poly3D{kPolyCoeffs});
    case CaseId::Case3Cylinder:
      // k = 5 e^{3z}
      return MaterialModel(Exponential{5.0, 1.0, 0.0, 1.5, Axis::Z},
                           Box{{-kROuter, -kROuter, 0.0}, {kROuter, kROuter, kHeight}});
  }
  throw std::invalid_argument("unknown case");
}

JetTriple analytic_phi(CaseId id, const Point3& x) {
  if (!contains(case_geometry(id), x, 1e-12)) {
    throw std::out_of_range("point outside the geometry of " + case_name(id));
  }
  const double z = x[2];
  switch (id) {
    case CaseId::Case1Parabolic: {
      const double s = 1.0 + 2.0 * z;
      return z_profile(300.0 * z / s, 300.0 / (s * s), -1200.0 / (s * s * s));
    }
    case CaseId::Case1Exponential: {
      const double C = kTopValue / (1.0 - std::exp(-2.0));
      const double e = std::exp(-2.0 * z);
      return z_profile(C * (1.0 - e), 2.0 * C * e, -4.0 * C * e);
    }
    case CaseId::Case1Trigonometric: {
      // phi = K sin z / (cos z + 2 sin z); the numerator of phi' simplifies to 1.
      const double K = kTopValue * (std::cos(1.0) / std::sin(1.0) + 2.0);
      const double s = std::sin(z), c = std::cos(z);
      const double den = c + 2.0 * s;
      return z_profile(K * s / den, K / (den * den), -2.0 * K * (2.0 * c - s) / (den * den * den));
    }
    case CaseId::Case2Poly3D:
      return case2_phi(x);
    case CaseId::Case3Cylinder:
      return case3_phi(x);
  }
  throw std::invalid_argument("unknown case");
}

}  // namespace dcm
