#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dcm/evaluate.hpp"
#include "dcm/physics.hpp"

using namespace dcm;

namespace {

Point3 random_point(CaseId id, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.02, 0.98);
  if (id != CaseId::Case3Cylinder) return {u(rng), u(rng), u(rng)};
  const double r = 0.3 + 0.2 * u(rng), t = 2 * M_PI * u(rng), z = 0.1 * u(rng);
  return {r * std::cos(t), r * std::sin(t), z};
}

// div(k grad phi) by nested central differences of values only
double fd_divergence(CaseId id, const Point3& x, double h) {
  const auto m = case_material(id);
  auto phi = [&](const Point3& p) { return analytic_phi(id, p).value; };
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    Point3 xp = x, xm = x, xpp = x, xmm = x;
    xp[i] += h / 2;
    xm[i] -= h / 2;
    xpp[i] += h;
    xmm[i] -= h;
    const double fp = conductivity(m, xp).k * (phi(xpp) - phi(x)) / h;
    const double fm = conductivity(m, xm).k * (phi(x) - phi(xmm)) / h;
    s += (fp - fm) / h;
  }
  return s;
}

struct Zero final : ScalarField {
  JetTriple jet(const Point3&) const override { return {}; }
};

}  // namespace

TEST(Cases, OracleValues) {
  EXPECT_NEAR(analytic_phi(CaseId::Case1Parabolic, {0.5, 0.5, 1.0}).value, 100.0, 1e-12);
  EXPECT_NEAR(analytic_phi(CaseId::Case1Parabolic, {0.5, 0.5, 0.5}).value, 75.0, 1e-12);
  EXPECT_EQ(analytic_phi(CaseId::Case1Exponential, {0.5, 0.5, 0.0}).value, 0.0);
  EXPECT_NEAR(analytic_phi(CaseId::Case1Exponential, {0.5, 0.5, 1.0}).value, 100.0, 1e-12);
  EXPECT_NEAR(analytic_phi(CaseId::Case1Trigonometric, {0.5, 0.5, 1.0}).value, 100.0, 1e-12);
  EXPECT_NEAR(analytic_phi(CaseId::Case3Cylinder, {0.5, 0.0, 0.05}).value, 100.0, 1e-12);
  EXPECT_NEAR(analytic_phi(CaseId::Case3Cylinder, {0.0, -0.3, 0.05}).value, 0.0, 1e-12);
  const double g = 5 + 0.2 * 0.5 + 0.4 * 0.5 + 0.6 * 0.5 + 0.1 * 0.25 + 0.2 * 0.25 + 0.3 * 0.25 + 0.7 * 0.125;
  EXPECT_NEAR(analytic_phi(CaseId::Case2Poly3D, {0.5, 0.5, 0.5}).value, 0.125 / g, 1e-15);
}

TEST(Cases, OutsideGeometryThrows) {
  EXPECT_THROW(analytic_phi(CaseId::Case1Parabolic, {0.5, 0.5, 1.5}), std::out_of_range);
  EXPECT_THROW(analytic_phi(CaseId::Case3Cylinder, {0.1, 0.0, 0.05}), std::out_of_range);
  EXPECT_THROW(analytic_phi(CaseId::Case3Cylinder, {0.4, 0.0, 0.2}), std::out_of_range);
}

TEST(Cases, NamesRoundTrip) {
  for (auto id : kAllCases) EXPECT_EQ(parse_case(case_name(id)), id);
}

TEST(Cases, JetsMatchFiniteDifferencesOfValues) {
  std::mt19937_64 rng(12);
  const double h = 1e-4;
  for (auto id : kAllCases) {
    for (int n = 0; n < 100; ++n) {
      const auto x = random_point(id, rng);
      const auto j = analytic_phi(id, x);
      for (int i = 0; i < 3; ++i) {
        Point3 xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        const double fp = analytic_phi(id, xp).value, fm = analytic_phi(id, xm).value;
        const double gs = std::max({1.0, std::abs(j.value), std::abs(j.grad[i])});
        const double ls = std::max({1.0, std::abs(j.value), std::abs(j.lap_diag[i])});
        EXPECT_NEAR(j.grad[i], (fp - fm) / (2 * h), 1e-6 * gs) << case_name(id);
        EXPECT_NEAR(j.lap_diag[i], (fp - 2 * j.value + fm) / (h * h), 1e-4 * ls) << case_name(id);
      }
    }
  }
}

TEST(Cases, OraclesAnnihilateTheOperator) {
  std::mt19937_64 rng(7);
  for (auto id : kAllCases) {
    const AnalyticSolution sol(id);
    const auto m = case_material(id);
    for (int n = 0; n < 1000; ++n) {
      const auto x = random_point(id, rng);
      ASSERT_LE(std::abs(pde_residual(sol, m, x)), 1e-9) << case_name(id);
    }
  }
}

TEST(Cases, DivergenceFormVanishesByFiniteDifferences) {
  // Independent of the expanded residual: conservative differences of k dphi.
  std::mt19937_64 rng(8);
  for (auto id : kAllCases) {
    for (int n = 0; n < 20; ++n) {
      const auto x = random_point(id, rng);
      // relative to the size of a single flux difference term
      const double scale = conductivity(case_material(id), x).k * 100.0;
      EXPECT_LE(std::abs(fd_divergence(id, x, 1e-3)), 1e-3 * scale) << case_name(id);
    }
  }
}

TEST(Cases, RadialOracleAgreesWithDiscreteBvp) {
  // (r phi')' = 0 on [0.3, 0.5], phi(0.3) = 0, phi(0.5) = 100, conservative
  // second-order differences solved by the Thomas algorithm.
  const int n = 4000;
  const double a = 0.3, b = 0.5, h = (b - a) / n;
  std::vector<double> lo(n - 1), di(n - 1), up(n - 1), rhs(n - 1, 0.0);
  for (int i = 1; i < n; ++i) {
    const double rm = a + (i - 0.5) * h, rp = a + (i + 0.5) * h;
    lo[i - 1] = rm;
    di[i - 1] = -(rm + rp);
    up[i - 1] = rp;
  }
  rhs[n - 2] -= up[n - 2] * 100.0;
  for (int i = 1; i < n - 1; ++i) {
    const double w = lo[i] / di[i - 1];
    di[i] -= w * up[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> phi(n - 1);
  phi[n - 2] = rhs[n - 2] / di[n - 2];
  for (int i = n - 3; i >= 0; --i) phi[i] = (rhs[i] - up[i] * phi[i + 1]) / di[i];
  for (int i = 200; i < n - 1; i += 400) {
    const double r = a + (i + 1) * h;
    for (double z : {0.01, 0.05, 0.09}) {
      const double t = 0.7;
      EXPECT_NEAR(analytic_phi(CaseId::Case3Cylinder, {r * std::cos(t), r * std::sin(t), z}).value, phi[i], 1e-5);
    }
  }
}

TEST(Cases, CaseOneFluxIsConstantAlongZ) {
  const double expected[] = {-1500.0, -1000.0 / (1.0 - std::exp(-2.0)), -500.0 * (1.0 / std::tan(1.0) + 2.0)};
  const CaseId ids[] = {CaseId::Case1Parabolic, CaseId::Case1Exponential, CaseId::Case1Trigonometric};
  for (int c = 0; c < 3; ++c) {
    const auto prof = default_flux_profile(ids[c], AnalyticSolution(ids[c]), 101);
    double lo = 1e300, hi = -1e300;
    for (const auto& s : prof) {
      lo = std::min(lo, s.q_exact);
      hi = std::max(hi, s.q_exact);
      EXPECT_EQ(s.q_pred, s.q_exact);
    }
    EXPECT_LE(hi - lo, 1e-9) << case_name(ids[c]);
    EXPECT_NEAR(lo, expected[c], 1e-9) << case_name(ids[c]);
  }
}

TEST(Cases, TrigonometricFluxByFiniteDifferences) {
  // q = -k dphi/dz from value differences only
  const auto m = case_material(CaseId::Case1Trigonometric);
  const double h = 1e-5;
  for (double z : {0.2, 0.5, 0.8}) {
    const double dphi = (analytic_phi(CaseId::Case1Trigonometric, {0.5, 0.5, z + h}).value -
                         analytic_phi(CaseId::Case1Trigonometric, {0.5, 0.5, z - h}).value) /
                        (2 * h);
    EXPECT_NEAR(-conductivity(m, {0.5, 0.5, z}).k * dphi, -500.0 * (1.0 / std::tan(1.0) + 2.0), 1e-4);
  }
}

TEST(Cases, BoundaryDataConsistentWithOracle) {
  for (auto id : kAllCases) {
    SamplerKind k;
    const auto set = attach_case_bcs(id, sample_domain(k, case_geometry(id), 20, 50));
    const AnalyticSolution sol(id);
    const auto m = case_material(id);
    for (const auto& b : set.dirichlet) EXPECT_NEAR(sol.jet(b.x).value, b.prescribed, 1e-10) << case_name(id);
    for (const auto& b : set.neumann) EXPECT_NEAR(flux(sol, m, b.x, b.normal), b.prescribed, 1e-9) << case_name(id);
  }
}

TEST(Metric, ExactPredictionHasZeroError) {
  for (auto id : kAllCases) {
    const auto ev = evaluate_case(id, AnalyticSolution(id), 9);
    EXPECT_EQ(ev.metric.relative_error, 0.0);
    EXPECT_EQ(ev.metric.max_abs_error, 0.0);
    EXPECT_EQ(ev.metric.flux_relative_error, 0.0);
  }
}

TEST(Metric, ZeroPredictionHasUnitError) {
  const auto ev = evaluate_case(CaseId::Case1Exponential, Zero{}, 11);
  EXPECT_EQ(ev.table.rows.size(), 11u * 11 * 11);
  EXPECT_DOUBLE_EQ(ev.metric.relative_error, 1.0);
  EXPECT_DOUBLE_EQ(ev.metric.l2_relative_error, 1.0);
}

TEST(Metric, HandComputedAndTriangleInequality) {
  const std::vector<double> exact{3.0, 4.0};
  const std::vector<double> pred{6.0, 8.0};
  const auto m = compare(pred, exact);
  EXPECT_DOUBLE_EQ(m.relative_error, 1.0);
  EXPECT_DOUBLE_EQ(m.max_abs_error, 4.0);
  EXPECT_DOUBLE_EQ(m.l2_relative_error, 1.0);
  // | ||p|| - ||e|| | <= ||p - e||
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 100; ++t) {
    std::vector<double> a(20), b(20);
    for (int i = 0; i < 20; ++i) {
      a[i] = nd(rng);
      b[i] = nd(rng);
    }
    const auto r = compare(a, b);
    EXPECT_LE(r.relative_error, r.l2_relative_error + 1e-15);
  }
  EXPECT_THROW(compare(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}), std::invalid_argument);
}

TEST(Metric, GridShapes) {
  const auto cube = evaluation_grid(CaseId::Case1Parabolic, 2);
  EXPECT_EQ(cube.rows.size(), 8u);
  EXPECT_DOUBLE_EQ(cube.rows[0].x[0], 0.25);
  EXPECT_DOUBLE_EQ(cube.rows[1].x[0], 0.75);
  EXPECT_DOUBLE_EQ(cube.rows[1].x[1], 0.25);
  const auto cyl = evaluation_grid(CaseId::Case3Cylinder, 21);
  EXPECT_EQ(cyl.dims[0], 21u);
  EXPECT_EQ(cyl.dims[1], 48u);
  EXPECT_EQ(cyl.dims[2], 5u);
  for (const auto& r : cyl.rows) EXPECT_TRUE(contains(AnnularCylinder{}, r.x));
  EXPECT_THROW(evaluation_grid(CaseId::Case1Parabolic, 1), std::invalid_argument);
}
