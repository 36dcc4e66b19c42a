#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dcm/physics.hpp"

using namespace dcm;

namespace {

struct ConstantField final : ScalarField {
  double c;
  explicit ConstantField(double c) : c(c) {}
  JetTriple jet(const Point3&) const override { return JetTriple{c, {}, {}}; }
};

struct LinearZ final : ScalarField {
  JetTriple jet(const Point3& x) const override { return JetTriple{x[2], {0, 0, 1}, {}}; }
};

// Oracle for k = 5 e^{2z}
const MaterialModel kExp5{Exponential{5.0, 1.0, 0.0, 1.0, Axis::Z}};

double fd_partial_k(const MaterialModel& m, Point3 x, int i, double h = 1e-6) {
  Point3 xp = x, xm = x;
  xp[i] += h;
  xm[i] -= h;
  return (conductivity(m, xp).k - conductivity(m, xm).k) / (2 * h);
}

}  // namespace

TEST(Conductivity, ParabolicAtBottom) {
  const MaterialModel m{Parabolic{5.0, 1.0, 2.0, Axis::Z}};
  const auto c = conductivity(m, {0.3, 0.3, 0.0});
  EXPECT_DOUBLE_EQ(c.k, 5.0);
  EXPECT_DOUBLE_EQ(c.grad[0], 0.0);
  EXPECT_DOUBLE_EQ(c.grad[1], 0.0);
  EXPECT_DOUBLE_EQ(c.grad[2], 20.0);
}

TEST(Conductivity, ExponentialAtBottom) {
  const auto c = conductivity(kExp5, {0.5, 0.5, 0.0});
  EXPECT_DOUBLE_EQ(c.k, 5.0);
  EXPECT_DOUBLE_EQ(c.grad[2], 10.0);
  const auto c1 = conductivity(kExp5, {0.5, 0.5, 1.0});
  EXPECT_NEAR(c1.k, 5.0 * std::exp(2.0), 1e-12);
}

TEST(Conductivity, Poly3DAtOrigin) {
  const MaterialModel m{Poly3D{{5, .2, .4, .6, .1, .2, .3, .7}}};
  const auto c = conductivity(m, {0.0, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(c.k, 25.0);
  EXPECT_NEAR(c.grad[0], 2.0, 1e-14);
  EXPECT_NEAR(c.grad[1], 4.0, 1e-14);
  EXPECT_NEAR(c.grad[2], 6.0, 1e-14);
}

TEST(Conductivity, GradientMatchesFiniteDifferences) {
  const std::vector<MaterialModel> models{
      MaterialModel{Parabolic{5.0, 1.0, 2.0, Axis::Z}},
      MaterialModel{Parabolic{2.0, 1.0, 0.5, Axis::X}},
      kExp5,
      MaterialModel{Exponential{1.0, 2.0, 0.5, 1.3, Axis::Y}},
      MaterialModel{Trigonometric{5.0, 1.0, 2.0, 1.0, Axis::Z}},
      MaterialModel{Poly3D{{5, .2, .4, .6, .1, .2, .3, .7}}},
  };
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (const auto& m : models) {
    for (int n = 0; n < 50; ++n) {
      const Point3 x{u(rng), u(rng), u(rng)};
      const auto c = conductivity(m, x);
      for (int i = 0; i < 3; ++i)
        EXPECT_NEAR(c.grad[i], fd_partial_k(m, x, i), 1e-6 * std::max(1.0, std::abs(c.grad[i])))
            << describe(m);
    }
  }
}

TEST(Conductivity, NonPositiveLawRejected) {
  EXPECT_THROW(MaterialModel(Parabolic{0.0, 1.0, 2.0, Axis::Z}), std::invalid_argument);
  // 1 - z vanishes on the top face, which the scan grid includes
  EXPECT_THROW(MaterialModel(Parabolic{1.0, 1.0, -1.0, Axis::Z}), std::invalid_argument);
  EXPECT_THROW(MaterialModel(Exponential{-1.0, 1.0, 0.0, 1.0, Axis::Z}), std::invalid_argument);
}

TEST(Conductivity, ScaledMultipliesK) {
  const MaterialModel p{Poly3D{{5, .2, .4, .6, .1, .2, .3, .7}}};
  const Point3 x{0.2, 0.7, 0.4};
  EXPECT_NEAR(conductivity(p.scaled(4.0), x).k, 4.0 * conductivity(p, x).k, 1e-12);
  EXPECT_NEAR(conductivity(kExp5.scaled(3.0), x).k, 3.0 * conductivity(kExp5, x).k, 1e-12);
}

TEST(Residual, ConstantFieldIsHarmonicForAnyMaterial) {
  const ConstantField c(42.0);
  for (auto id : kAllCases) {
    const auto m = case_material(id);
    EXPECT_EQ(pde_residual(c, m, {0.4, 0.1, 0.05}), 0.0);
  }
}

TEST(Residual, ParabolicOracleAnnihilated) {
  const MaterialModel m{Parabolic{5.0, 1.0, 2.0, Axis::Z}};
  // phi = 300 z / (1 + 2z), hand-derived derivatives
  struct Oracle final : ScalarField {
    JetTriple jet(const Point3& x) const override {
      const double d = 1.0 + 2.0 * x[2];
      return JetTriple{300 * x[2] / d, {0, 0, 300 / (d * d)}, {0, 0, -1200 / (d * d * d)}};
    }
  } phi;
  for (double z = 0.05; z < 1.0; z += 0.1) EXPECT_LE(std::abs(pde_residual(phi, m, {0.5, 0.5, z})), 1e-9);
}

TEST(Residual, LinearFieldInExponentialMedium) {
  const LinearZ phi;
  for (double z : {0.0, 0.3, 0.8}) EXPECT_NEAR(pde_residual(phi, kExp5, {0.2, 0.2, z}), 10 * std::exp(2 * z), 1e-12);
}

TEST(Flux, ConstantFieldHasNoFlux) {
  EXPECT_EQ(flux(ConstantField(3.0), kExp5, {0.5, 0.5, 0.5}, {0, 0, 1}), 0.0);
}

TEST(Flux, CaseOneOraclesCarryConstantFlux) {
  const AnalyticSolution exp_sol(CaseId::Case1Exponential);
  const AnalyticSolution par_sol(CaseId::Case1Parabolic);
  const auto mexp = case_material(CaseId::Case1Exponential);
  const auto mpar = case_material(CaseId::Case1Parabolic);
  const double qexp = -1000.0 / (1.0 - std::exp(-2.0));
  for (double z = 0.0; z <= 1.0; z += 0.125) {
    EXPECT_NEAR(flux(exp_sol, mexp, {0.5, 0.5, z}, {0, 0, 1}), qexp, 1e-9);
    EXPECT_NEAR(flux(par_sol, mpar, {0.5, 0.5, z}, {0, 0, 1}), -1500.0, 1e-9);
  }
  EXPECT_NEAR(qexp, -1156.52, 5e-3);
}

TEST(Flux, RejectsNonUnitNormal) {
  EXPECT_THROW(flux(JetTriple{}, 1.0, {0, 0, 2}), std::invalid_argument);
  EXPECT_NO_THROW(flux(JetTriple{}, 1.0, {0, 0, 1}));
}

TEST(BoundaryConditions, CaseOneValues) {
  SamplerKind k;
  const auto set = attach_case_bcs(CaseId::Case1Exponential, sample_domain(k, UnitCube{}, 50, 20));
  EXPECT_TRUE(set.boundary.empty());
  EXPECT_EQ(set.dirichlet.size(), 40u);
  EXPECT_EQ(set.neumann.size(), 80u);
  for (const auto& b : set.dirichlet) {
    if (b.x[2] == 1.0) EXPECT_EQ(b.prescribed, 100.0);
    else EXPECT_EQ(b.prescribed, 0.0);
  }
  for (const auto& b : set.neumann) EXPECT_EQ(b.prescribed, 0.0);
}

TEST(BoundaryConditions, CaseThreeInnerIsZeroOuterIsHundred) {
  SamplerKind k;
  const auto set = attach_case_bcs(CaseId::Case3Cylinder, sample_domain(k, AnnularCylinder{}, 50, 20));
  ASSERT_EQ(set.dirichlet.size(), 40u);
  for (const auto& b : set.dirichlet) {
    if (b.face == Face::Inner) EXPECT_EQ(b.prescribed, 0.0);
    if (b.face == Face::Outer) EXPECT_EQ(b.prescribed, 100.0);
  }
  for (const auto& b : set.neumann) EXPECT_EQ(b.prescribed, 0.0);
}

TEST(BoundaryConditions, CaseTwoMatchesAnalyticData) {
  SamplerKind k;
  const auto set = attach_case_bcs(CaseId::Case2Poly3D, sample_domain(k, UnitCube{}, 50, 20));
  const auto m = case_material(CaseId::Case2Poly3D);
  const AnalyticSolution sol(CaseId::Case2Poly3D);
  for (const auto& b : set.dirichlet) EXPECT_NEAR(b.prescribed, sol.jet(b.x).value, 1e-12);
  for (const auto& b : set.neumann) EXPECT_NEAR(b.prescribed, flux(sol, m, b.x, b.normal), 1e-12);
}

TEST(BoundaryConditions, ForeignGeometryRejected) {
  SamplerKind k;
  EXPECT_THROW(attach_case_bcs(CaseId::Case3Cylinder, sample_domain(k, UnitCube{}, 10, 5)), std::invalid_argument);
  EXPECT_THROW(attach_case_bcs(CaseId::Case1Parabolic, sample_domain(k, AnnularCylinder{}, 10, 5)),
               std::invalid_argument);
}

TEST(Loss, ExactSolutionHasNegligibleResiduals) {
  for (auto id : kAllCases) {
    SamplerKind k;
    const auto set = attach_case_bcs(id, sample_domain(k, case_geometry(id), 400, 60));
    const auto r = assemble_loss(AnalyticSolution(id), case_material(id), set);
    EXPECT_LE(r.mse_g, 1e-18) << case_name(id);
    EXPECT_LE(r.mse_d, 1e-18) << case_name(id);
    EXPECT_LE(r.mse_n, 1e-18) << case_name(id);
  }
}

TEST(Loss, ZeroNetworkOnCaseOne) {
  SamplerKind k;
  const auto set = attach_case_bcs(CaseId::Case1Exponential, sample_domain(k, UnitCube{}, 100, 25));
  NetworkSpec spec;
  auto p = init_params(spec);
  for (auto& v : p.values()) v = 0.0;
  for (auto backend : {Backend::Serial, Backend::Parallel}) {
    const auto r = assemble_loss(p, kExp5, set, backend);
    EXPECT_EQ(r.mse_g, 0.0);
    EXPECT_EQ(r.mse_n, 0.0);
    // 25 points at phi_bar = 100 out of 50 Dirichlet points
    EXPECT_DOUBLE_EQ(r.mse_d, 100.0 * 100.0 * 25.0 / 50.0);
    EXPECT_DOUBLE_EQ(r.total, r.mse_g + r.mse_d + r.mse_n);
    EXPECT_EQ(r.n_dirichlet, 50u);
  }
  const auto f = assemble_loss(ConstantField(0.0), kExp5, set);
  EXPECT_DOUBLE_EQ(f.mse_d, 5000.0);
}

TEST(Loss, DuplicatingEveryPointLeavesMeansUnchanged) {
  SamplerKind k;
  auto set = attach_case_bcs(CaseId::Case1Parabolic, sample_domain(k, UnitCube{}, 64, 16));
  auto twice = set;
  twice.interior.insert(twice.interior.end(), set.interior.begin(), set.interior.end());
  twice.dirichlet.insert(twice.dirichlet.end(), set.dirichlet.begin(), set.dirichlet.end());
  twice.neumann.insert(twice.neumann.end(), set.neumann.begin(), set.neumann.end());
  NetworkSpec spec;
  spec.seed = 8;
  const auto p = init_params(spec);
  const auto m = case_material(CaseId::Case1Parabolic);
  const auto a = assemble_loss(p, m, set);
  const auto b = assemble_loss(p, m, twice);
  EXPECT_NEAR(a.mse_g, b.mse_g, 1e-12 * a.mse_g);
  EXPECT_NEAR(a.mse_d, b.mse_d, 1e-12 * a.mse_d);
  EXPECT_NEAR(a.mse_n, b.mse_n, 1e-12 * a.mse_n);
}

TEST(Loss, ScalingConductivityByPowerOfTwo) {
  // k -> c k multiplies PDE residuals and fluxes by c; Dirichlet untouched.
  SamplerKind k;
  const auto set = attach_case_bcs(CaseId::Case1Exponential, sample_domain(k, UnitCube{}, 128, 32));
  NetworkSpec spec;
  spec.seed = 2;
  const auto p = init_params(spec);
  const auto a = assemble_loss(p, kExp5, set);
  const auto b = assemble_loss(p, kExp5.scaled(4.0), set);
  EXPECT_NEAR(b.mse_g, 16.0 * a.mse_g, 1e-12 * b.mse_g);
  EXPECT_NEAR(b.mse_n, 16.0 * a.mse_n, 1e-12 * b.mse_n);
  EXPECT_EQ(b.mse_d, a.mse_d);
}

TEST(Loss, EmptyInteriorRejected) {
  CollocationSet set;
  NetworkSpec spec;
  EXPECT_THROW(assemble_loss(init_params(spec), kExp5, set), std::invalid_argument);
}

TEST(Loss, FullCollocationGradientMatchesFiniteDifferences) {
  // 3 -> 10 -> 10 -> 1 tanh net, 50 collocation points in total
  SamplerKind k;
  k.type = SamplerType::Halton;
  const auto set = attach_case_bcs(CaseId::Case1Exponential, sample_domain(k, UnitCube{}, 26, 4));
  NetworkSpec spec;
  spec.hidden_widths = {10, 10};
  spec.activation = {ActivationType::Tanh};
  spec.seed = 21;
  auto p = init_params(spec);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (auto& v : p.values()) v += u(rng);
  const auto lg = assemble_loss_grad(p, kExp5, set, Backend::Serial);
  const double h = 1e-5;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double keep = p.values()[i];
    p.values()[i] = keep + h;
    const double fp = assemble_loss(p, kExp5, set, Backend::Serial).total;
    p.values()[i] = keep - h;
    const double fm = assemble_loss(p, kExp5, set, Backend::Serial).total;
    p.values()[i] = keep;
    const double fd = (fp - fm) / (2 * h);
    ASSERT_LE(std::abs(lg.grad[i] - fd) / std::max(std::abs(fd), 1.0), 1e-5) << "param " << i;
  }
}
