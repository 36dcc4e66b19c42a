#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dcm/activation.hpp"
#include "dcm/errors.hpp"

using namespace dcm;

namespace {

std::vector<ActivationKind> all_kinds() {
  std::vector<ActivationKind> out;
  for (auto t : kAllActivations) out.push_back({t, 1.0});
  out.push_back({ActivationType::Swish, 1.7});
  return out;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1.0); }

}  // namespace

TEST(Activation, ClosedFormValuesAtKnownPoints) {
  const auto t = activation_eval({ActivationType::Tanh}, 0.0);
  EXPECT_DOUBLE_EQ(t.f, 0.0);
  EXPECT_DOUBLE_EQ(t.d1, 1.0);
  EXPECT_DOUBLE_EQ(t.d2, 0.0);

  const auto s = activation_eval({ActivationType::Sigmoid}, 0.0);
  EXPECT_DOUBLE_EQ(s.f, 0.5);
  EXPECT_DOUBLE_EQ(s.d1, 0.25);
  EXPECT_DOUBLE_EQ(s.d2, 0.0);

  // d/dx atan = 1/(1+x^2), d2 = -2x/(1+x^2)^2
  const auto a = activation_eval({ActivationType::Arctan}, 1.0);
  EXPECT_NEAR(a.f, std::numbers::pi / 4.0, 1e-15);
  EXPECT_NEAR(a.d1, 0.5, 1e-15);
  EXPECT_NEAR(a.d2, -0.5, 1e-15);

  const auto l = activation_eval({ActivationType::LeCunTanh}, 0.0);
  EXPECT_DOUBLE_EQ(l.f, 0.0);
  EXPECT_NEAR(l.d1, 1.7159 * 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(l.d2, 0.0);
}

TEST(Activation, DefinitionsMatchTableForms) {
  for (double x : {-3.0, -0.4, 0.0, 0.7, 2.5}) {
    EXPECT_NEAR(activation_eval({ActivationType::BipolarSigmoid}, x).f, (std::exp(x) - 1) / (std::exp(x) + 1), 1e-15);
    EXPECT_NEAR(activation_eval({ActivationType::Mish}, x).f, x * std::tanh(std::log(1 + std::exp(x))), 1e-14);
    EXPECT_NEAR(activation_eval({ActivationType::Swish, 2.0}, x).f, x / (1 + std::exp(-2.0 * x)), 1e-15);
    EXPECT_NEAR(activation_eval({ActivationType::Silu}, x).f, x / (1 + std::exp(-x)), 1e-15);
    EXPECT_NEAR(activation_eval({ActivationType::Tanh}, x).f, (std::exp(2 * x) - 1) / (std::exp(2 * x) + 1), 1e-15);
  }
}

TEST(Activation, SiluEqualsSwishWithUnitBeta) {
  for (double x = -4.0; x <= 4.0; x += 0.37) {
    const auto a = activation_derivs({ActivationType::Silu}, x);
    const auto b = activation_derivs({ActivationType::Swish, 1.0}, x);
    EXPECT_EQ(a.f, b.f);
    EXPECT_EQ(a.d3, b.d3);
  }
}

TEST(Activation, DerivativesMatchCentralDifferences) {
  const double h = 1e-5;
  for (const auto& k : all_kinds()) {
    for (double x = -5.0; x <= 5.0; x += 0.25) {
      const auto d = activation_derivs(k, x);
      const auto p = activation_derivs(k, x + h);
      const auto m = activation_derivs(k, x - h);
      EXPECT_LE(rel_err(d.d1, (p.f - m.f) / (2 * h)), 1e-6) << activation_name(k.type) << " x=" << x;
      EXPECT_LE(rel_err(d.d2, (p.d1 - m.d1) / (2 * h)), 1e-6) << activation_name(k.type) << " x=" << x;
      EXPECT_LE(rel_err(d.d3, (p.d2 - m.d2) / (2 * h)), 1e-6) << activation_name(k.type) << " x=" << x;
    }
  }
}

TEST(Activation, SecondDerivativeFiniteOnWideScan) {
  for (const auto& k : all_kinds()) {
    for (int i = 0; i <= 10000; ++i) {
      const double x = -10.0 + 20.0 * i / 10000.0;
      const auto d = activation_derivs(k, x);
      ASSERT_TRUE(std::isfinite(d.f) && std::isfinite(d.d1) && std::isfinite(d.d2) && std::isfinite(d.d3))
          << activation_name(k.type) << " x=" << x;
    }
  }
  // far tails stay finite too
  for (const auto& k : all_kinds()) {
    for (double x : {-800.0, 800.0}) EXPECT_TRUE(std::isfinite(activation_derivs(k, x).d2));
  }
}

TEST(Activation, NamesParseCaseInsensitively) {
  EXPECT_EQ(parse_activation("mish"), ActivationType::Mish);
  EXPECT_EQ(parse_activation("MISH"), ActivationType::Mish);
  EXPECT_EQ(parse_activation("LeCun_Tanh"), ActivationType::LeCunTanh);
  EXPECT_EQ(parse_activation("bipolar-sigmoid"), ActivationType::BipolarSigmoid);
  for (auto t : kAllActivations) EXPECT_EQ(parse_activation(activation_name(t)), t);
  EXPECT_THROW(parse_activation("relu"), ConfigError);
}
