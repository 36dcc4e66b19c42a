#include "dcm/activation.hpp"

#include <algorithm>
#include <cmath>

#include "dcm/detail/names.hpp"
#include "dcm/errors.hpp"

namespace dcm {
namespace {

constexpr double kLeCunScale = 1.7159;
constexpr double kLeCunSlope = 2.0 / 3.0;

struct TanhDerivs {
  double t, d1, d2, d3;
};

TanhDerivs tanh_derivs(double x) {
  const double t = std::tanh(x);
  const double d1 = 1.0 - t * t;
  const double d2 = -2.0 * t * d1;
  const double d3 = -2.0 * d1 * d1 - 2.0 * t * d2;
  return {t, d1, d2, d3};
}

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// log(1 + e^x) without overflow.
double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

struct LogisticDerivs {
  double s, d1, d2, d3;
};

LogisticDerivs logistic_derivs(double x) {
  const double s = logistic(x);
  const double d1 = s * (1.0 - s);
  const double d2 = d1 * (1.0 - 2.0 * s);
  const double d3 = d2 * (1.0 - 2.0 * s) - 2.0 * d1 * d1;
  return {s, d1, d2, d3};
}

ActivationDerivs swish(double beta, double x) {
  // f = x s(bx); derivatives of s are taken with respect to its argument.
  const auto s = logistic_derivs(beta * x);
  const double b2 = beta * beta;
  return {x * s.s, s.s + beta * x * s.d1, 2.0 * beta * s.d1 + b2 * x * s.d2,
          3.0 * b2 * s.d2 + b2 * beta * x * s.d3};
}

ActivationDerivs mish(double x) {
  // f = x T, T = tanh(softplus(x)), softplus' = logistic.
  const auto s = logistic_derivs(x);
  const double T = std::tanh(softplus(x));
  const double sech2 = 1.0 - T * T;
  const double T1 = sech2 * s.s;
  const double T2 = -2.0 * T * T1 * s.s + sech2 * s.d1;
  const double T3 = -2.0 * T1 * T1 * s.s - 2.0 * T * T2 * s.s - 4.0 * T * T1 * s.d1 + sech2 * s.d2;
  return {x * T, T + x * T1, 2.0 * T1 + x * T2, 3.0 * T2 + x * T3};
}

}  // namespace

ActivationDerivs activation_derivs(const ActivationKind& kind, double x) {
  switch (kind.type) {
    case ActivationType::Tanh: {
      const auto t = tanh_derivs(x);
      return {t.t, t.d1, t.d2, t.d3};
    }
    case ActivationType::Sigmoid: {
      const auto s = logistic_derivs(x);
      return {s.s, s.d1, s.d2, s.d3};
    }
    case ActivationType::Swish:
      return swish(kind.beta, x);
    case ActivationType::Silu:
      return swish(1.0, x);
    case ActivationType::LeCunTanh: {
      const auto t = tanh_derivs(kLeCunSlope * x);
      const double a = kLeCunScale;
      const double b = kLeCunSlope;
      return {a * t.t, a * b * t.d1, a * b * b * t.d2, a * b * b * b * t.d3};
    }
    case ActivationType::BipolarSigmoid: {
      // (e^x - 1)/(e^x + 1) == tanh(x/2)
      const auto t = tanh_derivs(0.5 * x);
      return {t.t, 0.5 * t.d1, 0.25 * t.d2, 0.125 * t.d3};
    }
    case ActivationType::Mish:
      return mish(x);
    case ActivationType::Arctan: {
      const double q = 1.0 / (1.0 + x * x);
      return {std::atan(x), q, -2.0 * x * q * q, (6.0 * x * x - 2.0) * q * q * q};
    }
  }
  return {0.0, 0.0, 0.0, 0.0};
}

ActivationValue activation_eval(const ActivationKind& kind, double x) {
  const auto d = activation_derivs(kind, x);
  return {d.f, d.d1, d.d2};
}

std::string activation_name(ActivationType type) {
  switch (type) {
    case ActivationType::Tanh: return "tanh";
    case ActivationType::Sigmoid: return "sigmoid";
    case ActivationType::Swish: return "swish";
    case ActivationType::LeCunTanh: return "lecun_tanh";
    case ActivationType::BipolarSigmoid: return "bipolar_sigmoid";
    case ActivationType::Mish: return "mish";
    case ActivationType::Arctan: return "arctan";
    case ActivationType::Silu: return "silu";
  }
  return "unknown";
}

ActivationType parse_activation(std::string_view name) {
  const auto key = detail::normalize_name(name);
  for (auto t : kAllActivations) {
    if (detail::normalize_name(activation_name(t)) == key) return t;
  }
  if (key == "atan") return ActivationType::Arctan;
  throw ConfigError("unknown activation '" + std::string(name) + "'");
}

}  // namespace dcm
