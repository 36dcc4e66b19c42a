#pragma once

#include <string>
#include <string_view>

namespace dcm {

enum class ActivationType {
  Tanh,
  Sigmoid,
  Swish,
  LeCunTanh,
  BipolarSigmoid,
  Mish,
  Arctan,
  Silu,
};

/// Activation kind plus its parameter. Only Swish uses `beta`.
struct ActivationKind {
  ActivationType type = ActivationType::Arctan;
  double beta = 1.0;

  friend bool operator==(const ActivationKind&, const ActivationKind&) = default;
};

struct ActivationValue {
  double f;
  double d1;
  double d2;
};

/// sigma, sigma', sigma'' and sigma'''. The third derivative is only needed
/// when reversing through second-order jets.
struct ActivationDerivs {
  double f;
  double d1;
  double d2;
  double d3;
};

ActivationValue activation_eval(const ActivationKind& kind, double x);
ActivationDerivs activation_derivs(const ActivationKind& kind, double x);

/// Canonical lower-case name, e.g. "lecun_tanh".
std::string activation_name(ActivationType type);

/// Case-insensitive lookup; '_' and '-' are ignored. Throws ConfigError.
ActivationType parse_activation(std::string_view name);

inline constexpr ActivationType kAllActivations[] = {
    ActivationType::Tanh,      ActivationType::Sigmoid,        ActivationType::Swish,
    ActivationType::LeCunTanh, ActivationType::BipolarSigmoid, ActivationType::Mish,
    ActivationType::Arctan,    ActivationType::Silu,
};

}  // namespace dcm
