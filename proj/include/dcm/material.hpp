#pragma once

#include <array>
#include <string>
#include <variant>

#include "dcm/jet.hpp"

namespace dcm {

enum class Axis { X = 0, Y = 1, Z = 2 };

/// k = k0 (a1 + a2 s)^2, s = coordinate along `axis`.
struct Parabolic {
  double k0 = 1.0, a1 = 1.0, a2 = 0.0;
  Axis axis = Axis::Z;
};

/// k = k0 (a1 e^{beta s} + a2 e^{-beta s})^2.
struct Exponential {
  double k0 = 1.0, a1 = 1.0, a2 = 0.0, beta = 1.0;
  Axis axis = Axis::Z;
};

/// k = k0 (a1 cos(beta s) + a2 sin(beta s))^2.
struct Trigonometric {
  double k0 = 1.0, a1 = 1.0, a2 = 0.0, beta = 1.0;
  Axis axis = Axis::Z;
};

/// k = (c0 + c1 x + c2 y + c3 z + c4 xy + c5 yz + c6 zx + c7 xyz)^2.
struct Poly3D {
  std::array<double, 8> c{1.0, 0, 0, 0, 0, 0, 0, 0};
};

/// Axis-aligned box used for the positivity scan.
struct Box {
  Point3 lo{0.0, 0.0, 0.0};
  Point3 hi{1.0, 1.0, 1.0};
};

struct Conductivity {
  double k;
  Vec3 grad;
};

class MaterialModel {
 public:
  using Law = std::variant<Parabolic, Exponential, Trigonometric, Poly3D>;

  /// Scans a 10x10x10 grid over `domain` and throws std::invalid_argument
  /// unless k > 0 (and finite) at every node.
  explicit MaterialModel(Law law, const Box& domain = {});

  const Law& law() const { return law_; }

  /// Same law with k0 (or, for Poly3D, k) multiplied by `factor` > 0.
  MaterialModel scaled(double factor) const;

 private:
  Law law_;
};

Conductivity conductivity(const MaterialModel& model, const Point3& x);

std::string describe(const MaterialModel& model);

}  // namespace dcm
