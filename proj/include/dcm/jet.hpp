#pragma once

#include <array>

namespace dcm {

using Point3 = std::array<double, 3>;
using Vec3 = std::array<double, 3>;

/// Value, gradient and pure second derivatives d^2/dx_i^2 of a scalar field
/// at one point. Mixed partials are never carried.
struct JetTriple {
  double value = 0.0;
  Vec3 grad{0.0, 0.0, 0.0};
  Vec3 lap_diag{0.0, 0.0, 0.0};

  double laplacian() const { return lap_diag[0] + lap_diag[1] + lap_diag[2]; }
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// Anything that can report a JetTriple at a point: the network, the
/// closed-form case solutions, test fixtures.
class ScalarField {
 public:
  virtual ~ScalarField() = default;
  virtual JetTriple jet(const Point3& x) const = 0;
};

}  // namespace dcm
