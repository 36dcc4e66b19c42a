#include "dcm/material.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dcm {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// k = k0 f(s)^2 with f, f' given: k' = 2 k0 f f'.
Conductivity along_axis(double k0, double f, double df, Axis axis) {
  Conductivity c{k0 * f * f, {0.0, 0.0, 0.0}};
  c.grad[static_cast<int>(axis)] = 2.0 * k0 * f * df;
  return c;
}

const char* axis_name(Axis a) { return a == Axis::X ? "x" : a == Axis::Y ? "y" : "z"; }

}  // namespace

Conductivity conductivity(const MaterialModel& model, const Point3& x) {
  return std::visit(
      overloaded{
          [&](const Parabolic& m) {
            const double s = x[static_cast<int>(m.axis)];
            return along_axis(m.k0, m.a1 + m.a2 * s, m.a2, m.axis);
          },
          [&](const Exponential& m) {
            const double s = x[static_cast<int>(m.axis)];
            const double ep = std::exp(m.beta * s);
            const double em = std::exp(-m.beta * s);
            return along_axis(m.k0, m.a1 * ep + m.a2 * em, m.beta * (m.a1 * ep - m.a2 * em), m.axis);
          },
          [&](const Trigonometric& m) {
            const double s = x[static_cast<int>(m.axis)];
            const double cs = std::cos(m.beta * s);
            const double sn = std::sin(m.beta * s);
            return along_axis(m.k0, m.a1 * cs + m.a2 * sn, m.beta * (m.a2 * cs - m.a1 * sn), m.axis);
          },
          [&](const Poly3D& m) {
            const auto& c = m.c;
            const double px = x[0], py = x[1], pz = x[2];
            const double g = c[0] + c[1] * px + c[2] * py + c[3] * pz + c[4] * px * py + c[5] * py * pz +
                             c[6] * pz * px + c[7] * px * py * pz;
            const Vec3 dg{c[1] + c[4] * py + c[6] * pz + c[7] * py * pz,
                          c[2] + c[4] * px + c[5] * pz + c[7] * px * pz,
                          c[3] + c[5] * py + c[6] * px + c[7] * px * py};
            return Conductivity{g * g, {2.0 * g * dg[0], 2.0 * g * dg[1], 2.0 * g * dg[2]}};
          },
      },
      model.law());
}

MaterialModel::MaterialModel(Law law, const Box& domain) : law_(std::move(law)) {
  constexpr int n = 10;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        Point3 x;
        const int idx[3] = {i, j, l};
        for (int d = 0; d < 3; ++d)
          x[d] = domain.lo[d] + (domain.hi[d] - domain.lo[d]) * idx[d] / static_cast<double>(n - 1);
        const double k = conductivity(*this, x).k;
        if (!(k > 0.0) || !std::isfinite(k)) {
          std::ostringstream os;
          os << "conductivity " << describe(*this) << " is not positive at (" << x[0] << ", " << x[1]
             << ", " << x[2] << ")";
          throw std::invalid_argument(os.str());
        }
      }
}

MaterialModel MaterialModel::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("scale factor must be positive");
  MaterialModel out = *this;
  std::visit(overloaded{
                 [&](Poly3D& m) {
                   // k = g^2, so scaling k by f scales every coefficient by sqrt(f)
                   for (auto& c : m.c) c *= std::sqrt(factor);
                 },
                 [&](auto& m) { m.k0 *= factor; },
             },
             out.law_);
  return out;
}

std::string describe(const MaterialModel& model) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const Parabolic& m) {
                   os << "parabolic(k0=" << m.k0 << ", a1=" << m.a1 << ", a2=" << m.a2
                      << ", axis=" << axis_name(m.axis) << ")";
                 },
                 [&](const Exponential& m) {
                   os << "exponential(k0=" << m.k0 << ", a1=" << m.a1 << ", a2=" << m.a2
                      << ", beta=" << m.beta << ", axis=" << axis_name(m.axis) << ")";
                 },
                 [&](const Trigonometric& m) {
                   os << "trigonometric(k0=" << m.k0 << ", a1=" << m.a1 << ", a2=" << m.a2
                      << ", beta=" << m.beta << ", axis=" << axis_name(m.axis) << ")";
                 },
                 [&](const Poly3D& m) {
                   os << "poly3d(";
                   for (std::size_t i = 0; i < m.c.size(); ++i) os << (i ? ", " : "") << m.c[i];
                   os << ")";
                 },
             },
             model.law());
  return os.str();
}

}  // namespace dcm
