#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dcm/jet.hpp"

namespace dcm {

enum class SamplerType {
  Halton,
  Hammersley,
  Sobol,
  KorobovLattice,
  LatinHypercube,
  MonteCarlo,
  UniformRandom,
};

inline constexpr std::uint64_t kDefaultKorobovGenerator = 17;

struct SamplerKind {
  SamplerType type = SamplerType::LatinHypercube;
  std::uint64_t korobov_generator = kDefaultKorobovGenerator;
  std::uint64_t seed = 0;  // LatinHypercube, MonteCarlo, UniformRandom only

  bool seeded() const {
    return type == SamplerType::LatinHypercube || type == SamplerType::MonteCarlo ||
           type == SamplerType::UniformRandom;
  }
};

inline constexpr SamplerType kAllSamplers[] = {
    SamplerType::Halton,         SamplerType::Hammersley,     SamplerType::Sobol,
    SamplerType::KorobovLattice, SamplerType::LatinHypercube, SamplerType::MonteCarlo,
    SamplerType::UniformRandom,
};

std::string sampler_name(SamplerType type);
SamplerType parse_sampler(std::string_view name);

/// n points of dimension `dim`, row-major: point i occupies [i*dim, (i+1)*dim).
/// All coordinates lie in [0,1).
std::vector<double> unit_points(const SamplerKind& kind, std::size_t n, std::size_t dim);

/// Radical inverse of `i` in `base` (digit reversal about the radix point).
double radical_inverse(std::uint64_t i, std::uint32_t base);

struct UnitCube {};

struct AnnularCylinder {
  double r_inner = 0.3;
  double r_outer = 0.5;
  double height = 0.1;
};

using Geometry = std::variant<UnitCube, AnnularCylinder>;

/// Throws std::invalid_argument for non-positive lengths or r_inner >= r_outer.
void validate(const Geometry& geom);

/// True when x lies in the closed geometry (with `tol` slack).
bool contains(const Geometry& geom, const Point3& x, double tol = 1e-12);

enum class Face {
  XMin, XMax, YMin, YMax, ZMin, ZMax,  // unit cube
  Inner, Outer, Bottom, Top,           // annular cylinder
};

std::string face_name(Face f);

struct BoundaryPoint {
  Point3 x{};
  Vec3 normal{};  // outward, unit length
  Face face = Face::XMin;
  double prescribed = 0.0;  // phi_bar (Dirichlet) or q_bar (Neumann)
};

/// Interior points plus boundary points. `boundary` holds freshly sampled
/// face points; attach_case_bcs moves them into `dirichlet` / `neumann`.
struct CollocationSet {
  std::vector<Point3> interior;
  std::vector<BoundaryPoint> boundary;
  std::vector<BoundaryPoint> dirichlet;
  std::vector<BoundaryPoint> neumann;
};

/// Faces of the geometry in a fixed order.
std::vector<Face> faces_of(const Geometry& geom);

CollocationSet sample_domain(const SamplerKind& kind, const Geometry& geom, std::size_t n_interior,
                             std::size_t n_per_face);

}  // namespace dcm
