#include "dcm/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "dcm/detail/names.hpp"
#include "dcm/errors.hpp"

namespace dcm {
namespace {

constexpr std::uint32_t kPrimes[] = {2, 3, 5};

// Direction numbers for the first three Sobol dimensions (Joe-Kuo).
// Dimension 1 is the van der Corput sequence; dimensions 2 and 3 use the
// primitive polynomials x+1 and x^2+x+1.
struct SobolDim {
  unsigned degree;
  unsigned poly;  // interior coefficients a_1..a_{s-1}
  std::array<std::uint32_t, 2> m;
};
constexpr SobolDim kSobolDims[] = {{1, 0, {1, 0}}, {2, 1, {1, 3}}};

constexpr unsigned kSobolBits = 32;

std::array<std::uint32_t, kSobolBits> sobol_directions(std::size_t dim) {
  std::array<std::uint32_t, kSobolBits> v{};
  if (dim == 0) {
    for (unsigned k = 0; k < kSobolBits; ++k) v[k] = 1u << (31 - k);
    return v;
  }
  const SobolDim& d = kSobolDims[dim - 1];
  for (unsigned k = 0; k < d.degree; ++k) v[k] = d.m[k] << (31 - k);
  for (unsigned k = d.degree; k < kSobolBits; ++k) {
    v[k] = v[k - d.degree] ^ (v[k - d.degree] >> d.degree);
    for (unsigned j = 1; j < d.degree; ++j) {
      if ((d.poly >> (d.degree - 1 - j)) & 1u) v[k] ^= v[k - j];
    }
  }
  return v;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::mt19937_64 stream_rng(const SamplerKind& kind, std::uint64_t stream) {
  const std::uint64_t salt = static_cast<std::uint64_t>(kind.type) * 0xd1b54a32d192ed03ULL;
  return std::mt19937_64(splitmix64(kind.seed ^ salt ^ splitmix64(stream)));
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
}

std::vector<double> points_for_stream(const SamplerKind& kind, std::size_t n, std::size_t dim,
                                      std::uint64_t stream) {
  if (n == 0) throw std::invalid_argument("sample count must be at least 1");
  if (dim < 1 || dim > 3) throw std::invalid_argument("sample dimension must be 1, 2 or 3");
  std::vector<double> pts(n * dim);
  switch (kind.type) {
    case SamplerType::Halton:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 0; d < dim; ++d) pts[i * dim + d] = radical_inverse(i + 1, kPrimes[d]);
      break;
    case SamplerType::Hammersley:
      for (std::size_t i = 0; i < n; ++i) {
        pts[i * dim] = static_cast<double>(i) / static_cast<double>(n);
        for (std::size_t d = 1; d < dim; ++d) pts[i * dim + d] = radical_inverse(i, kPrimes[d - 1]);
      }
      break;
    case SamplerType::Sobol: {
      std::array<std::array<std::uint32_t, kSobolBits>, 3> dirs{};
      for (std::size_t d = 0; d < dim; ++d) dirs[d] = sobol_directions(d);
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t idx = i + 1;  // skip the origin
        const std::uint64_t gray = idx ^ (idx >> 1);
        for (std::size_t d = 0; d < dim; ++d) {
          std::uint32_t x = 0;
          for (unsigned k = 0; k < kSobolBits && (gray >> k) != 0; ++k)
            if ((gray >> k) & 1u) x ^= dirs[d][k];
          pts[i * dim + d] = static_cast<double>(x) * 0x1.0p-32;
        }
      }
      break;
    }
    case SamplerType::KorobovLattice: {
      const std::uint64_t a = kind.korobov_generator;
      if (a == 0 || std::gcd(a, static_cast<std::uint64_t>(n)) != 1) {
        throw std::invalid_argument("Korobov generator " + std::to_string(a) +
                                    " is not coprime with n = " + std::to_string(n));
      }
      std::array<std::uint64_t, 3> z{1, 0, 0};
      for (std::size_t d = 1; d < dim; ++d) z[d] = mulmod(z[d - 1], a % n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 0; d < dim; ++d)
          pts[i * dim + d] = static_cast<double>(mulmod(i, z[d] % n, n)) / static_cast<double>(n);
      break;
    }
    case SamplerType::LatinHypercube: {
      auto rng = stream_rng(kind, stream);
      std::vector<std::size_t> perm(n);
      const double nd = static_cast<double>(n);
      for (std::size_t d = 0; d < dim; ++d) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t i = n; i > 1; --i) {
          const std::size_t j = static_cast<std::size_t>(rng() % i);
          std::swap(perm[i - 1], perm[j]);
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double u = std::min(uniform01(rng), 1.0 - 1e-9);
          pts[i * dim + d] = (static_cast<double>(perm[i]) + u) / nd;
        }
      }
      break;
    }
    case SamplerType::MonteCarlo:
    case SamplerType::UniformRandom: {
      auto rng = stream_rng(kind, stream);
      for (auto& p : pts) p = uniform01(rng);
      break;
    }
  }
  return pts;
}

// Maps [0,1) into the open interval so grid-aligned sequences stay off the boundary.
double contract(double u, std::size_t n) {
  const double d = 0.5 / static_cast<double>(n);
  return (u + d) / (1.0 + 2.0 * d);
}

}  // namespace

double radical_inverse(std::uint64_t i, std::uint32_t base) {
  double result = 0.0;
  double scale = 1.0 / base;
  while (i > 0) {
    result += static_cast<double>(i % base) * scale;
    i /= base;
    scale /= base;
  }
  return result;
}

std::string sampler_name(SamplerType type) {
  switch (type) {
    case SamplerType::Halton: return "halton";
    case SamplerType::Hammersley: return "hammersley";
    case SamplerType::Sobol: return "sobol";
    case SamplerType::KorobovLattice: return "korobov";
    case SamplerType::LatinHypercube: return "latin_hypercube";
    case SamplerType::MonteCarlo: return "monte_carlo";
    case SamplerType::UniformRandom: return "random";
  }
  return "unknown";
}

SamplerType parse_sampler(std::string_view name) {
  const auto key = detail::normalize_name(name);
  for (auto t : kAllSamplers)
    if (detail::normalize_name(sampler_name(t)) == key) return t;
  if (key == "lhs") return SamplerType::LatinHypercube;
  if (key == "korobovlattice") return SamplerType::KorobovLattice;
  if (key == "uniformrandom") return SamplerType::UniformRandom;
  if (key == "montecarlo" || key == "mc") return SamplerType::MonteCarlo;
  throw ConfigError("unknown sampler '" + std::string(name) + "'");
}

std::vector<double> unit_points(const SamplerKind& kind, std::size_t n, std::size_t dim) {
  return points_for_stream(kind, n, dim, 0);
}

void validate(const Geometry& geom) {
  if (const auto* c = std::get_if<AnnularCylinder>(&geom)) {
    if (!(c->r_inner > 0.0) || !(c->r_outer > 0.0) || !(c->height > 0.0)) {
      throw std::invalid_argument("cylinder dimensions must be positive");
    }
    if (!(c->r_inner < c->r_outer)) throw std::invalid_argument("r_inner must be below r_outer");
  }
}

bool contains(const Geometry& geom, const Point3& x, double tol) {
  if (std::holds_alternative<UnitCube>(geom)) {
    return std::all_of(x.begin(), x.end(), [tol](double v) { return v >= -tol && v <= 1.0 + tol; });
  }
  const auto& c = std::get<AnnularCylinder>(geom);
  const double r = std::hypot(x[0], x[1]);
  return r >= c.r_inner - tol && r <= c.r_outer + tol && x[2] >= -tol && x[2] <= c.height + tol;
}

std::string face_name(Face f) {
  switch (f) {
    case Face::XMin: return "x_min";
    case Face::XMax: return "x_max";
    case Face::YMin: return "y_min";
    case Face::YMax: return "y_max";
    case Face::ZMin: return "z_min";
    case Face::ZMax: return "z_max";
    case Face::Inner: return "inner";
    case Face::Outer: return "outer";
    case Face::Bottom: return "bottom";
    case Face::Top: return "top";
  }
  return "unknown";
}

std::vector<Face> faces_of(const Geometry& geom) {
  if (std::holds_alternative<UnitCube>(geom))
    return {Face::XMin, Face::XMax, Face::YMin, Face::YMax, Face::ZMin, Face::ZMax};
  return {Face::Inner, Face::Outer, Face::Bottom, Face::Top};
}

namespace {

BoundaryPoint cube_face_point(Face f, double u, double v) {
  switch (f) {
    case Face::XMin: return {{0.0, u, v}, {-1.0, 0.0, 0.0}, f};
    case Face::XMax: return {{1.0, u, v}, {1.0, 0.0, 0.0}, f};
    case Face::YMin: return {{u, 0.0, v}, {0.0, -1.0, 0.0}, f};
    case Face::YMax: return {{u, 1.0, v}, {0.0, 1.0, 0.0}, f};
    case Face::ZMin: return {{u, v, 0.0}, {0.0, 0.0, -1.0}, f};
    default: return {{u, v, 1.0}, {0.0, 0.0, 1.0}, f};
  }
}

double area_uniform_radius(const AnnularCylinder& c, double u) {
  const double ri2 = c.r_inner * c.r_inner;
  return std::sqrt(ri2 + u * (c.r_outer * c.r_outer - ri2));
}

BoundaryPoint cylinder_face_point(const AnnularCylinder& c, Face f, double u, double v) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (f == Face::Inner || f == Face::Outer) {
    const double th = two_pi * u;
    const double r = f == Face::Inner ? c.r_inner : c.r_outer;
    const double sgn = f == Face::Inner ? -1.0 : 1.0;
    return {{r * std::cos(th), r * std::sin(th), v * c.height},
            {sgn * std::cos(th), sgn * std::sin(th), 0.0},
            f};
  }
  const double r = area_uniform_radius(c, u);
  const double th = two_pi * v;
  const bool top = f == Face::Top;
  return {{r * std::cos(th), r * std::sin(th), top ? c.height : 0.0}, {0.0, 0.0, top ? 1.0 : -1.0}, f};
}

}  // namespace

CollocationSet sample_domain(const SamplerKind& kind, const Geometry& geom, std::size_t n_interior,
                             std::size_t n_per_face) {
  validate(geom);
  if (n_interior == 0 || n_per_face == 0) throw std::invalid_argument("point counts must be at least 1");
  CollocationSet set;
  const auto inner = points_for_stream(kind, n_interior, 3, 0);
  set.interior.reserve(n_interior);
  for (std::size_t i = 0; i < n_interior; ++i) {
    const double u = contract(inner[3 * i], n_interior);
    const double v = contract(inner[3 * i + 1], n_interior);
    const double w = contract(inner[3 * i + 2], n_interior);
    if (const auto* c = std::get_if<AnnularCylinder>(&geom)) {
      const double r = area_uniform_radius(*c, u);
      const double th = 2.0 * std::numbers::pi * v;
      set.interior.push_back({r * std::cos(th), r * std::sin(th), w * c->height});
    } else {
      set.interior.push_back({u, v, w});
    }
  }

  const auto faces = faces_of(geom);
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    const auto pts = points_for_stream(kind, n_per_face, 2, fi + 1);
    for (std::size_t i = 0; i < n_per_face; ++i) {
      const double u = contract(pts[2 * i], n_per_face);
      const double v = contract(pts[2 * i + 1], n_per_face);
      if (const auto* c = std::get_if<AnnularCylinder>(&geom)) {
        set.boundary.push_back(cylinder_face_point(*c, faces[fi], u, v));
      } else {
        set.boundary.push_back(cube_face_point(faces[fi], u, v));
      }
    }
  }
  return set;
}

}  // namespace dcm
