#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vorcell/voronoi.hpp"

namespace vorcell {

class DegreeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct DegreeReplica {
  std::uint64_t seed = 0;
  std::uint32_t prime = 0;
  std::optional<std::size_t> degree;
  /// Attempts used, including reseeds after an unlucky draw.
  unsigned attempts = 0;
  std::string error;
};

struct DegreeExperiment {
  /// The ideal and point of the first successful replica.
  std::optional<IdealSpec<Fp>> ideal;
  std::vector<Fp> y;
  unsigned codim = 0;
  std::uint64_t seed = 0;
  std::uint32_t prime = 0;
  /// Majority over the successful replicas.
  std::size_t degree = 0;
  bool stable = false;
  std::vector<DegreeReplica> replicas;
};

inline constexpr unsigned kMaxReseeds = 5;

/// Reduces I and y modulo p, adds c-1 random affine forms in u and returns the
/// quotient degree of the sliced Voronoi ideal. Reseeds the slice when the
/// result is not zero-dimensional. Replicas: (seed, p), (seed+1, p) and
/// (seed+2, q) with q the other of 32003 / 65537.
DegreeExperiment voronoi_degree_modp(const IdealSpec<Rational>& ideal, const std::vector<Rational>& y, unsigned c,
                                     std::uint32_t p = kDefaultPrime, std::uint64_t seed = 1,
                                     const GroebnerOptions& opts = GroebnerOptions::from_env());

/// A dense random hypersurface of degree d through a random point of F_p^n.
/// Homogeneous forms use only monomials of degree exactly d.
struct RandomHypersurface {
  IdealSpec<Fp> ideal;
  std::vector<Fp> y;
};

RandomHypersurface random_hypersurface(unsigned n, unsigned d, bool homogeneous, std::uint32_t p,
                                       std::uint64_t seed);

/// Voronoi degree of a random hypersurface, replicated as in voronoi_degree_modp.
/// Each replica draws its own hypersurface; singular draws are reseeded.
DegreeExperiment hypersurface_degree(unsigned n, unsigned d, bool homogeneous, std::uint32_t p = kDefaultPrime,
                                     std::uint64_t seed = 1,
                                     const GroebnerOptions& opts = GroebnerOptions::from_env());

/// One replica over F_p with an explicit slice seed.
std::optional<std::size_t> sliced_degree(const IdealSpec<Fp>& ideal, const std::vector<Fp>& y, unsigned c,
                                         std::uint64_t seed, const GroebnerOptions& opts);

std::int64_t formula_curve(std::int64_t d, std::int64_t g);
std::int64_t formula_surface(std::int64_t d, std::int64_t chi, std::int64_t g2);
std::int64_t formula_cone(std::int64_t d, std::int64_t g);
std::int64_t conjecture_hypersurface(std::int64_t n, std::int64_t d, bool homogeneous);
std::int64_t lowrank_voronoi_degree(std::int64_t m, std::int64_t n, std::int64_t r);

/// Genus of a smooth plane curve of degree d.
std::int64_t plane_curve_genus(std::int64_t d);

struct TableRow {
  int n;
  /// Values for d = 2, 3, ...
  std::vector<std::int64_t> values;
  /// The row's closed form in d, coefficients in ascending degree.
  std::vector<std::int64_t> row_poly;
};

/// Golden degree tables: inhomogeneous (false) and homogeneous (true) hypersurfaces.
std::span<const TableRow> golden_table(bool homogeneous);

std::int64_t eval_int_poly(std::span<const std::int64_t> coeffs, std::int64_t x);

}  // namespace vorcell
