#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vorcell/groebner.hpp"
#include "vorcell/univariate.hpp"

namespace vorcell {

class PointNotOnVariety : public std::invalid_argument {
public:
  PointNotOnVariety() : std::invalid_argument("point not on variety") {}
};

class SingularPoint : public std::invalid_argument {
public:
  explicit SingularPoint(const std::string& what) : std::invalid_argument(what) {}
};

/// The ring x1..xn, u1..un used by the pipeline. The x block is the input
/// ideal's variables; the u names are fresh.
struct PipelineRings {
  RingPtr x;
  RingPtr xu;
  RingPtr u;

  static PipelineRings make(const RingPtr& x_ring);
  std::size_t n() const { return x->nvars(); }
};

/// Rows: u - x, then the gradient of each generator. Entries live in rings.xu.
template <Coefficient K>
struct AugmentedJacobian {
  PipelineRings rings;
  std::vector<std::vector<Polynomial<K>>> rows;
};

template <Coefficient K>
AugmentedJacobian<K> augmented_jacobian(const IdealSpec<K>& ideal);

/// All k x k minors of a polynomial matrix, row subsets outer, column subsets inner.
template <Coefficient K>
std::vector<Polynomial<K>> minors(const std::vector<std::vector<Polynomial<K>>>& m, std::size_t k);

/// I + the (c+1)-minors of the augmented Jacobian, in rings.xu.
template <Coefficient K>
IdealSpec<K> normal_bundle_ideal(const IdealSpec<K>& ideal, unsigned c);

/// Rank of the Jacobian of the generators at y.
template <Coefficient K>
std::size_t jacobian_rank(const IdealSpec<K>& ideal, const std::vector<K>& y);

/// Affine-linear ideal in u of the normal space at y, in reduced row echelon form.
/// Checks that y is on the variety and that the Jacobian has rank c there unless
/// `allow_singular` is set.
template <Coefficient K>
IdealSpec<K> normal_space_ideal(const IdealSpec<K>& ideal, const std::vector<K>& y, unsigned c,
                                bool allow_singular = false);

/// I + N_I + N_I(y) + <|x-u|^2 - |y-u|^2> in rings.xu.
template <Coefficient K>
IdealSpec<K> critical_ideal(const IdealSpec<K>& ideal, const std::vector<K>& y, unsigned c,
                            bool allow_singular = false);

enum class VoronoiStrategy {
  /// Substitute the normal space, then saturate piece by piece in a small ring.
  Sliced,
  /// saturate(C, <x - y>) followed by eliminate(x), exactly as written.
  Direct,
};

template <Coefficient K>
struct VoronoiOptions {
  /// Used when the ideal carries no declared codimension.
  std::optional<unsigned> codim;
  bool allow_singular = false;
  VoronoiStrategy strategy = VoronoiStrategy::Sliced;
  /// Extra affine-linear forms in the u ring (PipelineRings::u), added to C.
  std::vector<Polynomial<K>> slices;
  /// Split zero-dimensional results over Q into rational points and the rest.
  bool decompose = true;
  GroebnerOptions groebner = GroebnerOptions::from_env();
};

template <Coefficient K>
struct VoronoiComponent {
  IdealSpec<K> ideal;
  /// Coordinates when the component is a single rational point.
  std::optional<std::vector<K>> point;
  /// false when Sturm certifies that the component has no real points.
  std::optional<bool> real;
};

template <Coefficient K>
struct VoronoiReport {
  IdealSpec<K> input;
  std::vector<K> y;
  unsigned codim = 0;
  PipelineRings rings;
  IdealSpec<K> normal_space;
  /// Reduced grevlex basis in rings.u.
  IdealSpec<K> voronoi_ideal;
  bool zero_dimensional = false;
  std::optional<std::size_t> degree;
  /// Monic generator of Vor restricted to the normal space, in the single free
  /// coordinate u_{boundary_var}, when that space is a line.
  std::optional<UPoly<K>> boundary_poly;
  std::optional<std::size_t> boundary_var;
  /// Linear part plus the squarefree boundary_poly: the radical of Vor.
  std::optional<IdealSpec<K>> radical;
  std::optional<std::size_t> radical_degree;
  /// The non-linear generator when Vor is principal modulo its linear part.
  std::optional<Polynomial<K>> boundary_hypersurface;
  std::optional<std::vector<VoronoiComponent<K>>> components;
  std::vector<std::pair<std::string, double>> timings;
};

template <Coefficient K>
VoronoiReport<K> voronoi_ideal(const IdealSpec<K>& ideal, const std::vector<K>& y,
                               const VoronoiOptions<K>& opts = {});

/// Boundary of the cell along u = y + lambda * grad f(y) for a hypersurface.
struct NormalLineBoundary {
  std::vector<Rational> direction;
  /// gcd of the Voronoi generators restricted to the line, monic in lambda.
  QPoly poly;
  std::vector<RootInterval> roots;
  std::vector<double> approx;
  std::optional<double> lower;
  std::optional<double> upper;
  /// Distance from y to the nearest boundary point; infinity when there is none.
  double reach = 0;
};

NormalLineBoundary boundary_on_normal_line(const VoronoiReport<Rational>& report);

#define VORCELL_VORONOI_EXTERN(K)                                                                     \
  extern template AugmentedJacobian<K> augmented_jacobian(const IdealSpec<K>&);                        \
  extern template std::vector<Polynomial<K>> minors(const std::vector<std::vector<Polynomial<K>>>&,    \
                                                    std::size_t);                                      \
  extern template IdealSpec<K> normal_bundle_ideal(const IdealSpec<K>&, unsigned);                     \
  extern template std::size_t jacobian_rank(const IdealSpec<K>&, const std::vector<K>&);               \
  extern template IdealSpec<K> normal_space_ideal(const IdealSpec<K>&, const std::vector<K>&, unsigned, \
                                                  bool);                                               \
  extern template IdealSpec<K> critical_ideal(const IdealSpec<K>&, const std::vector<K>&, unsigned,    \
                                              bool);                                                   \
  extern template VoronoiReport<K> voronoi_ideal(const IdealSpec<K>&, const std::vector<K>&,           \
                                                 const VoronoiOptions<K>&);

VORCELL_VORONOI_EXTERN(Rational)
VORCELL_VORONOI_EXTERN(Fp)

#undef VORCELL_VORONOI_EXTERN

}  // namespace vorcell
