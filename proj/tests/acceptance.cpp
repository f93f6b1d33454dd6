// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "vorcell/degree_lab.hpp"
#include "vorcell/lowrank.hpp"
#include "vorcell/sdp_relax.hpp"
#include "vorcell/voronoi.hpp"

using namespace vorcell;
using testing_support::qpoly;

namespace {

using QIdeal = IdealSpec<Rational>;

// Collects failed checks for one criterion.
struct Checker {
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

RingPtr xring(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return Ring::make(names, Field::rationals());
}

QIdeal ideal(const RingPtr& r, std::initializer_list<const char*> gens) {
  std::vector<Polynomial<Rational>> g;
  for (const char* s : gens) g.push_back(qpoly(r, s));
  return QIdeal(r, g);
}

std::vector<Rational> pt(std::initializer_list<long> v) { return std::vector<Rational>(v.begin(), v.end()); }

std::string str(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.7g", x);
  return buf;
}

// 1. Quadric surface at the origin.
void quadric_surface(Checker& c) {
  auto q = ideal(xring(3), {"x1^2 + x2^2 + x3^2 - 3*x1*x2 - 5*x1*x3 - 7*x2*x3 + x1 + x2 + x3"});
  auto rep = voronoi_ideal(q, pt({0, 0, 0}));
  auto expected = ideal(rep.rings.u, {"u1 - u3", "u2 - u3", "368*u3^3 + 71*u3^2 - 6*u3 - 1"});
  c.require(buchberger(rep.voronoi_ideal) == buchberger(expected), "reduced bases differ");

  // The normal line is t * (1, 1, 1), so u3 = t and the cubic is the boundary polynomial.
  const QPoly cubic(Field::rationals(), {Rational(-1), Rational(-6), Rational(71), Rational(368)});
  const auto roots = sturm_isolate(cubic, Rational(1, 10'000'000));
  double below = -1e300, above = 1e300;
  for (const auto& r : roots) {
    const double m = r.midpoint().to_double();
    if (m < 0) below = std::max(below, m);
    if (m > 0) above = std::min(above, m);
  }
  c.require(roots.size() == 3, "expected three real roots");
  c.require(std::abs(below + 0.106526) < 1e-5, "lower endpoint " + str(below));
  c.require(std::abs(above - 0.12225) < 1e-5, "upper endpoint " + str(above));
  auto nl = boundary_on_normal_line(rep);
  c.require(nl.lower && std::abs(*nl.lower - below) < 1e-6, "pipeline lower endpoint");
  c.require(nl.upper && std::abs(*nl.upper - above) < 1e-6, "pipeline upper endpoint");
}

// 2. Cuspidal cubic at (4, 8). The computed ideal carries multiplicity 3 at
// (-26, 18); its radical is compared with the intersection of the three components.
void cusp(Checker& c) {
  auto rep = voronoi_ideal(ideal(xring(2), {"x1^3 - x2^2"}), pt({4, 8}));
  auto c1 = ideal(rep.rings.u, {"u1 - 28", "u2"});
  auto c2 = ideal(rep.rings.u, {"u1 + 26", "u2 - 18"});
  auto c3 = ideal(rep.rings.u, {"u1 + 3*u2 - 28", "27*u2^2 - 486*u2 + 2197"});
  c.require(rep.radical.has_value(), "no radical");
  if (rep.radical) {
    c.require(buchberger(*rep.radical) == buchberger(intersect(intersect(c1, c2), c3)),
              "radical differs from the intersection");
  }
  c.require(same_ideal(rep.voronoi_ideal,
                       ideal(rep.rings.u, {"u1 + 3*u2 - 28", "u2*(u2 - 18)^3*(27*u2^2 - 486*u2 + 2197)"})),
            "unexpected Voronoi ideal");
  std::vector<std::vector<Rational>> points;
  bool quadratic_unreal = false;
  if (rep.components) {
    for (const auto& comp : *rep.components) {
      if (comp.point) points.push_back(*comp.point);
      if (same_ideal(comp.ideal, c3)) quadratic_unreal = comp.real == false;
    }
  }
  c.require(points == std::vector<std::vector<Rational>>{pt({28, 0}), pt({-26, 18})}, "real boundary points");
  c.require(quadratic_unreal, "quadratic component not flagged unreal");
  const QPoly quad(Field::rationals(), {Rational(2197), Rational(-486), Rational(27)});
  c.require(count_real_roots(quad) == 0, "Sturm count on the quadratic component");
}

// 3. Cusp at the singular point.
void singular_cusp(Checker& c) {
  VoronoiOptions<Rational> opts;
  opts.allow_singular = true;
  auto rep = voronoi_ideal(ideal(xring(2), {"x1^3 - x2^2"}).with_codim(1), pt({0, 0}), opts);
  auto want = qpoly(rep.rings.u, "27*u2^4 + 128*u1^3 + 72*u1*u2^2 + 32*u1^2 + u2^2 + 2*u1");
  c.require(rep.boundary_hypersurface.has_value(), "no boundary polynomial");
  if (rep.boundary_hypersurface) {
    c.require(rep.boundary_hypersurface->monic() == want.monic(), "boundary polynomial differs");
  }
}

void table_cells(Checker& c, bool homogeneous, const std::vector<std::array<unsigned, 3>>& cells) {
  for (const auto& [n, d, want] : cells) {
    const auto e = hypersurface_degree(n, d, homogeneous, kDefaultPrime, 1);
    const std::string cell = "(" + std::to_string(n) + "," + std::to_string(d) + ")";
    c.require(e.degree == want, cell + " gave " + std::to_string(e.degree));
    c.require(e.stable, cell + " unstable across replicas");
    c.require(e.replicas.size() == 3, cell + " replica count");
  }
}

// 4, 5. Degree experiments over F_32003.
void table1(Checker& c) {
  table_cells(c, false, {{1, 2, 1}, {1, 5, 4}, {2, 2, 2}, {2, 3, 8}, {2, 4, 16}, {3, 2, 3}, {3, 3, 23}});
}

void table2(Checker& c) { table_cells(c, true, {{2, 2, 2}, {2, 3, 4}, {3, 2, 3}, {3, 3, 13}}); }

// 6. Closed forms against every printed value.
void formulas(Checker& c) {
  for (std::int64_t d = 2; d <= 8; ++d) {
    c.require(formula_curve(d, plane_curve_genus(d)) == d * d + d - 4, "plane curve row");
    c.require(formula_curve(d, 0) == 4 * d - 6, "rational curve");
    c.require(formula_curve(d, 1) == 4 * d - 4, "elliptic curve");
    c.require(formula_surface(d, d * (d * d - 4 * d + 6), (d - 1) * (d - 1)) == d * d * d + d - 7, "surface row");
    c.require(formula_cone(d, plane_curve_genus(d)) == 2 * d * d - 5, "cone row");
  }
  c.require(formula_curve(4, 1) == 12, "curve (4, 1)");
  c.require(formula_curve(3, 0) == 6, "curve (3, 0)");
  for (std::int64_t e = 1; e <= 6; ++e) {
    c.require(formula_surface(e * e, 3, (2 * e - 1) * (e - 1)) == 11 * e * e - 12 * e - 4, "Veronese surface");
  }
  c.require(formula_surface(4, 3, 3) == 16, "Veronese surface e = 2");
  int cells = 0;
  for (bool homogeneous : {false, true}) {
    for (const auto& row : golden_table(homogeneous)) {
      for (std::size_t k = 0; k < row.values.size(); ++k) {
        const auto d = static_cast<std::int64_t>(k + 2);
        c.require(conjecture_hypersurface(row.n, d, homogeneous) == row.values[k],
                  "table cell n=" + std::to_string(row.n) + " d=" + std::to_string(d));
        ++cells;
      }
    }
  }
  c.require(cells == 58, "expected 58 table cells, found " + std::to_string(cells));
}

Matrix gaussian(std::mt19937_64& rng, Eigen::Index m, Eigen::Index n) {
  std::normal_distribution<double> nd;
  Matrix a(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = nd(rng);
  }
  return a;
}

Matrix orthogonal(std::mt19937_64& rng, Eigen::Index n) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(rng, n, n));
  return qr.householderQ() * Matrix::Identity(n, n);
}

// 7. Low-rank matrices.
void lowrank_suite(Checker& c) {
  std::mt19937_64 rng(2024);
  int outside = 0;
  for (int k = 0; k < 1000; ++k) {
    const Eigen::Index m = 1 + k % 6, n = 1 + (k / 6) % 8;
    const auto r = static_cast<std::size_t>(1 + (k / 48) % std::min(m, n));
    const Matrix u = gaussian(rng, m, n);
    if (cell_membership(u, eckart_young_truncate(u, r), r).verdict == Membership::Outside) ++outside;
  }
  c.require(outside == 0, std::to_string(outside) + " truncations classified outside");

  for (int k = 0; k < 200; ++k) {
    const Eigen::Index m = 2 + k % 5, n = m + k % 3;
    const auto r = static_cast<std::size_t>(1 + k % (m - 1));
    const Matrix v = gaussian(rng, m, static_cast<Eigen::Index>(r)) * gaussian(rng, static_cast<Eigen::Index>(r), n);
    const Matrix u = v + (k % 2 ? 0.3 : 3.0) * gaussian(rng, m, n);
    const Matrix q = orthogonal(rng, m), p = orthogonal(rng, n);
    const auto a = cell_membership(u, v, r, 1e-8);
    const auto b = cell_membership(q * u * p, q * v * p, r, 1e-8);
    c.require(a.verdict == b.verdict && std::abs(a.free_norm - b.free_norm) < 1e-8, "orthogonal invariance");
  }

  // The boundary det(W W^T - I) meets a generic line through the center in 2(m - r) points.
  for (const auto& [m, n, r, want] : std::vector<std::array<std::int64_t, 4>>{
           {2, 2, 1, 2}, {3, 3, 1, 4}, {3, 4, 2, 2}, {4, 7, 2, 4}, {5, 6, 1, 8}}) {
    c.require(lowrank_voronoi_degree(m, n, r) == want, "formula at m=" + std::to_string(m));
    const Matrix w = gaussian(rng, m - r, n - r);
    int changes = 0;
    double prev = spectral_boundary_value(-50.0 * w);
    for (int i = -49'999; i <= 50'000; ++i) {
      const double cur = spectral_boundary_value((i / 1000.0) * w);
      if ((cur > 0) != (prev > 0)) ++changes;
      prev = cur;
    }
    c.require(changes == want, "line meets the boundary " + std::to_string(changes) + " times for m=" +
                                   std::to_string(m) + " r=" + std::to_string(r));
  }
}

QPolys twisted_cubic() {
  auto r = xring(3);
  return {qpoly(r, "x2 - x1^2"), qpoly(r, "x3 - x1*x2")};
}

QPolys cardioid() {
  auto r = xring(2);
  return {qpoly(r, "(x1^2 + x2^2 + x1)^2 - x1^2 - x2^2")};
}

// 8. Tangency of the level-1 approximation of the twisted cubic cell.
void tangency(Checker& c) {
  const auto f = twisted_cubic();
  const std::vector<double> y{0, 0, 0};
  double sup = -1;
  for (int i = 0; i <= 1000; ++i) {
    const double u2 = i / 1000.0;
    if (level1_membership(f, y, {0, u2, 0}).status == SdpStatus::Member) sup = std::max(sup, u2);
  }
  c.require(std::abs(sup - 0.5) <= 1e-3, "supremum " + str(sup));
  c.require(level1_membership(f, y, {0, 0.4, 0}).status == SdpStatus::Member, "(0, 0.4, 0) not a member");
  c.require(level1_membership(f, y, {0, 0.6, 0}).status == SdpStatus::NonMember, "(0, 0.6, 0) not rejected");
}

// 9. Cardioid at (0, 1) and the hierarchy on both curves.
void cardioid_hierarchy(Checker& c) {
  const auto f = cardioid();
  const std::vector<double> y{0, 1};
  for (double t : {0.1, 0.5, 2.0}) {
    c.require(leveld_membership(f, y, {t, 1 + t}, 2).status == SdpStatus::Member, "t = " + str(t) + " rejected");
  }
  for (double t : {-0.1, -0.25}) {
    c.require(leveld_membership(f, y, {t, 1 + t}, 2).status == SdpStatus::NonMember, "t = " + str(t) + " accepted");
  }

  struct Grid {
    QPolys f;
    std::vector<double> y;
    unsigned level;
    std::vector<std::vector<double>> points;
  };
  std::vector<Grid> grids;
  {
    Grid g{twisted_cubic(), {0, 0, 0}, 1, {}};
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) g.points.push_back({0, -1 + 0.2 * i, -1 + 0.2 * j + 0.01});
    }
    grids.push_back(std::move(g));
  }
  {
    Grid g{cardioid(), {0, 1}, 2, {}};
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) g.points.push_back({-0.9 + 0.2 * i, 0.1 + 0.2 * j});
    }
    grids.push_back(std::move(g));
  }
  for (const auto& g : grids) {
    const auto lo = veronese_lift(g.f, g.level), hi = veronese_lift(g.f, g.level + 1);
    int members = 0;
    for (const auto& u : g.points) {
      // Points off the normal space are non-members at every level.
      if (leveld_membership(lo, g.y, u).status != SdpStatus::Member) continue;
      ++members;
      c.require(leveld_membership(hi, g.y, u).status != SdpStatus::NonMember, "hierarchy broken");
    }
    c.require(members > 0, "no members on the grid at level " + std::to_string(g.level));
  }
}

// 10. Randomized property floor: 5 suites of 100 instances.
void property_floor(Checker& c) {
  std::mt19937_64 rng(500);
  auto fr = Ring::make({"a", "b", "c"}, Field::prime(kDefaultPrime));
  int failures = 0, instances = 0;
  auto tally = [&](bool ok) {
    ++instances;
    failures += ok ? 0 : 1;
  };
  for (int k = 0; k < 100; ++k) {
    std::vector<Polynomial<Fp>> gens;
    for (int i = 0; i < 2 + k % 2; ++i) gens.push_back(testing_support::random_poly<Fp>(rng, fr, 3, 4));
    auto gb = buchberger(IdealSpec<Fp>(fr, gens));
    auto shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    Polynomial<Fp> combo(fr);
    for (const auto& g : gens) combo = combo + g * testing_support::random_poly<Fp>(rng, fr, 1, 2);
    shuffled.push_back(combo);
    tally(buchberger(IdealSpec<Fp>(fr, shuffled)) == gb);
  }
  for (int k = 0; k < 100; ++k) {
    std::vector<Polynomial<Fp>> gens{testing_support::random_poly<Fp>(rng, fr, 3, 4),
                                     testing_support::random_poly<Fp>(rng, fr, 3, 4)};
    auto gb = buchberger(IdealSpec<Fp>(fr, gens));
    tally(buchberger(gb.ideal()) == gb);
  }
  auto a = Polynomial<Fp>::variable(fr, 0);
  auto b = Polynomial<Fp>::variable(fr, 1);
  for (int k = 0; k < 100; ++k) {
    IdealSpec<Fp> i(fr, {testing_support::random_poly<Fp>(rng, fr, 2, 3) * a,
                         testing_support::random_poly<Fp>(rng, fr, 2, 3) * a * b});
    IdealSpec<Fp> j(fr, {a});
    auto s = saturate(i, j);
    tally(same_ideal(saturate(s, j), s));
  }
  auto work = fr->with_order(MonomialOrder::block_elim(1));
  for (int k = 0; k < 100; ++k) {
    IdealSpec<Fp> i(fr, {testing_support::random_poly<Fp>(rng, fr, 2, 3),
                         testing_support::random_poly<Fp>(rng, fr, 2, 3)});
    auto full = buchberger(i, MonomialOrder::block_elim(1));
    bool ok = true;
    const auto e = eliminate(i, {0});
    for (const auto& p : e.gens()) {
      std::vector<std::size_t> map{1, 2};
      ok = ok && !p.ring()->index_of("a") && full.contains(p.remap(work, map));
    }
    tally(ok);
  }
  auto qr = xring(4);
  for (int k = 0; k < 100; ++k) {
    auto f = testing_support::random_poly<Rational>(rng, qr, 5, 6);
    auto g = testing_support::random_poly<Fp>(rng, fr, 4, 5);
    tally(qpoly(qr, f.to_string()) == f && parse_polynomial<Fp>(g.to_string(), fr) == g);
  }
  c.require(instances == 500, "ran " + std::to_string(instances) + " instances");
  c.require(failures == 0, std::to_string(failures) + " of 500 instances failed");
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<void(Checker&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "quadric surface at the origin: boundary ideal and segment endpoints", 60, quadric_surface},
      {2, "cuspidal cubic at (4,8): radical of the Voronoi ideal equals the three-component intersection", 30, cusp},
      {3, "cuspidal cubic at the cusp: quartic boundary polynomial", 60, singular_cusp},
      {4, "inhomogeneous hypersurface degrees over F_32003, 3 replicas, 7 cells", 900, table1},
      {5, "homogeneous hypersurface degrees over F_32003, 3 replicas, 4 cells", 600, table2},
      {6, "closed-form degree formulas and all 58 table cells", 1, formulas},
      {7, "low-rank cells: truncation oracle, orthogonal invariance, degree 2(m-r)", 10, lowrank_suite},
      {8, "twisted cubic level-1 approximation tangent at u2 = 1/2", 600, tangency},
      {9, "cardioid level-2 ray and hierarchy on both curves", 600, cardioid_hierarchy},
      {10, "property floor: 500 randomized Groebner, saturation, elimination and parse instances", 600,
       property_floor},
  };
  int failed = 0;
  for (const auto& crit : criteria) {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    try {
      crit.run(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > crit.limit_seconds) c.failures.push_back("took " + str(secs) + " s, limit " + str(crit.limit_seconds));
    const bool ok = c.failures.empty();
    failed += ok ? 0 : 1;
    std::printf("%s %2d  %s  (%.2f s)\n", ok ? "PASS" : "FAIL", crit.id, crit.name, secs);
    for (const auto& f : c.failures) std::printf("        %s\n", f.c_str());
  }
  return failed == 0 ? 0 : 1;
}
