#include "doctest.h"

#include <cmath>
#include <random>

#include "support.hpp"
#include "vorcell/voronoi.hpp"

using namespace vorcell;
using testing_support::qpoly;

namespace {

using QIdeal = IdealSpec<Rational>;

RingPtr xring(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return Ring::make(names, Field::rationals());
}

QIdeal ideal(const RingPtr& r, std::initializer_list<const char*> gens, std::optional<unsigned> c = {}) {
  std::vector<Polynomial<Rational>> g;
  for (const char* s : gens) g.push_back(qpoly(r, s));
  return QIdeal(r, g, c);
}

std::vector<Rational> pt(std::initializer_list<long> v) {
  return std::vector<Rational>(v.begin(), v.end());
}

QIdeal uideal(const VoronoiReport<Rational>& rep, std::initializer_list<const char*> gens) {
  return ideal(rep.rings.u, gens);
}

const char* kQuadric = "x1^2 + x2^2 + x3^2 - 3*x1*x2 - 5*x1*x3 - 7*x2*x3 + x1 + x2 + x3";

}  // namespace

TEST_CASE("augmented jacobian of the cuspidal cubic") {
  auto r = xring(2);
  auto aj = augmented_jacobian(ideal(r, {"x1^3 - x2^2"}));
  REQUIRE(aj.rows.size() == 2);
  CHECK(aj.rows[0][0] == qpoly(aj.rings.xu, "u1 - x1"));
  CHECK(aj.rows[0][1] == qpoly(aj.rings.xu, "u2 - x2"));
  CHECK(aj.rows[1][0] == qpoly(aj.rings.xu, "3*x1^2"));
  CHECK(aj.rows[1][1] == qpoly(aj.rings.xu, "-2*x2"));

  auto lin = augmented_jacobian(ideal(xring(3), {"x1"}));
  CHECK(lin.rows[1][0] == qpoly(lin.rings.xu, "1"));
  CHECK(lin.rows[1][1].is_zero());
}

TEST_CASE("augmented jacobian of the twisted cubic matches hand derivatives") {
  auto r = xring(3);
  auto aj = augmented_jacobian(ideal(r, {"x2 - x1^2", "x3 - x1*x2"}));
  REQUIRE(aj.rows.size() == 3);
  const char* expected[2][3] = {{"-2*x1", "1", "0"}, {"-x2", "-x1", "1"}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(aj.rows[i + 1][j] == qpoly(aj.rings.xu, expected[i][j]));
  }
}

TEST_CASE("normal bundle ideal") {
  auto cusp = ideal(xring(2), {"x1^3 - x2^2"});
  auto nb = normal_bundle_ideal(cusp, 1);
  REQUIRE(nb.gens().size() == 2);
  CHECK(nb.gens()[1] == qpoly(nb.ring(), "(u1 - x1)*(-2*x2) - (u2 - x2)*3*x1^2"));

  auto surf = normal_bundle_ideal(ideal(xring(3), {kQuadric}), 1);
  CHECK(surf.gens().size() == 4);

  auto tc = normal_bundle_ideal(ideal(xring(3), {"x2 - x1^2", "x3 - x1*x2"}), 2);
  CHECK(tc.gens().size() == 3);
  CHECK_THROWS(normal_bundle_ideal(cusp, 3));
}

TEST_CASE("normal space ideal") {
  auto cusp = ideal(xring(2), {"x1^3 - x2^2"});
  auto ns = normal_space_ideal(cusp, pt({4, 8}), 1);
  REQUIRE(ns.gens().size() == 1);
  CHECK(ns.gens()[0] == qpoly(ns.ring(), "u1 + 3*u2 - 28"));

  auto quad = ideal(xring(3), {kQuadric});
  auto ns2 = normal_space_ideal(quad, pt({0, 0, 0}), 1);
  CHECK(same_ideal(ns2, ideal(ns2.ring(), {"u1 - u3", "u2 - u3"})));
  CHECK(ns2.codim() == 2u);

  // grad = e_3 at (0, 0, 1): normal space is the x3 axis through y.
  auto sphere = ideal(xring(3), {"x1^2 + x2^2 + x3^2 - 1"});
  auto ns3 = normal_space_ideal(sphere, pt({0, 0, 1}), 1);
  CHECK(same_ideal(ns3, ideal(ns3.ring(), {"u1", "u2"})));

  CHECK_THROWS_AS(normal_space_ideal(cusp, pt({1, 2}), 1), PointNotOnVariety);
  CHECK_THROWS_AS(normal_space_ideal(cusp, pt({0, 0}), 1), SingularPoint);
  CHECK(normal_space_ideal(cusp, pt({0, 0}), 1, true).is_zero());
}

TEST_CASE("critical ideal") {
  auto cusp = ideal(xring(2), {"x1^3 - x2^2"});
  auto c = critical_ideal(cusp, pt({4, 8}), 1);
  // m + #minors + linear generators + 1
  REQUIRE(c.gens().size() == 1 + 1 + 1 + 1);
  CHECK(c.gens()[2] == qpoly(c.ring(), "u1 + 3*u2 - 28"));
  CHECK(c.gens()[3] == qpoly(c.ring(), "x1^2 + x2^2 - 2*u1*x1 - 2*u2*x2 + 8*u1 + 16*u2 - 80"));
  // On the diagonal x = y the sphere condition is identically zero.
  auto s = Ring::make({"u1", "u2"}, Field::rationals());
  std::vector<Polynomial<Rational>> images{Polynomial<Rational>::from_rational(s, 4),
                                           Polynomial<Rational>::from_rational(s, 8),
                                           Polynomial<Rational>::variable(s, 0),
                                           Polynomial<Rational>::variable(s, 1)};
  CHECK(c.gens()[3].substitute(s, images).is_zero());
}

TEST_CASE("cuspidal cubic at (4,8)") {
  auto cusp = ideal(xring(2), {"x1^3 - x2^2"});
  auto rep = voronoi_ideal(cusp, pt({4, 8}));
  auto c1 = uideal(rep, {"u1 - 28", "u2"});
  auto c2 = uideal(rep, {"u1 + 26", "u2 - 18"});
  auto c3 = uideal(rep, {"u1 + 3*u2 - 28", "27*u2^2 - 486*u2 + 2197"});
  // Saturation leaves multiplicity 3 at (-26, 18), the point equidistant from
  // y and the cusp; the printed intersection is the radical. Both agree with an
  // independent lex-basis computation of the two saturation pieces.
  REQUIRE(rep.radical);
  CHECK(same_ideal(*rep.radical, intersect(intersect(c1, c2), c3)));
  CHECK(rep.radical_degree == 4u);
  CHECK(same_ideal(rep.voronoi_ideal,
                   uideal(rep, {"u1 + 3*u2 - 28", "u2*(u2 - 18)^3*(27*u2^2 - 486*u2 + 2197)"})));
  CHECK(rep.zero_dimensional);
  CHECK(rep.degree == 6u);
  REQUIRE(rep.boundary_poly);
  CHECK(rep.boundary_poly->degree() == 6);
  for (const auto& g : rep.voronoi_ideal.gens()) CHECK(g.ring()->names() == std::vector<std::string>{"u1", "u2"});

  REQUIRE(rep.components);
  REQUIRE(rep.components->size() == 3);
  // Rational points come out in ascending boundary coordinate.
  CHECK((*rep.components)[0].point == pt({28, 0}));
  CHECK((*rep.components)[1].point == pt({-26, 18}));
  CHECK((*rep.components)[2].real == false);
  CHECK(same_ideal((*rep.components)[2].ideal, c3));

  auto nl = boundary_on_normal_line(rep);
  REQUIRE(nl.lower);
  REQUIRE(nl.upper);
  CHECK(*nl.lower == doctest::Approx(-0.625));
  CHECK(*nl.upper == doctest::Approx(0.5));
  CHECK(nl.reach == doctest::Approx(0.5 * std::sqrt(48.0 * 48 + 16 * 16)));
}

TEST_CASE("sliced and direct strategies agree") {
  auto cusp = ideal(xring(2), {"x1^3 - x2^2"});
  VoronoiOptions<Rational> direct;
  direct.strategy = VoronoiStrategy::Direct;
  for (auto y : {pt({4, 8}), pt({1, -1}), pt({9, 27})}) {
    auto a = voronoi_ideal(cusp, y);
    auto b = voronoi_ideal(cusp, y, direct);
    CHECK(same_ideal(a.voronoi_ideal, b.voronoi_ideal));
  }
  auto conic = ideal(xring(2), {"x1^2 + 2*x2^2 - 3*x1*x2 + x1 - 5*x2"});
  CHECK(same_ideal(voronoi_ideal(conic, pt({0, 0})).voronoi_ideal,
                   voronoi_ideal(conic, pt({0, 0}), direct).voronoi_ideal));
}

TEST_CASE("quadric surface at the origin") {
  auto quad = ideal(xring(3), {kQuadric});
  auto rep = voronoi_ideal(quad, pt({0, 0, 0}));
  CHECK(same_ideal(rep.voronoi_ideal, uideal(rep, {"u1 - u3", "u2 - u3", "368*u3^3 + 71*u3^2 - 6*u3 - 1"})));
  auto nl = boundary_on_normal_line(rep);
  REQUIRE(nl.roots.size() == 3);
  REQUIRE(nl.lower);
  REQUIRE(nl.upper);
  CHECK(std::abs(*nl.lower - -0.106526) < 1e-5);
  CHECK(std::abs(*nl.upper - 0.12225) < 1e-5);
}

TEST_CASE("cusp point needs the singular flag") {
  auto cusp = ideal(xring(2), {"x1^3 - x2^2"}, 1);
  CHECK_THROWS_AS(voronoi_ideal(cusp, pt({0, 0})), SingularPoint);
  CHECK_THROWS_AS(voronoi_ideal(ideal(xring(2), {"x1^3 - x2^2"}), pt({0, 0})), SingularPoint);
  VoronoiOptions<Rational> opts;
  opts.allow_singular = true;
  auto rep = voronoi_ideal(cusp, pt({0, 0}), opts);
  REQUIRE(rep.boundary_hypersurface);
  CHECK(rep.voronoi_ideal.gens().size() == 1);
  auto expected = qpoly(rep.rings.u, "27*u2^4 + 128*u1^3 + 72*u1*u2^2 + 32*u1^2 + u2^2 + 2*u1");
  CHECK(*rep.boundary_hypersurface == expected.monic());
  CHECK_FALSE(rep.zero_dimensional);
}

TEST_CASE("sphere: boundary at the center") {
  auto sphere = ideal(xring(3), {"x1^2 + x2^2 + x3^2 - 1"});
  auto rep = voronoi_ideal(sphere, pt({1, 0, 0}));
  auto nl = boundary_on_normal_line(rep);
  REQUIRE(nl.lower);
  CHECK(*nl.lower == doctest::Approx(-0.5));
  CHECK_FALSE(nl.upper);
  CHECK(nl.reach == doctest::Approx(1.0));
}

TEST_CASE("voronoi ideal has no x variables") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> c(-3, 3);
  auto r = xring(2);
  for (int iter = 0; iter < 10; ++iter) {
    // Random conic through the origin with a nonzero linear part.
    std::string f = std::to_string(c(rng)) + "*x1^2 + " + std::to_string(c(rng)) + "*x1*x2 + " +
                    std::to_string(c(rng)) + "*x2^2 + " + std::to_string(c(rng)) + "*x1 + " +
                    std::to_string(std::abs(c(rng)) + 1) + "*x2";
    auto rep = voronoi_ideal(QIdeal(r, {qpoly(r, f)}), pt({0, 0}));
    for (const auto& g : rep.voronoi_ideal.gens()) {
      CHECK(g.ring()->names() == std::vector<std::string>{"u1", "u2"});
    }
  }
}

TEST_CASE("rotation equivariance") {
  // (x, y) -> ((3x - 4y)/5, (4x + 3y)/5) is orthogonal and rational.
  auto r = xring(2);
  auto f = qpoly(r, "x1^3 - x2^2");
  std::vector<Polynomial<Rational>> inverse{qpoly(r, "3/5*x1 + 4/5*x2"), qpoly(r, "-4/5*x1 + 3/5*x2")};
  auto g = f.substitute(r, inverse);
  // y = (4, 8) maps to (-4, 8).
  auto a = voronoi_ideal(QIdeal(r, {f}), pt({4, 8}));
  auto b = voronoi_ideal(QIdeal(r, {g}), pt({-4, 8}));
  std::vector<Polynomial<Rational>> u_inverse{qpoly(a.rings.u, "3/5*u1 + 4/5*u2"),
                                              qpoly(a.rings.u, "-4/5*u1 + 3/5*u2")};
  std::vector<Polynomial<Rational>> moved;
  for (const auto& p : a.voronoi_ideal.gens()) moved.push_back(p.substitute(a.rings.u, u_inverse));
  CHECK(same_ideal(QIdeal(a.rings.u, moved), b.voronoi_ideal));
}

TEST_CASE("twisted cubic at the origin") {
  auto tc = ideal(xring(3), {"x2 - x1^2", "x3 - x1*x2"});
  auto rep = voronoi_ideal(tc, pt({0, 0, 0}));
  CHECK(rep.codim == 2u);
  CHECK(same_ideal(rep.normal_space, uideal(rep, {"u1"})));
  CHECK(same_ideal(rep.voronoi_ideal,
                   uideal(rep, {"u1", "27*u3^4 + 128*u2^3 + 72*u2*u3^2 - 160*u2^2 - 35*u3^2 + 66*u2 - 9"})));
  CHECK_FALSE(rep.zero_dimensional);
  REQUIRE(rep.boundary_hypersurface);
}
