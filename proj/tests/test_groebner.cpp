#include "doctest.h"

#include <algorithm>
#include <random>

#include "support.hpp"
#include "vorcell/groebner.hpp"

using namespace vorcell;
using testing_support::qpoly;

namespace {

using QIdeal = IdealSpec<Rational>;

QIdeal ideal(const RingPtr& r, std::initializer_list<const char*> gens) {
  std::vector<Polynomial<Rational>> g;
  for (const char* s : gens) g.push_back(qpoly(r, s));
  return QIdeal(r, g);
}

std::vector<std::string> gen_strings(const IdealSpec<Rational>& i) {
  std::vector<std::string> out;
  for (const auto& g : i.gens()) out.push_back(g.to_string());
  return out;
}

// Textbook division by a list, written without the library's reducer: repeatedly
// cancel the first term any divisor's leading term divides.
template <Coefficient K>
Polynomial<K> naive_remainder(Polynomial<K> f, const std::vector<Polynomial<K>>& divisors) {
  Polynomial<K> rem(f.ring());
  while (!f.is_zero()) {
    const Term<K> lead = f.terms().front();
    bool divided = false;
    for (const auto& d : divisors) {
      if (d.leading_monomial().divides(lead.mono)) {
        const K c = lead.coeff / d.leading_coeff();
        f = f - d * Polynomial<K>::term(f.ring(), lead.mono / d.leading_monomial(), c);
        divided = true;
        break;
      }
    }
    if (!divided) {
      const auto t = Polynomial<K>::term(f.ring(), lead.mono, lead.coeff);
      rem = rem + t;
      f = f - t;
    }
  }
  return rem;
}

template <Coefficient K>
void check_reduced(const GroebnerBasis<K>& g) {
  const auto& e = g.elements();
  for (std::size_t i = 0; i < e.size(); ++i) {
    CHECK(e[i].leading_coeff().is_one());
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : e[i].terms()) CHECK_FALSE(e[j].leading_monomial().divides(t.mono));
    }
  }
}

RingPtr fp_ring(std::size_t n) {
  std::vector<std::string> names{"a", "b", "c", "d"};
  names.resize(n);
  return Ring::make(names, Field::prime(32003));
}

}  // namespace

TEST_CASE("buchberger examples") {
  auto r = Ring::make({"x1", "u2"}, Field::rationals());
  auto lin = buchberger(ideal(r, {"x1 + 3*u2 - 28"}));
  REQUIRE(lin.elements().size() == 1);
  CHECK(lin.elements()[0] == qpoly(r, "x1 + 3*u2 - 28"));
  CHECK(buchberger(ideal(r, {"x1 + 3*u2 - 28"}), MonomialOrder::lex()).elements()[0].to_string() ==
        "x1 + 3*u2 - 28");

  auto xy = Ring::make({"x", "y"}, Field::rationals());
  auto mono = buchberger(ideal(xy, {"y^2", "x*y", "x^2"}));
  CHECK(gen_strings(mono.ideal()) == std::vector<std::string>{"x^2", "x*y", "y^2"});

  auto xyz = Ring::make({"x", "y", "z"}, Field::rationals());
  auto tc = buchberger(ideal(xyz, {"y - x^2", "z - x*y"}));
  check_reduced(tc);
  CHECK(tc.contains(qpoly(xyz, "z*x - y^2")));
  CHECK(naive_remainder(qpoly(xyz, "z*x - y^2"), tc.elements()).is_zero());
  CHECK(!naive_remainder(qpoly(xyz, "x*z - y"), tc.elements()).is_zero());
}

TEST_CASE("normal form examples") {
  auto xy = Ring::make({"x", "y"}, Field::rationals());
  auto g = buchberger(ideal(xy, {"x^3 - y", "x*y - 1"}));
  CHECK(g.normal_form(Polynomial<Rational>(xy)).is_zero());
  CHECK(g.normal_form(qpoly(xy, "x^3 - y")).is_zero());
  CHECK(g.normal_form(qpoly(xy, "x*y - 1")).is_zero());
  auto unit = buchberger(ideal(xy, {"x", "x + 1"}));
  CHECK(unit.is_unit());
  CHECK(unit.normal_form(qpoly(xy, "1")).is_zero());
  auto lex_ring = xy->with_order(MonomialOrder::lex());
  CHECK_THROWS_AS(g.normal_form(qpoly(lex_ring, "x")), RingMismatch);
}

TEST_CASE("eliminate examples") {
  auto r = Ring::make({"t", "x", "y"}, Field::rationals());
  auto e = eliminate(ideal(r, {"t*x - 1", "t*y - 1"}), {0});
  CHECK(gen_strings(e) == std::vector<std::string>{"x - y"});
  CHECK(e.ring()->names() == std::vector<std::string>{"x", "y"});
  // x - y vanishes on every point (1/t, 1/t).
  for (int k = 1; k < 5; ++k) {
    std::vector<Rational> pt{Rational(1, k), Rational(1, k)};
    for (const auto& g : e.gens()) CHECK(g.evaluate(pt).is_zero());
  }

  auto none = eliminate(ideal(r, {"t*x - 1", "t*y - 1"}), {});
  CHECK(same_ideal(none, ideal(r, {"t*x - 1", "t*y - 1"})));

  auto xu = Ring::make({"x", "u"}, Field::rationals());
  CHECK(eliminate(ideal(xu, {"x - u^2"}), {0}).is_zero());
}

TEST_CASE("saturate examples") {
  auto xy = Ring::make({"x", "y"}, Field::rationals());
  CHECK(same_ideal(saturate(ideal(xy, {"x^2*y"}), ideal(xy, {"x"})), ideal(xy, {"y"})));
  auto i = ideal(xy, {"x^2 - y^3", "x*y^2"});
  CHECK(same_ideal(saturate(i, ideal(xy, {"1"})), i));
  CHECK(same_ideal(saturate(ideal(xy, {"x*(x-1)"}), ideal(xy, {"x"})), ideal(xy, {"x - 1"})));
  CHECK(same_ideal(saturate(ideal(xy, {"x*y*(x-y)", "x^2*(y-2)"}), ideal(xy, {"x", "x*y"})),
                   ideal(xy, {"x - y", "y - 2"})));
}

TEST_CASE("intersect examples") {
  auto xy = Ring::make({"x", "y"}, Field::rationals());
  CHECK(same_ideal(intersect(ideal(xy, {"x"}), ideal(xy, {"y"})), ideal(xy, {"x*y"})));
  auto i = ideal(xy, {"x^2 + y", "x*y^2 - 3"});
  CHECK(same_ideal(intersect(i, i), i));

  auto u = Ring::make({"u1", "u2"}, Field::rationals());
  auto both = intersect(ideal(u, {"u1 - 28", "u2"}), ideal(u, {"u1 + 26", "u2 - 18"}));
  auto gb = buchberger(both);
  CHECK(is_zero_dimensional(gb));
  CHECK(quotient_degree(gb) == 2);
  for (auto pt : {std::vector<Rational>{28, 0}, std::vector<Rational>{-26, 18}}) {
    for (const auto& g : gb.elements()) CHECK(g.evaluate(pt).is_zero());
  }
}

TEST_CASE("zero-dimensionality and quotient degree") {
  auto xy = Ring::make({"x", "y"}, Field::rationals());
  CHECK(is_zero_dimensional(ideal(xy, {"x^2", "y^3"})));
  CHECK(quotient_degree(ideal(xy, {"x^2", "y^3"})) == 6);
  CHECK_FALSE(is_zero_dimensional(ideal(xy, {"x*y"})));
  CHECK_THROWS_AS(quotient_degree(ideal(xy, {"x*y"})), NotZeroDimensional);

  auto u = Ring::make({"u1", "u2"}, Field::rationals());
  CHECK(quotient_degree(ideal(u, {"u1 - 28", "u2"})) == 1);
  auto c3 = ideal(u, {"u1 + 3*u2 - 28", "27*u2^2 - 486*u2 + 2197"});
  CHECK(quotient_degree(c3) == 2);
  auto all = intersect(intersect(ideal(u, {"u1 - 28", "u2"}), ideal(u, {"u1 + 26", "u2 - 18"})), c3);
  CHECK(quotient_degree(all) == 4);
}

TEST_CASE("eliminant is the minimal polynomial") {
  auto u = Ring::make({"u1", "u2"}, Field::rationals());
  auto gb = buchberger(ideal(u, {"u1 + 3*u2 - 28", "27*u2^2 - 486*u2 + 2197"}));
  auto m = eliminant(gb, 1);
  CHECK(m.degree() == 2);
  CHECK(m.to_string("u2") == "u2^2 - 18*u2 + 2197/27");
  auto lin = eliminant(buchberger(ideal(u, {"u1 - 28", "u2"})), 0);
  CHECK(lin.to_string("u1") == "u1 - 28");
}

TEST_CASE("budget exhaustion is reported distinctly") {
  auto xyz = Ring::make({"x", "y", "z"}, Field::rationals());
  GroebnerOptions tiny;
  tiny.max_reductions = 1;
  CHECK_THROWS_AS(buchberger(ideal(xyz, {"x^2 - y*z", "y^2 - x*z", "z^2 - x*y + 1"}), tiny), BudgetExhausted);
}

TEST_CASE("reduced basis is unique under permutation and redundancy") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> ngens(2, 3);
  std::uniform_int_distribution<std::uint32_t> coef(1, 32002);
  for (int iter = 0; iter < 120; ++iter) {
    auto r = fp_ring(iter % 2 == 0 ? 3 : 2);
    std::vector<Polynomial<Fp>> gens;
    const int k = ngens(rng);
    for (int i = 0; i < k; ++i) gens.push_back(testing_support::random_poly<Fp>(rng, r, 3, 4));
    auto gb = buchberger(IdealSpec<Fp>(r, gens));
    check_reduced(gb);
    for (const auto& g : gens) CHECK(gb.contains(g));

    auto shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    Polynomial<Fp> combo(r);
    for (const auto& g : gens) {
      combo = combo + g * testing_support::random_poly<Fp>(rng, r, 1, 2);
    }
    shuffled.push_back(combo.scaled(Fp(coef(rng), 32003)));
    CHECK(buchberger(IdealSpec<Fp>(r, shuffled)) == gb);
  }
}

TEST_CASE("reduced basis uniqueness over the rationals") {
  std::mt19937_64 rng(4);
  for (int iter = 0; iter < 60; ++iter) {
    auto r = Ring::make({"x", "y"}, Field::rationals());
    std::vector<Polynomial<Rational>> gens{testing_support::random_poly<Rational>(rng, r, 2, 3),
                                           testing_support::random_poly<Rational>(rng, r, 2, 3)};
    auto gb = buchberger(QIdeal(r, gens));
    check_reduced(gb);
    std::vector<Polynomial<Rational>> swapped{gens[1], gens[0], gens[0] + gens[1]};
    CHECK(buchberger(QIdeal(r, swapped)) == gb);
  }
}

TEST_CASE("normal form is idempotent modulo the ideal") {
  std::mt19937_64 rng(8);
  auto r = fp_ring(3);
  for (int iter = 0; iter < 60; ++iter) {
    std::vector<Polynomial<Fp>> gens{testing_support::random_poly<Fp>(rng, r, 2, 3),
                                     testing_support::random_poly<Fp>(rng, r, 2, 3)};
    auto gb = buchberger(IdealSpec<Fp>(r, gens));
    auto f = testing_support::random_poly<Fp>(rng, r, 4, 6);
    auto nf = gb.normal_form(f);
    CHECK(gb.normal_form(f - nf).is_zero());
    CHECK(naive_remainder(f - nf, gb.elements()).is_zero());
  }
}

TEST_CASE("saturation is idempotent and elimination is sound") {
  std::mt19937_64 rng(13);
  auto r = fp_ring(3);
  auto a = Polynomial<Fp>::variable(r, 0);
  auto b = Polynomial<Fp>::variable(r, 1);
  for (int iter = 0; iter < 60; ++iter) {
    // An embedded component on the plane a = 0 gives the saturation work to do.
    auto f = testing_support::random_poly<Fp>(rng, r, 2, 3);
    auto g = testing_support::random_poly<Fp>(rng, r, 2, 3);
    IdealSpec<Fp> i(r, {f * a, g * a * b});
    IdealSpec<Fp> j(r, {a});
    auto s = saturate(i, j);
    CHECK(same_ideal(saturate(s, j), s));
    for (const auto& p : i.gens()) CHECK(buchberger(s).contains(p));

    auto work = r->with_order(MonomialOrder::block_elim(1));
    auto e = eliminate(i, {0});
    auto full = buchberger(i, MonomialOrder::block_elim(1));
    for (const auto& p : e.gens()) {
      CHECK_FALSE(p.ring()->index_of("a").has_value());
      std::vector<std::size_t> map{1, 2};
      CHECK(full.contains(p.remap(work, map)));
    }
  }
}

TEST_CASE("quotient degree is additive over disjoint point sets") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coord(-6, 6);
  std::uniform_int_distribution<int> npts(1, 3);
  auto r = Ring::make({"x", "y", "z"}, Field::rationals());
  auto point_set = [&](int count, std::vector<std::vector<int>>& used) {
    std::optional<QIdeal> acc;
    for (int k = 0; k < count;) {
      std::vector<int> p{coord(rng), coord(rng), coord(rng)};
      if (std::find(used.begin(), used.end(), p) != used.end()) continue;
      used.push_back(p);
      ++k;
      std::vector<Polynomial<Rational>> g;
      for (std::size_t v = 0; v < 3; ++v) {
        g.push_back(Polynomial<Rational>::variable(r, v) - Polynomial<Rational>::from_rational(r, p[v]));
      }
      QIdeal pt(r, g);
      acc = acc ? intersect(*acc, pt) : pt;
    }
    return *acc;
  };
  for (int iter = 0; iter < 40; ++iter) {
    std::vector<std::vector<int>> used;
    const int a = npts(rng), b = npts(rng);
    QIdeal i = point_set(a, used);
    QIdeal j = point_set(b, used);
    CHECK(quotient_degree(i) == static_cast<std::size_t>(a));
    CHECK(quotient_degree(intersect(i, j)) == quotient_degree(i) + quotient_degree(j));
  }
}

TEST_CASE("budget from the environment") {
  setenv("VORONOI_BUDGET", "17", 1);
  CHECK(GroebnerOptions::from_env().max_reductions == 17);
  setenv("VORONOI_BUDGET", "abc", 1);
  CHECK_THROWS_AS(GroebnerOptions::from_env(), std::invalid_argument);
  unsetenv("VORONOI_BUDGET");
  CHECK(GroebnerOptions::from_env().max_reductions == 1'000'000);
}
