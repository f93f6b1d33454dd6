#include "vorcell/degree_lab.hpp"

#include <limits>
#include <map>
#include <random>

namespace vorcell {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::mt19937_64 stream(std::uint64_t seed, unsigned attempt) {
  return std::mt19937_64(seed ^ (kGolden * (attempt + 1)));
}

Fp draw(std::mt19937_64& rng, std::uint32_t p) { return Fp(rng() % p, p); }

std::uint32_t other_prime(std::uint32_t p) { return p == 65537 ? 32003 : 65537; }

Polynomial<Fp> reduce_mod(const Polynomial<Rational>& f, const RingPtr& target) {
  std::vector<Term<Fp>> terms;
  for (const auto& t : f.terms()) terms.push_back({t.mono, Fp::from_rational(t.coeff, target->field())});
  return Polynomial<Fp>::from_terms(target, std::move(terms));
}

// Affine forms sum a_j u_j + b with uniform coefficients.
std::vector<Polynomial<Fp>> random_slices(const RingPtr& u, unsigned count, std::mt19937_64& rng) {
  const std::uint32_t p = u->field().modulus();
  std::vector<Polynomial<Fp>> out;
  for (unsigned k = 0; k < count; ++k) {
    Polynomial<Fp> s = Polynomial<Fp>::constant(u, draw(rng, p));
    for (std::size_t j = 0; j < u->nvars(); ++j) {
      s = s + Polynomial<Fp>::term(u, Monomial::unit(u->nvars(), j), draw(rng, p));
    }
    out.push_back(std::move(s));
  }
  return out;
}

void exponents(unsigned n, unsigned lo, unsigned hi, Monomial& m, std::size_t var, unsigned used,
               std::vector<Monomial>& out) {
  if (var == n) {
    if (used >= lo) out.push_back(m);
    return;
  }
  for (unsigned e = 0; used + e <= hi; ++e) {
    m.set(var, e);
    exponents(n, lo, hi, m, var + 1, used + e, out);
  }
  m.set(var, 0);
}

bool smooth_at(const IdealSpec<Fp>& ideal, const std::vector<Fp>& y) {
  const auto& f = ideal.gens().front();
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (!f.partial_derivative(j).evaluate(y).is_zero()) return true;
  }
  return false;
}

void finish(DegreeExperiment& ex) {
  std::map<std::size_t, unsigned> counts;
  std::optional<std::size_t> first;
  for (const auto& r : ex.replicas) {
    if (!r.degree) continue;
    ++counts[*r.degree];
    if (!first) first = r.degree;
  }
  if (!first) {
    std::string why = ex.replicas.empty() ? "no replicas" : ex.replicas.front().error;
    throw DegreeError("every replica failed: " + why);
  }
  std::size_t best = *first;
  for (const auto& [deg, cnt] : counts) {
    if (cnt > counts[best]) best = deg;
  }
  ex.degree = best;
  ex.stable = counts.size() == 1;
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> replica_plan(std::uint64_t seed, std::uint32_t p) {
  return {{seed, p}, {seed + 1, p}, {seed + 2, other_prime(p)}};
}

std::int64_t checked_pow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(r, b, &r)) throw std::overflow_error("formula value overflows 64 bits");
  }
  return r;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

std::optional<std::size_t> sliced_degree(const IdealSpec<Fp>& ideal, const std::vector<Fp>& y, unsigned c,
                                         std::uint64_t seed, const GroebnerOptions& opts) {
  const PipelineRings rings = PipelineRings::make(ideal.ring());
  for (unsigned attempt = 0; attempt <= kMaxReseeds; ++attempt) {
    auto rng = stream(seed, attempt);
    VoronoiOptions<Fp> vo;
    vo.codim = c;
    vo.groebner = opts;
    vo.decompose = false;
    vo.slices = random_slices(rings.u, c - 1, rng);
    auto rep = voronoi_ideal(ideal.with_codim(c), y, vo);
    if (rep.zero_dimensional && rep.degree) return rep.degree;
    if (c == 1) return std::nullopt;
  }
  return std::nullopt;
}

DegreeExperiment voronoi_degree_modp(const IdealSpec<Rational>& ideal, const std::vector<Rational>& y, unsigned c,
                                     std::uint32_t p, std::uint64_t seed, const GroebnerOptions& opts) {
  DegreeExperiment ex;
  ex.codim = c;
  ex.seed = seed;
  ex.prime = p;
  for (auto [s, q] : replica_plan(seed, p)) {
    DegreeReplica rep{s, q, {}, 1, {}};
    try {
      auto ring = Ring::make(ideal.ring()->names(), Field::prime(q), ideal.ring()->order());
      std::vector<Polynomial<Fp>> gens;
      for (const auto& g : ideal.gens()) gens.push_back(reduce_mod(g, ring));
      std::vector<Fp> yp;
      for (const auto& v : y) yp.push_back(Fp::from_rational(v, ring->field()));
      IdealSpec<Fp> ip(ring, gens, c);
      rep.degree = sliced_degree(ip, yp, c, s, opts);
      if (!rep.degree) rep.error = "not zero-dimensional after reseeding";
      if (rep.degree && !ex.ideal) {
        ex.ideal = ip;
        ex.y = yp;
      }
    } catch (const std::exception& e) {
      rep.error = e.what();
    }
    ex.replicas.push_back(std::move(rep));
  }
  finish(ex);
  return ex;
}

RandomHypersurface random_hypersurface(unsigned n, unsigned d, bool homogeneous, std::uint32_t p,
                                       std::uint64_t seed) {
  require(n >= 1 && d >= 1, "need n >= 1 and d >= 1");
  require(!homogeneous || n >= 2, "homogeneous hypersurfaces need n >= 2");
  std::vector<std::string> names;
  for (unsigned i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  auto ring = Ring::make(names, Field::prime(p));
  auto rng = stream(seed, 0);

  std::vector<Fp> y;
  std::size_t pivot = 0;
  for (;;) {
    y.clear();
    for (unsigned j = 0; j < n; ++j) y.push_back(draw(rng, p));
    if (!homogeneous) break;
    while (pivot < n && y[pivot].is_zero()) ++pivot;
    if (pivot < n) break;
    pivot = 0;
  }

  std::vector<Monomial> monos;
  Monomial scratch(n);
  exponents(n, homogeneous ? d : 0, d, scratch, 0, 0, monos);
  const Monomial fixed = homogeneous ? Monomial::unit(n, pivot, d) : Monomial(n);

  Polynomial<Fp> f(ring);
  for (const auto& m : monos) {
    if (m == fixed) continue;
    f = f + Polynomial<Fp>::term(ring, m, draw(rng, p));
  }
  // Choose the fixed coefficient so that f(y) = 0.
  const Fp at_y = f.evaluate(y);
  const Fp unit_at_y = Polynomial<Fp>::term(ring, fixed, Fp::one(ring->field())).evaluate(y);
  f = f + Polynomial<Fp>::term(ring, fixed, -(at_y / unit_at_y));
  return {IdealSpec<Fp>(ring, {f}, 1u), y};
}

DegreeExperiment hypersurface_degree(unsigned n, unsigned d, bool homogeneous, std::uint32_t p, std::uint64_t seed,
                                     const GroebnerOptions& opts) {
  DegreeExperiment ex;
  ex.codim = 1;
  ex.seed = seed;
  ex.prime = p;
  for (auto [s, q] : replica_plan(seed, p)) {
    DegreeReplica rep{s, q, {}, 0, {}};
    for (unsigned attempt = 0; attempt <= kMaxReseeds && !rep.degree; ++attempt) {
      ++rep.attempts;
      const std::uint64_t draw_seed = attempt == 0 ? s : s ^ (kGolden * (attempt + 7));
      try {
        auto h = random_hypersurface(n, d, homogeneous, q, draw_seed);
        if (!smooth_at(h.ideal, h.y)) {
          rep.error = "singular draw";
          continue;
        }
        rep.degree = sliced_degree(h.ideal, h.y, 1, draw_seed, opts);
        if (!rep.degree) {
          rep.error = "not zero-dimensional";
          continue;
        }
        rep.error.clear();
        if (!ex.ideal) {
          ex.ideal = h.ideal;
          ex.y = h.y;
        }
      } catch (const BudgetExhausted&) {
        throw;
      } catch (const std::exception& e) {
        rep.error = e.what();
      }
    }
    ex.replicas.push_back(std::move(rep));
  }
  finish(ex);
  return ex;
}

std::int64_t formula_curve(std::int64_t d, std::int64_t g) {
  require(d >= 1 && g >= 0, "need d >= 1 and g >= 0");
  return 4 * d + 2 * g - 6;
}

std::int64_t formula_surface(std::int64_t d, std::int64_t chi, std::int64_t g2) {
  require(d >= 1, "need d >= 1");
  return 3 * d + chi + 4 * g2 - 11;
}

std::int64_t formula_cone(std::int64_t d, std::int64_t g) {
  require(d >= 1 && g >= 0, "need d >= 1 and g >= 0");
  return 6 * d + 4 * g - 9;
}

std::int64_t conjecture_hypersurface(std::int64_t n, std::int64_t d, bool homogeneous) {
  require(d >= 2, "the conjecture needs d >= 2");
  require(n >= (homogeneous ? 2 : 1), "n out of range");
  // 4((d-1)^{n-1} - 1)/(d-2) written as a geometric sum, which also covers d = 2.
  std::int64_t geo = 0;
  for (std::int64_t k = 0; k <= n - 2; ++k) geo += checked_pow(d - 1, k);
  const std::int64_t top = checked_pow(d - 1, n - 1);
  if (homogeneous) return 2 * top + 4 * geo - 3 * n + 2;
  return checked_pow(d - 1, n) + 3 * top + 4 * geo - 3 * n;
}

std::int64_t lowrank_voronoi_degree(std::int64_t m, std::int64_t n, std::int64_t r) {
  require(r >= 1 && r < m && m <= n, "need 1 <= r < m <= n");
  return 2 * (m - r);
}

std::int64_t plane_curve_genus(std::int64_t d) {
  require(d >= 1, "need d >= 1");
  return (d - 1) * (d - 2) / 2;
}

std::int64_t eval_int_poly(std::span<const std::int64_t> coeffs, std::int64_t x) {
  std::int64_t v = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
  return v;
}

std::span<const TableRow> golden_table(bool homogeneous) {
  static const std::vector<TableRow> inhom{
      {1, {1, 2, 3, 4, 5, 6, 7}, {-1, 1}},
      {2, {2, 8, 16, 26, 38, 52, 68}, {-4, 1, 1}},
      {3, {3, 23, 61, 123, 215, 343}, {-7, 1, 0, 1}},
      {4, {4, 56, 202, 520, 1112}, {-10, 1, 1, -1, 1}},
      {5, {5, 125, 631}, {-13, 1, 0, 2, -2, 1}},
      {6, {6, 266, 1924}, {-16, 1, 1, -2, 4, -3, 1}},
      {7, {7, 551}, {-19, 1, 0, 3, -6, 7, -4, 1}},
  };
  static const std::vector<TableRow> hom{
      {2, {2, 4, 6, 8, 10, 12, 14}, {-2, 2}},
      {3, {3, 13, 27, 45, 67, 93, 123}, {-5, 0, 2}},
      {4, {4, 34, 96, 202}, {-8, 2, -2, 2}},
      {5, {5, 79, 309}, {-11, 0, 4, -4, 2}},
      {6, {6, 172}, {-14, 2, -4, 8, -6, 2}},
      {7, {7, 361}, {-17, 0, 6, -12, 14, -8, 2}},
  };
  return homogeneous ? std::span<const TableRow>(hom) : std::span<const TableRow>(inhom);
}

}  // namespace vorcell
