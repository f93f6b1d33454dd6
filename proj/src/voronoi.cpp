#include "vorcell/voronoi.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace vorcell {

PipelineRings PipelineRings::make(const RingPtr& x_ring) {
  std::vector<std::string> names = x_ring->names();
  std::vector<std::string> u_names;
  for (std::size_t j = 0; j < x_ring->nvars(); ++j) {
    std::string u = fresh_name(names, "u" + std::to_string(j + 1));
    names.push_back(u);
    u_names.push_back(u);
  }
  PipelineRings r;
  r.x = x_ring;
  r.xu = Ring::make(names, x_ring->field());
  r.u = Ring::make(u_names, x_ring->field());
  return r;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <Coefficient K>
Polynomial<K> lift_x(const Polynomial<K>& p, const PipelineRings& r) {
  std::vector<std::size_t> map(r.n());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  return p.remap(r.xu, map);
}

template <Coefficient K>
void check_x_ring(const IdealSpec<K>& ideal) {
  if (ideal.is_zero()) throw std::invalid_argument("ideal has no generators");
  if (ideal.ring()->nvars() > kMaxVariables / 2) {
    throw std::invalid_argument("too many variables for the x/u pipeline");
  }
}

template <Coefficient K>
Polynomial<K> determinant(const std::vector<std::vector<Polynomial<K>>>& m) {
  const std::size_t k = m.size();
  if (k == 1) return m[0][0];
  Polynomial<K> det(m[0][0].ring());
  for (std::size_t j = 0; j < k; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Polynomial<K>>> sub;
    for (std::size_t i = 1; i < k; ++i) {
      std::vector<Polynomial<K>> row;
      for (std::size_t c = 0; c < k; ++c) {
        if (c != j) row.push_back(m[i][c]);
      }
      sub.push_back(std::move(row));
    }
    Polynomial<K> term = m[0][j] * determinant(sub);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  if (k > n) return;
  for (;;) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

// Affine-linear form sum a_j u_j + b stored as (a_1..a_n, b).
template <Coefficient K>
std::vector<K> linear_row(const Polynomial<K>& p, std::size_t n) {
  const Field& f = p.ring()->field();
  std::vector<K> row(n + 1, K::zero(f));
  for (const auto& t : p.terms()) {
    if (t.mono.degree() > 1) throw std::invalid_argument("expected an affine-linear form, got " + p.to_string());
    if (t.mono.degree() == 0) {
      row[n] = t.coeff;
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (t.mono[j] == 1) row[j] = t.coeff;
    }
  }
  return row;
}

// Reduced row echelon form of affine rows; columns 0..n-1 are variables, n is the constant.
template <Coefficient K>
struct Echelon {
  std::vector<std::vector<K>> rows;
  std::vector<std::size_t> pivots;
  bool inconsistent = false;
};

template <Coefficient K>
Echelon<K> rref(std::vector<std::vector<K>> rows, std::size_t n) {
  Echelon<K> e;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][col].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    const K inv = rows[r][col].inverse();
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      const K c = rows[i][col];
      for (std::size_t j = 0; j <= n; ++j) rows[i][j] -= c * rows[r][j];
    }
    e.pivots.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i) {
    if (!rows[i][n].is_zero()) e.inconsistent = true;
  }
  rows.resize(r);
  e.rows = std::move(rows);
  return e;
}

template <Coefficient K>
std::size_t matrix_rank(std::vector<std::vector<K>> m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < m.size(); ++col) {
    std::size_t p = r;
    while (p < m.size() && m[p][col].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    const K inv = m[r][col].inverse();
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      const K c = m[i][col] * inv;
      if (c.is_zero()) continue;
      for (std::size_t j = col; j < cols; ++j) m[i][j] -= c * m[r][j];
    }
    ++r;
  }
  return r;
}

template <Coefficient K>
Polynomial<K> row_to_poly(const std::vector<K>& row, const RingPtr& ring) {
  const std::size_t n = ring->nvars();
  Polynomial<K> p = Polynomial<K>::constant(ring, row[n]);
  for (std::size_t j = 0; j < n; ++j) {
    if (!row[j].is_zero()) p = p + Polynomial<K>::term(ring, Monomial::unit(n, j), row[j]);
  }
  return p;
}

template <Coefficient K>
void check_point(const IdealSpec<K>& ideal, const std::vector<K>& y) {
  if (y.size() != ideal.ring()->nvars()) throw std::invalid_argument("point has the wrong number of coordinates");
  for (const auto& g : ideal.gens()) {
    if (!g.evaluate(y).is_zero()) throw PointNotOnVariety();
  }
}

template <Coefficient K>
void check_codim(std::size_t m, std::size_t n, unsigned c) {
  if (c < 1 || c > std::min(m + 1, n)) {
    throw std::invalid_argument("codimension " + std::to_string(c) + " out of range");
  }
}

// The (c+1)-minors of the augmented Jacobian.
template <Coefficient K>
std::vector<Polynomial<K>> bundle_minors(const AugmentedJacobian<K>& aj, unsigned c) {
  std::vector<Polynomial<K>> out;
  for (auto& p : minors(aj.rows, c + 1)) {
    if (!p.is_zero()) out.push_back(std::move(p));
  }
  return out;
}

// Rows of N_I(y): the minors with x replaced by y, as affine forms in u.
template <Coefficient K>
std::vector<std::vector<K>> normal_rows(const std::vector<Polynomial<K>>& mins, const PipelineRings& r,
                                        const std::vector<K>& y) {
  const std::size_t n = r.n();
  std::vector<Polynomial<K>> images;
  for (std::size_t j = 0; j < n; ++j) images.push_back(Polynomial<K>::constant(r.u, y[j]));
  for (std::size_t j = 0; j < n; ++j) images.push_back(Polynomial<K>::variable(r.u, j));
  std::vector<std::vector<K>> rows;
  for (const auto& m : mins) {
    auto lin = m.substitute(r.u, images);
    if (!lin.is_zero()) rows.push_back(linear_row(lin, n));
  }
  return rows;
}

template <Coefficient K>
Polynomial<K> sphere_difference(const PipelineRings& r, const std::vector<K>& y) {
  const std::size_t n = r.n();
  Polynomial<K> s(r.xu);
  for (std::size_t j = 0; j < n; ++j) {
    auto x = Polynomial<K>::variable(r.xu, j);
    auto u = Polynomial<K>::variable(r.xu, n + j);
    auto yc = Polynomial<K>::constant(r.xu, y[j]);
    s = s + (x - u) * (x - u) - (yc - u) * (yc - u);
  }
  return s;
}

template <Coefficient K>
unsigned resolve_codim(const IdealSpec<K>& ideal, const std::vector<K>& y, const VoronoiOptions<K>& opts) {
  if (ideal.codim()) return *ideal.codim();
  if (opts.codim) return *opts.codim;
  const std::size_t rank = jacobian_rank(ideal, y);
  if (rank == 0) {
    throw SingularPoint("the Jacobian vanishes at y; declare the codimension explicitly");
  }
  return static_cast<unsigned>(rank);
}

template <Coefficient K>
std::vector<Polynomial<K>> x_minus_y(const PipelineRings& r, const std::vector<K>& y) {
  std::vector<Polynomial<K>> out;
  for (std::size_t j = 0; j < r.n(); ++j) {
    out.push_back(Polynomial<K>::variable(r.xu, j) - Polynomial<K>::constant(r.xu, y[j]));
  }
  return out;
}

// Vor restricted to the free normal-space coordinates, computed one
// saturation piece (C : (x_i - y_i)^inf) at a time in [t, x, free u].
template <Coefficient K>
IdealSpec<K> sliced_pieces(const std::vector<Polynomial<K>>& crit, const PipelineRings& r, const std::vector<K>& y,
                           const Echelon<K>& lin, const RingPtr& free_ring, const std::vector<std::size_t>& free,
                           const GroebnerOptions& gopts) {
  const std::size_t n = r.n();
  const Field& field = r.x->field();
  std::vector<std::string> names{fresh_name(r.xu->names(), "t")};
  for (std::size_t j = 0; j < n; ++j) names.push_back(r.x->name(j));
  for (std::size_t f : free) names.push_back(r.u->name(f));
  const RingPtr work = Ring::make(names, field);

  std::vector<Polynomial<K>> images;
  for (std::size_t j = 0; j < n; ++j) images.push_back(Polynomial<K>::variable(work, 1 + j));
  std::vector<std::optional<Polynomial<K>>> u_image(n);
  for (std::size_t k = 0; k < free.size(); ++k) u_image[free[k]] = Polynomial<K>::variable(work, 1 + n + k);
  for (std::size_t i = 0; i < lin.rows.size(); ++i) {
    // u_p = -(b + sum over free columns a_f u_f)
    const auto& row = lin.rows[i];
    Polynomial<K> e = Polynomial<K>::constant(work, -row[n]);
    for (std::size_t k = 0; k < free.size(); ++k) {
      e = e - Polynomial<K>::variable(work, 1 + n + k).scaled(row[free[k]]);
    }
    u_image[lin.pivots[i]] = e;
  }
  for (std::size_t j = 0; j < n; ++j) images.push_back(*u_image[j]);

  std::vector<Polynomial<K>> base;
  for (const auto& g : crit) {
    auto w = g.substitute(work, images);
    if (!w.is_zero()) base.push_back(std::move(w));
  }

  const auto t = Polynomial<K>::variable(work, 0);
  const auto one = Polynomial<K>::constant(work, K::one(field));
  std::vector<std::size_t> drop;
  for (std::size_t v = 0; v <= n; ++v) drop.push_back(v);

  // Zero-dimensional pieces with one free coordinate reduce to a minimal
  // polynomial; anything else goes through block elimination.
  std::optional<UPoly<K>> uni;
  std::vector<IdealSpec<K>> others;
  for (std::size_t i = 0; i < n; ++i) {
    auto gens = base;
    gens.push_back(one - t * (Polynomial<K>::variable(work, 1 + i) - Polynomial<K>::constant(work, y[i])));
    IdealSpec<K> piece(work, gens);
    const std::string stage = "saturation piece " + r.x->name(i);
    if (free.size() == 1) {
      auto gb = buchberger(piece, gopts, stage);
      if (is_zero_dimensional(gb)) {
        auto p = eliminant(gb, 1 + n);
        uni = uni ? lcm(*uni, p) : p;
        continue;
      }
    }
    IdealSpec<K> e = eliminate(piece, drop, gopts, stage);
    std::vector<Polynomial<K>> g;
    for (const auto& q : e.gens()) g.push_back(reorder(q, free_ring));
    others.emplace_back(free_ring, std::move(g));
  }
  if (uni) others.emplace_back(free_ring, std::vector<Polynomial<K>>{uni->to_polynomial(free_ring, 0)});
  IdealSpec<K> acc = others.back();
  for (std::size_t k = 0; k + 1 < others.size(); ++k) acc = intersect(acc, others[k], gopts);
  return acc;
}

template <Coefficient K>
void decompose(VoronoiReport<K>& rep, const Echelon<K>& lin, const std::vector<std::size_t>& free) {
  if constexpr (std::is_same_v<K, Rational>) {
    const std::size_t n = rep.rings.n();
    const QPoly& p = *rep.boundary_poly;
    std::vector<VoronoiComponent<K>> comps;
    QPoly rest = p;
    auto coordinates = [&](const Rational& s) {
      std::vector<Rational> pt(n);
      pt[free[0]] = s;
      for (std::size_t i = 0; i < lin.rows.size(); ++i) {
        pt[lin.pivots[i]] = -(lin.rows[i][n] + lin.rows[i][free[0]] * s);
      }
      return pt;
    };
    for (const Rational& s : rational_roots(p)) {
      QPoly lin_factor(Field::rationals(), {-s, Rational(1)});
      for (;;) {
        auto [q, rem] = rest.divmod(lin_factor);
        if (!rem.is_zero()) break;
        rest = q;
      }
      std::vector<Rational> pt = coordinates(s);
      std::vector<Polynomial<K>> gens;
      for (std::size_t j = 0; j < n; ++j) {
        gens.push_back(Polynomial<K>::variable(rep.rings.u, j) - Polynomial<K>::constant(rep.rings.u, pt[j]));
      }
      comps.push_back({IdealSpec<K>(rep.rings.u, gens), pt, true});
    }
    if (rest.degree() > 0) {
      std::vector<Polynomial<K>> gens;
      for (const auto& row : lin.rows) gens.push_back(row_to_poly(row, rep.rings.u));
      gens.push_back(squarefree_part(rest).to_polynomial(rep.rings.u, free[0]));
      IdealSpec<K> c = buchberger(IdealSpec<K>(rep.rings.u, gens)).ideal();
      comps.push_back({c, std::nullopt, count_real_roots(rest) > 0});
    }
    rep.components = std::move(comps);
  } else {
    (void)rep;
    (void)lin;
    (void)free;
  }
}

}  // namespace

template <Coefficient K>
AugmentedJacobian<K> augmented_jacobian(const IdealSpec<K>& ideal) {
  check_x_ring(ideal);
  AugmentedJacobian<K> aj{PipelineRings::make(ideal.ring()), {}};
  const auto& r = aj.rings;
  const std::size_t n = r.n();
  std::vector<Polynomial<K>> row0;
  for (std::size_t j = 0; j < n; ++j) {
    row0.push_back(Polynomial<K>::variable(r.xu, n + j) - Polynomial<K>::variable(r.xu, j));
  }
  aj.rows.push_back(std::move(row0));
  for (const auto& f : ideal.gens()) {
    std::vector<Polynomial<K>> row;
    for (std::size_t j = 0; j < n; ++j) row.push_back(lift_x(f.partial_derivative(j), r));
    aj.rows.push_back(std::move(row));
  }
  return aj;
}

template <Coefficient K>
std::vector<Polynomial<K>> minors(const std::vector<std::vector<Polynomial<K>>>& m, std::size_t k) {
  std::vector<Polynomial<K>> out;
  if (m.empty() || k == 0) return out;
  std::vector<std::vector<std::size_t>> rs, cs;
  combinations(m.size(), k, rs);
  combinations(m[0].size(), k, cs);
  for (const auto& ri : rs) {
    for (const auto& ci : cs) {
      std::vector<std::vector<Polynomial<K>>> sub;
      for (std::size_t a : ri) {
        std::vector<Polynomial<K>> row;
        for (std::size_t b : ci) row.push_back(m[a][b]);
        sub.push_back(std::move(row));
      }
      out.push_back(determinant(sub));
    }
  }
  return out;
}

template <Coefficient K>
IdealSpec<K> normal_bundle_ideal(const IdealSpec<K>& ideal, unsigned c) {
  check_codim<K>(ideal.gens().size(), ideal.ring()->nvars(), c);
  auto aj = augmented_jacobian(ideal);
  std::vector<Polynomial<K>> gens;
  for (const auto& f : ideal.gens()) gens.push_back(lift_x(f, aj.rings));
  for (auto& m : bundle_minors(aj, c)) gens.push_back(std::move(m));
  return IdealSpec<K>(aj.rings.xu, std::move(gens), c);
}

template <Coefficient K>
std::size_t jacobian_rank(const IdealSpec<K>& ideal, const std::vector<K>& y) {
  std::vector<std::vector<K>> jac;
  for (const auto& f : ideal.gens()) {
    std::vector<K> row;
    for (std::size_t j = 0; j < ideal.ring()->nvars(); ++j) row.push_back(f.partial_derivative(j).evaluate(y));
    jac.push_back(std::move(row));
  }
  return matrix_rank(std::move(jac));
}

template <Coefficient K>
IdealSpec<K> normal_space_ideal(const IdealSpec<K>& ideal, const std::vector<K>& y, unsigned c, bool allow_singular) {
  check_x_ring(ideal);
  check_codim<K>(ideal.gens().size(), ideal.ring()->nvars(), c);
  check_point(ideal, y);
  const std::size_t rank = jacobian_rank(ideal, y);
  if (rank > c) {
    throw std::invalid_argument("codimension " + std::to_string(c) + " is below the Jacobian rank " +
                                std::to_string(rank) + " at y");
  }
  if (rank < c && !allow_singular) {
    throw SingularPoint("y is a singular point: Jacobian rank " + std::to_string(rank) + " < codimension " +
                        std::to_string(c));
  }
  auto aj = augmented_jacobian(ideal);
  auto lin = rref(normal_rows(bundle_minors(aj, c), aj.rings, y), aj.rings.n());
  std::vector<Polynomial<K>> gens;
  for (const auto& row : lin.rows) gens.push_back(row_to_poly(row, aj.rings.u));
  return IdealSpec<K>(aj.rings.u, std::move(gens), static_cast<unsigned>(gens.size()));
}

template <Coefficient K>
IdealSpec<K> critical_ideal(const IdealSpec<K>& ideal, const std::vector<K>& y, unsigned c, bool allow_singular) {
  IdealSpec<K> ns = normal_space_ideal(ideal, y, c, allow_singular);
  IdealSpec<K> nb = normal_bundle_ideal(ideal, c);
  const PipelineRings r = PipelineRings::make(ideal.ring());
  std::vector<Polynomial<K>> gens = nb.gens();
  std::vector<std::size_t> map(r.n());
  for (std::size_t j = 0; j < r.n(); ++j) map[j] = r.n() + j;
  for (const auto& g : ns.gens()) gens.push_back(g.remap(r.xu, map));
  gens.push_back(sphere_difference(r, y));
  return IdealSpec<K>(r.xu, std::move(gens), c);
}

template <Coefficient K>
VoronoiReport<K> voronoi_ideal(const IdealSpec<K>& ideal, const std::vector<K>& y, const VoronoiOptions<K>& opts) {
  check_x_ring(ideal);
  check_point(ideal, y);
  const unsigned c = resolve_codim(ideal, y, opts);

  auto start = Clock::now();
  const IdealSpec<K> ns = normal_space_ideal(ideal, y, c, opts.allow_singular);
  auto aj = augmented_jacobian(ideal);
  const PipelineRings& r = aj.rings;
  const std::size_t n = r.n();
  const std::vector<Polynomial<K>> mins = bundle_minors(aj, c);

  VoronoiReport<K> rep{ideal, y, c, r, ns, IdealSpec<K>(r.u), false, {}, {}, {}, {}, {}, {}, {}, {}};

  std::vector<std::vector<K>> rows;
  for (const auto& g : ns.gens()) rows.push_back(linear_row(g, n));
  for (const auto& s : opts.slices) {
    if (!same_ring(s.ring(), r.u)) throw RingMismatch("slices must live in the u ring");
    rows.push_back(linear_row(s, n));
  }
  const Echelon<K> lin = rref(rows, n);
  std::vector<std::size_t> free;
  for (std::size_t j = 0, p = 0; j < n; ++j) {
    if (p < lin.pivots.size() && lin.pivots[p] == j) {
      ++p;
    } else {
      free.push_back(j);
    }
  }
  rep.timings.emplace_back("normal_space", seconds_since(start));

  const auto unit = Polynomial<K>::constant(r.u, K::one(r.u->field()));
  if (lin.inconsistent) {
    rep.voronoi_ideal = IdealSpec<K>(r.u, {unit});
    rep.zero_dimensional = true;
    rep.degree = 0;
    return rep;
  }

  std::vector<Polynomial<K>> crit;
  for (const auto& f : ideal.gens()) crit.push_back(lift_x(f, r));
  crit.insert(crit.end(), mins.begin(), mins.end());
  crit.push_back(sphere_difference(r, y));

  start = Clock::now();
  IdealSpec<K> vor(r.u);
  if (opts.strategy == VoronoiStrategy::Direct) {
    std::vector<std::size_t> to_u(n);
    for (std::size_t j = 0; j < n; ++j) to_u[j] = n + j;
    std::vector<Polynomial<K>> gens = crit;
    for (const auto& g : ns.gens()) gens.push_back(g.remap(r.xu, to_u));
    for (const auto& s : opts.slices) gens.push_back(s.remap(r.xu, to_u));
    IdealSpec<K> sat = saturate(IdealSpec<K>(r.xu, gens), IdealSpec<K>(r.xu, x_minus_y(r, y)), opts.groebner);
    std::vector<std::size_t> xs(n);
    for (std::size_t j = 0; j < n; ++j) xs[j] = j;
    IdealSpec<K> e = eliminate(sat, xs, opts.groebner, "elimination");
    std::vector<Polynomial<K>> g;
    for (const auto& q : e.gens()) g.push_back(reorder(q, r.u));
    vor = IdealSpec<K>(r.u, std::move(g));
  } else {
    std::vector<std::string> free_names;
    for (std::size_t f : free) free_names.push_back(r.u->name(f));
    const RingPtr free_ring = Ring::make(free_names, r.u->field());
    IdealSpec<K> restricted = sliced_pieces(crit, r, y, lin, free_ring, free, opts.groebner);
    std::vector<Polynomial<K>> gens;
    for (const auto& row : lin.rows) gens.push_back(row_to_poly(row, r.u));
    for (const auto& q : restricted.gens()) gens.push_back(q.remap(r.u, free));
    vor = IdealSpec<K>(r.u, std::move(gens));
  }
  rep.timings.emplace_back("saturation_elimination", seconds_since(start));

  start = Clock::now();
  const GroebnerBasis<K> gb = buchberger(vor, opts.groebner, "voronoi basis");
  rep.voronoi_ideal = gb.ideal();
  rep.zero_dimensional = is_zero_dimensional(gb);
  if (rep.zero_dimensional) rep.degree = quotient_degree(gb);
  if (!gb.is_unit() && !gb.is_zero()) {
    if (free.size() == 1 && rep.zero_dimensional) {
      rep.boundary_poly = eliminant(gb, free[0]);
      rep.boundary_var = free[0];
      std::vector<Polynomial<K>> rad;
      for (const auto& row : lin.rows) rad.push_back(row_to_poly(row, r.u));
      const UPoly<K> sq = squarefree_part(*rep.boundary_poly);
      rad.push_back(sq.to_polynomial(r.u, free[0]));
      rep.radical = buchberger(IdealSpec<K>(r.u, rad), opts.groebner, "radical").ideal();
      rep.radical_degree = static_cast<std::size_t>(sq.degree());
    }
    std::vector<const Polynomial<K>*> nonlinear;
    for (const auto& g : gb.elements()) {
      if (g.total_degree() > 1) nonlinear.push_back(&g);
    }
    if (nonlinear.size() == 1) rep.boundary_hypersurface = *nonlinear[0];
  }
  if (opts.decompose && rep.boundary_poly && rep.boundary_poly->degree() > 0) decompose(rep, lin, free);
  rep.timings.emplace_back("basis", seconds_since(start));
  return rep;
}

NormalLineBoundary boundary_on_normal_line(const VoronoiReport<Rational>& report) {
  if (report.codim != 1) throw std::invalid_argument("the normal line needs codimension 1");
  const std::size_t n = report.rings.n();
  NormalLineBoundary out;
  for (const auto& f : report.input.gens()) {
    std::vector<Rational> grad;
    bool nonzero = false;
    for (std::size_t j = 0; j < n; ++j) {
      grad.push_back(f.partial_derivative(j).evaluate(report.y));
      nonzero = nonzero || !grad.back().is_zero();
    }
    if (nonzero) {
      out.direction = std::move(grad);
      break;
    }
  }
  if (out.direction.empty()) throw std::invalid_argument("no generator has a nonzero gradient at y");

  const RingPtr line = Ring::make({"lambda"}, Field::rationals());
  const auto lambda = Polynomial<Rational>::variable(line, 0);
  std::vector<Polynomial<Rational>> images;
  for (std::size_t j = 0; j < n; ++j) {
    images.push_back(Polynomial<Rational>::constant(line, report.y[j]) + lambda.scaled(out.direction[j]));
  }
  QPoly g(Field::rationals());
  for (const auto& p : report.voronoi_ideal.gens()) {
    g = gcd(g, QPoly::from_polynomial(p.substitute(line, images), 0));
  }
  if (g.is_zero()) throw std::domain_error("the Voronoi ideal contains the whole normal line");
  out.poly = g;

  double norm = 0;
  for (const auto& d : out.direction) norm += d.to_double() * d.to_double();
  norm = std::sqrt(norm);

  out.reach = std::numeric_limits<double>::infinity();
  if (g.degree() <= 0) return out;
  out.roots = sturm_isolate(g, Rational(mpz_class(1), mpz_class(1) << 48));
  for (const auto& iv : out.roots) {
    const double v = iv.exact() ? iv.lo.to_double() : iv.midpoint().to_double();
    out.approx.push_back(v);
    if (v <= 0 && (!out.lower || v > *out.lower)) out.lower = v;
    if (v >= 0 && (!out.upper || v < *out.upper)) out.upper = v;
  }
  if (out.lower) out.reach = std::min(out.reach, -*out.lower * norm);
  if (out.upper) out.reach = std::min(out.reach, *out.upper * norm);
  return out;
}

#define VORCELL_VORONOI_INSTANTIATE(K)                                                                    \
  template AugmentedJacobian<K> augmented_jacobian(const IdealSpec<K>&);                                   \
  template std::vector<Polynomial<K>> minors(const std::vector<std::vector<Polynomial<K>>>&, std::size_t); \
  template IdealSpec<K> normal_bundle_ideal(const IdealSpec<K>&, unsigned);                                \
  template std::size_t jacobian_rank(const IdealSpec<K>&, const std::vector<K>&);                          \
  template IdealSpec<K> normal_space_ideal(const IdealSpec<K>&, const std::vector<K>&, unsigned, bool);    \
  template IdealSpec<K> critical_ideal(const IdealSpec<K>&, const std::vector<K>&, unsigned, bool);        \
  template VoronoiReport<K> voronoi_ideal(const IdealSpec<K>&, const std::vector<K>&, const VoronoiOptions<K>&);

VORCELL_VORONOI_INSTANTIATE(Rational)
VORCELL_VORONOI_INSTANTIATE(Fp)

}  // namespace vorcell
