#include "vorcell/groebner.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <unordered_map>
#include <unordered_set>

namespace vorcell {

template <Coefficient K>
IdealSpec<K>::IdealSpec(RingPtr ring, std::vector<Polynomial<K>> gens, std::optional<unsigned> codim)
    : ring_(std::move(ring)), codim_(codim) {
  if (!ring_) throw std::invalid_argument("ideal needs a ring");
  for (auto& g : gens) {
    if (!same_ring(g.ring(), ring_)) throw RingMismatch("ideal generator lives in another ring");
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

template <Coefficient K>
IdealSpec<K> IdealSpec<K>::operator+(const IdealSpec& o) const {
  if (!same_ring(ring_, o.ring_)) throw RingMismatch("ideal sum across rings");
  std::vector<Polynomial<K>> g = gens_;
  g.insert(g.end(), o.gens_.begin(), o.gens_.end());
  return IdealSpec(ring_, std::move(g), codim_);
}

GroebnerOptions GroebnerOptions::from_env() {
  GroebnerOptions o;
  if (const char* env = std::getenv("VORONOI_BUDGET"); env != nullptr && *env != '\0') {
    std::string_view s(env);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v == 0) {
      throw std::invalid_argument("VORONOI_BUDGET must be a positive integer, got '" + std::string(s) + "'");
    }
    o.max_reductions = v;
  }
  return o;
}

template <Coefficient K>
Polynomial<K> reorder(const Polynomial<K>& p, const RingPtr& target) {
  if (same_ring(p.ring(), target)) return p;
  if (p.ring()->names() != target->names() || !(p.ring()->field() == target->field())) {
    throw RingMismatch("reorder needs the same variables and field");
  }
  std::vector<std::size_t> id(target->nvars());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
  return p.remap(target, id);
}

namespace {

// Remainder of f modulo the monic polynomials in `basis`, skipping index `skip`.
template <Coefficient K>
Polynomial<K> reduce_full(const Polynomial<K>& f, const std::vector<const Polynomial<K>*>& basis,
                          std::size_t skip = static_cast<std::size_t>(-1)) {
  const RingPtr& ring = f.ring();
  const MonomialOrder& ord = ring->order();
  std::vector<Term<K>> p = f.terms();
  std::vector<Term<K>> rem;
  std::vector<Term<K>> next;
  std::size_t pos = 0;
  while (pos < p.size()) {
    const Term<K>& lead = p[pos];
    const Polynomial<K>* div = nullptr;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (k == skip) continue;
      if (basis[k]->leading_monomial().divides(lead.mono)) {
        div = basis[k];
        break;
      }
    }
    if (div == nullptr) {
      rem.push_back(lead);
      ++pos;
      continue;
    }
    // p <- p - c*m*div, where the leading terms cancel by construction.
    const Monomial m = lead.mono / div->leading_monomial();
    const K c = lead.coeff / div->leading_coeff();
    const auto& g = div->terms();
    next.clear();
    next.reserve(p.size() - pos + g.size());
    std::size_t i = pos + 1, j = 1;
    Monomial gm;
    bool have = false;
    while (i < p.size() && j < g.size()) {
      if (!have) {
        gm = g[j].mono * m;
        have = true;
      }
      const int cmp = ord.compare(p[i].mono, gm);
      if (cmp > 0) {
        next.push_back(std::move(p[i++]));
      } else if (cmp < 0) {
        next.push_back({gm, -(c * g[j].coeff)});
        ++j;
        have = false;
      } else {
        K s = p[i].coeff - c * g[j].coeff;
        if (!s.is_zero()) next.push_back({gm, std::move(s)});
        ++i;
        ++j;
        have = false;
      }
    }
    for (; i < p.size(); ++i) next.push_back(std::move(p[i]));
    for (; j < g.size(); ++j) next.push_back({g[j].mono * m, -(c * g[j].coeff)});
    std::swap(p, next);
    pos = 0;
  }
  return Polynomial<K>::from_sorted_terms(ring, std::move(rem));
}

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

template <Coefficient K>
class Buchberger {
public:
  Buchberger(RingPtr ring, const GroebnerOptions& opts, std::string stage)
      : ring_(std::move(ring)), ord_(ring_->order()), opts_(opts), stage_(std::move(stage)) {}

  std::vector<Polynomial<K>> run(const std::vector<Polynomial<K>>& gens) {
    for (const auto& f : gens) {
      if (add(reduce(f))) return unit();
    }
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k) {
        if (before(pairs_[k], pairs_[best])) best = k;
      }
      const Pair p = pairs_[best];
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
      if (++reductions_ > opts_.max_reductions) throw BudgetExhausted(stage_, opts_.max_reductions);
      if (add(reduce(spoly(p)))) return unit();
    }
    return finish();
  }

private:
  bool before(const Pair& a, const Pair& b) const {
    const int c = ord_.compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  }

  Polynomial<K> spoly(const Pair& p) const {
    const auto& f = polys_[p.i];
    const auto& g = polys_[p.j];
    const K one = K::one(ring_->field());
    return f.mul_term(p.lcm / f.leading_monomial(), one).sub_mul_term(one, p.lcm / g.leading_monomial(), g);
  }

  Polynomial<K> reduce(const Polynomial<K>& f) const {
    std::vector<const Polynomial<K>*> basis;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (active_[k]) basis.push_back(&polys_[k]);
    }
    return reduce_full(f, basis);
  }

  // Returns true when h is a nonzero constant, i.e. the ideal is the whole ring.
  bool add(const Polynomial<K>& reduced) {
    if (reduced.is_zero()) return false;
    if (reduced.is_constant()) return true;
    polys_.push_back(reduced.monic());
    active_.push_back(false);
    update(polys_.size() - 1);
    return false;
  }

  // Gebauer-Moeller installation of a new element h.
  void update(std::size_t h) {
    const Monomial& lh = polys_[h].leading_monomial();
    std::vector<Pair> c;
    for (std::size_t g = 0; g < h; ++g) {
      if (active_[g]) c.push_back({g, h, lcm(polys_[g].leading_monomial(), lh)});
    }
    std::vector<Pair> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      bool keep = true;
      if (!coprime(polys_[c[k].i].leading_monomial(), lh)) {
        for (std::size_t q = k + 1; q < c.size() && keep; ++q) {
          if (c[q].lcm.divides(c[k].lcm)) keep = false;
        }
        for (std::size_t q = 0; q < d.size() && keep; ++q) {
          if (d[q].lcm.divides(c[k].lcm)) keep = false;
        }
      }
      if (keep) d.push_back(c[k]);
    }
    std::erase_if(pairs_, [&](const Pair& p) {
      return lh.divides(p.lcm) && !(lcm(polys_[p.i].leading_monomial(), lh) == p.lcm) &&
             !(lcm(polys_[p.j].leading_monomial(), lh) == p.lcm);
    });
    for (auto& p : d) {
      if (!coprime(polys_[p.i].leading_monomial(), lh)) pairs_.push_back(std::move(p));
    }
    for (std::size_t g = 0; g < h; ++g) {
      if (active_[g] && lh.divides(polys_[g].leading_monomial())) active_[g] = false;
    }
    active_[h] = true;
  }

  std::vector<Polynomial<K>> unit() const {
    return {Polynomial<K>::constant(ring_, K::one(ring_->field()))};
  }

  std::vector<Polynomial<K>> finish() const {
    std::vector<const Polynomial<K>*> basis;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (active_[k]) basis.push_back(&polys_[k]);
    }
    std::vector<Polynomial<K>> out;
    out.reserve(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Polynomial<K>& g = *basis[k];
      const Polynomial<K> tail = Polynomial<K>::from_sorted_terms(
          ring_, std::vector<Term<K>>(g.terms().begin() + 1, g.terms().end()));
      out.push_back(Polynomial<K>::term(ring_, g.leading_monomial(), K::one(ring_->field())) +
                    reduce_full(tail, basis, k));
    }
    std::sort(out.begin(), out.end(), [&](const Polynomial<K>& a, const Polynomial<K>& b) {
      return ord_.compare(a.leading_monomial(), b.leading_monomial()) > 0;
    });
    return out;
  }

  RingPtr ring_;
  const MonomialOrder& ord_;
  GroebnerOptions opts_;
  std::string stage_;
  std::vector<Polynomial<K>> polys_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
  std::size_t reductions_ = 0;
};

// Ring with a fresh variable prepended.
RingPtr with_leading_variable(const RingPtr& ring, const std::string& stem) {
  std::vector<std::string> names{fresh_name(ring->names(), stem)};
  names.insert(names.end(), ring->names().begin(), ring->names().end());
  return Ring::make(names, ring->field(), MonomialOrder::grevlex());
}

template <Coefficient K>
Polynomial<K> shift_up(const Polynomial<K>& p, const RingPtr& target) {
  std::vector<std::size_t> map(p.ring()->nvars());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i + 1;
  return p.remap(target, map);
}

template <Coefficient K>
IdealSpec<K> into_ring(const IdealSpec<K>& ideal, const RingPtr& ring) {
  std::vector<Polynomial<K>> g;
  for (const auto& p : ideal.gens()) g.push_back(reorder(p, ring));
  return IdealSpec<K>(ring, std::move(g));
}

}  // namespace

template <Coefficient K>
Polynomial<K> GroebnerBasis<K>::normal_form(const Polynomial<K>& f) const {
  if (!same_ring(f.ring(), ring_)) throw RingMismatch("normal form across rings or monomial orders");
  std::vector<const Polynomial<K>*> basis;
  for (const auto& g : elems_) basis.push_back(&g);
  return reduce_full(f, basis);
}

template <Coefficient K>
GroebnerBasis<K> buchberger(const IdealSpec<K>& ideal, const GroebnerOptions& opts, const std::string& stage) {
  Buchberger<K> b(ideal.ring(), opts, stage);
  return GroebnerBasis<K>(ideal.ring(), b.run(ideal.gens()));
}

template <Coefficient K>
GroebnerBasis<K> buchberger(const IdealSpec<K>& ideal, const MonomialOrder& order, const GroebnerOptions& opts) {
  return buchberger(into_ring(ideal, ideal.ring()->with_order(order)), opts);
}

template <Coefficient K>
IdealSpec<K> eliminate(const IdealSpec<K>& ideal, const std::vector<std::size_t>& drop_vars,
                       const GroebnerOptions& opts, const std::string& stage) {
  const RingPtr& ring = ideal.ring();
  const std::size_t n = ring->nvars();
  std::vector<bool> dropped(n, false);
  for (std::size_t v : drop_vars) {
    if (v >= n || dropped[v]) throw std::invalid_argument("bad elimination variable list");
    dropped[v] = true;
  }
  std::vector<std::string> names;
  std::vector<std::string> kept;
  std::vector<std::size_t> to_work(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (dropped[i]) {
      to_work[i] = names.size();
      names.push_back(ring->name(i));
    }
  }
  const std::size_t k = names.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!dropped[i]) {
      to_work[i] = names.size();
      names.push_back(ring->name(i));
      kept.push_back(ring->name(i));
    }
  }
  const RingPtr work =
      Ring::make(names, ring->field(), k == 0 ? MonomialOrder::grevlex() : MonomialOrder::block_elim(k));
  std::vector<Polynomial<K>> gens;
  for (const auto& g : ideal.gens()) gens.push_back(g.remap(work, to_work));
  const GroebnerBasis<K> gb = buchberger(IdealSpec<K>(work, std::move(gens)), opts, stage);

  const MonomialOrder::Kind kind = ring->order().kind();
  const RingPtr sub = Ring::make(kept, ring->field(),
                                 kind == MonomialOrder::Kind::Lex ? MonomialOrder::lex() : MonomialOrder::grevlex());
  std::vector<std::size_t> from_work(n, kDroppedVariable);
  for (std::size_t i = k; i < n; ++i) from_work[i] = i - k;
  std::vector<Polynomial<K>> out;
  for (const auto& g : gb.elements()) {
    bool free = true;
    for (std::size_t v = 0; v < k && free; ++v) free = g.leading_monomial()[v] == 0;
    if (free) out.push_back(g.remap(sub, from_work));
  }
  return IdealSpec<K>(sub, std::move(out));
}

template <Coefficient K>
IdealSpec<K> intersect(const IdealSpec<K>& i, const IdealSpec<K>& j, const GroebnerOptions& opts) {
  if (!same_ring(i.ring(), j.ring())) throw RingMismatch("intersection across rings");
  if (i.is_zero() || j.is_zero()) return IdealSpec<K>(i.ring());
  const RingPtr big = with_leading_variable(i.ring(), "t");
  const auto t = Polynomial<K>::variable(big, 0);
  const auto one_minus_t = Polynomial<K>::constant(big, K::one(big->field())) - t;
  std::vector<Polynomial<K>> gens;
  for (const auto& f : i.gens()) gens.push_back(t * shift_up(f, big));
  for (const auto& g : j.gens()) gens.push_back(one_minus_t * shift_up(g, big));
  return into_ring(eliminate(IdealSpec<K>(big, std::move(gens)), {0}, opts, "intersection"), i.ring());
}

template <Coefficient K>
IdealSpec<K> saturate(const IdealSpec<K>& i, const IdealSpec<K>& j, const GroebnerOptions& opts) {
  if (!same_ring(i.ring(), j.ring())) throw RingMismatch("saturation across rings");
  const RingPtr& ring = i.ring();
  if (j.is_zero()) return IdealSpec<K>(ring, {Polynomial<K>::constant(ring, K::one(ring->field()))});
  const RingPtr big = with_leading_variable(ring, "t");
  const auto t = Polynomial<K>::variable(big, 0);
  const auto one = Polynomial<K>::constant(big, K::one(big->field()));
  std::optional<IdealSpec<K>> acc;
  for (const auto& g : j.gens()) {
    std::vector<Polynomial<K>> gens;
    for (const auto& f : i.gens()) gens.push_back(shift_up(f, big));
    gens.push_back(one - t * shift_up(g, big));
    IdealSpec<K> sat = into_ring(eliminate(IdealSpec<K>(big, std::move(gens)), {0}, opts, "saturation"), ring);
    acc = acc ? intersect(*acc, sat, opts) : sat;
  }
  return acc->with_codim(i.codim());
}

template <Coefficient K>
bool is_zero_dimensional(const GroebnerBasis<K>& g) {
  if (g.is_unit()) return true;
  const std::size_t n = g.ring()->nvars();
  for (std::size_t v = 0; v < n; ++v) {
    bool found = false;
    for (const auto& e : g.elements()) {
      const Monomial& lm = e.leading_monomial();
      if (lm[v] > 0 && lm.degree() == lm[v]) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

template <Coefficient K>
std::vector<Monomial> standard_monomials(const GroebnerBasis<K>& g) {
  if (!is_zero_dimensional(g)) throw NotZeroDimensional("ideal is not zero-dimensional");
  std::vector<Monomial> out;
  if (g.is_unit()) return out;
  const std::size_t n = g.ring()->nvars();
  auto standard = [&](const Monomial& m) {
    for (const auto& e : g.elements()) {
      if (e.leading_monomial().divides(m)) return false;
    }
    return true;
  };
  struct Hash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
  };
  std::unordered_set<Monomial, Hash> seen;
  std::vector<Monomial> frontier{Monomial(n)};
  seen.insert(frontier[0]);
  while (!frontier.empty()) {
    Monomial m = frontier.back();
    frontier.pop_back();
    out.push_back(m);
    for (std::size_t v = 0; v < n; ++v) {
      Monomial next = m * Monomial::unit(n, v);
      if (seen.contains(next) || !standard(next)) continue;
      seen.insert(next);
      frontier.push_back(next);
    }
  }
  const MonomialOrder& ord = g.order();
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ord.compare(a, b) < 0; });
  return out;
}

template <Coefficient K>
UPoly<K> eliminant(const GroebnerBasis<K>& g, std::size_t var) {
  const RingPtr& ring = g.ring();
  const Field& f = ring->field();
  const std::vector<Monomial> basis = standard_monomials(g);
  if (basis.empty()) return UPoly<K>(f, {K::one(f)});
  struct Hash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
  };
  std::unordered_map<Monomial, std::size_t, Hash> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  const std::size_t dim = basis.size();

  // Rows in echelon form with the power combination that produced each one.
  struct Row {
    std::size_t pivot;
    std::vector<K> vec;
    std::vector<K> comb;
  };
  std::vector<Row> rows;
  const auto x = Polynomial<K>::variable(ring, var);
  Polynomial<K> power = Polynomial<K>::constant(ring, K::one(f));
  for (std::size_t k = 0; k <= dim; ++k) {
    if (k > 0) power = g.normal_form(power * x);
    std::vector<K> vec(dim, K::zero(f));
    for (const auto& t : power.terms()) vec[index.at(t.mono)] = t.coeff;
    std::vector<K> comb(k + 1, K::zero(f));
    comb[k] = K::one(f);
    for (const auto& r : rows) {
      const K c = vec[r.pivot];
      if (c.is_zero()) continue;
      for (std::size_t i = 0; i < dim; ++i) vec[i] -= c * r.vec[i];
      for (std::size_t i = 0; i < r.comb.size(); ++i) comb[i] -= c * r.comb[i];
    }
    std::size_t p = 0;
    while (p < dim && vec[p].is_zero()) ++p;
    if (p == dim) return UPoly<K>(f, std::move(comb)).monic();
    const K inv = vec[p].inverse();
    for (auto& e : vec) e *= inv;
    for (auto& e : comb) e *= inv;
    rows.push_back({p, std::move(vec), std::move(comb)});
  }
  throw std::logic_error("eliminant: no relation within the quotient dimension");
}

template <Coefficient K>
bool same_ideal(const IdealSpec<K>& a, const IdealSpec<K>& b, const GroebnerOptions& opts) {
  return buchberger(a, opts) == buchberger(into_ring(b, a.ring()), opts);
}

#define VORCELL_GROEBNER_INSTANTIATE(K)                                                                 \
  template class IdealSpec<K>;                                                                          \
  template class GroebnerBasis<K>;                                                                      \
  template Polynomial<K> reorder(const Polynomial<K>&, const RingPtr&);                                 \
  template GroebnerBasis<K> buchberger(const IdealSpec<K>&, const GroebnerOptions&, const std::string&); \
  template GroebnerBasis<K> buchberger(const IdealSpec<K>&, const MonomialOrder&, const GroebnerOptions&); \
  template IdealSpec<K> eliminate(const IdealSpec<K>&, const std::vector<std::size_t>&,                 \
                                  const GroebnerOptions&, const std::string&);                          \
  template IdealSpec<K> saturate(const IdealSpec<K>&, const IdealSpec<K>&, const GroebnerOptions&);     \
  template IdealSpec<K> intersect(const IdealSpec<K>&, const IdealSpec<K>&, const GroebnerOptions&);    \
  template bool is_zero_dimensional(const GroebnerBasis<K>&);                                           \
  template std::vector<Monomial> standard_monomials(const GroebnerBasis<K>&);                           \
  template UPoly<K> eliminant(const GroebnerBasis<K>&, std::size_t);                                    \
  template bool same_ideal(const IdealSpec<K>&, const IdealSpec<K>&, const GroebnerOptions&);

VORCELL_GROEBNER_INSTANTIATE(Rational)
VORCELL_GROEBNER_INSTANTIATE(Fp)

}  // namespace vorcell
