#include "vorcell/univariate.hpp"

#include <stdexcept>

namespace vorcell {

template <Coefficient K>
UPoly<K>::UPoly(Field field, std::vector<K> coeffs) : field_(field), c_(std::move(coeffs)) {
  trim();
}

template <Coefficient K>
UPoly<K> UPoly<K>::monomial(Field field, std::size_t degree, const K& c) {
  std::vector<K> v(degree + 1, K::zero(field));
  v[degree] = c;
  return UPoly(field, std::move(v));
}

template <Coefficient K>
void UPoly<K>::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

template <Coefficient K>
UPoly<K> UPoly<K>::operator-() const {
  UPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

template <Coefficient K>
UPoly<K> UPoly<K>::operator+(const UPoly& o) const {
  std::vector<K> v(std::max(c_.size(), o.c_.size()), K::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return UPoly(field_, std::move(v));
}

template <Coefficient K>
UPoly<K> UPoly<K>::operator-(const UPoly& o) const {
  return *this + (-o);
}

template <Coefficient K>
UPoly<K> UPoly<K>::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return UPoly(field_);
  std::vector<K> v(c_.size() + o.c_.size() - 1, K::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  }
  return UPoly(field_, std::move(v));
}

template <Coefficient K>
UPoly<K> UPoly<K>::scaled(const K& c) const {
  UPoly r = *this;
  for (auto& x : r.c_) x *= c;
  r.trim();
  return r;
}

template <Coefficient K>
UPoly<K> UPoly<K>::monic() const {
  if (is_zero() || leading().is_one()) return *this;
  return scaled(leading().inverse());
}

template <Coefficient K>
UPoly<K> UPoly<K>::derivative() const {
  if (c_.size() <= 1) return UPoly(field_);
  std::vector<K> v;
  v.reserve(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    v.push_back(c_[i] * K::from_rational(Rational(static_cast<long>(i)), field_));
  }
  return UPoly(field_, std::move(v));
}

template <Coefficient K>
K UPoly<K>::evaluate(const K& x) const {
  K acc = K::zero(field_);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

template <Coefficient K>
std::pair<UPoly<K>, UPoly<K>> UPoly<K>::divmod(const UPoly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  if (degree() < d.degree()) return {UPoly(field_), *this};
  std::vector<K> r = c_;
  std::vector<K> q(c_.size() - d.c_.size() + 1, K::zero(field_));
  const K inv = d.leading().inverse();
  for (std::size_t i = q.size(); i-- > 0;) {
    const K f = r[i + d.c_.size() - 1] * inv;
    q[i] = f;
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j < d.c_.size(); ++j) r[i + j] -= f * d.c_[j];
  }
  return {UPoly(field_, std::move(q)), UPoly(field_, std::move(r))};
}

template <Coefficient K>
Polynomial<K> UPoly<K>::to_polynomial(const RingPtr& ring, std::size_t var) const {
  std::vector<Term<K>> terms;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) terms.push_back({Monomial::unit(ring->nvars(), var, static_cast<unsigned>(i)), c_[i]});
  }
  return Polynomial<K>::from_terms(ring, std::move(terms));
}

template <Coefficient K>
UPoly<K> UPoly<K>::from_polynomial(const Polynomial<K>& p, std::size_t var) {
  const Field& f = p.ring()->field();
  std::vector<K> v(p.is_zero() ? 0 : p.degree_in(var) + 1, K::zero(f));
  for (const auto& t : p.terms()) {
    if (t.mono.degree() != t.mono[var]) {
      throw std::invalid_argument("polynomial is not univariate in " + p.ring()->name(var));
    }
    v[t.mono[var]] += t.coeff;
  }
  return UPoly(f, std::move(v));
}

template <Coefficient K>
std::string UPoly<K>::to_string(const std::string& var) const {
  RingPtr r = Ring::make({var}, field_);
  return to_polynomial(r, 0).to_string();
}

template <Coefficient K>
UPoly<K> gcd(UPoly<K> a, UPoly<K> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

template <Coefficient K>
UPoly<K> lcm(const UPoly<K>& a, const UPoly<K>& b) {
  if (a.is_zero() || b.is_zero()) return UPoly<K>(a.field());
  return (a * b).divmod(gcd(a, b)).first.monic();
}

template <Coefficient K>
UPoly<K> squarefree_part(const UPoly<K>& f) {
  if (f.degree() <= 0) return f.monic();
  UPoly<K> g = gcd(f, f.derivative());
  return f.divmod(g).first.monic();
}

template class UPoly<Rational>;
template class UPoly<Fp>;
template UPoly<Rational> gcd(UPoly<Rational>, UPoly<Rational>);
template UPoly<Fp> gcd(UPoly<Fp>, UPoly<Fp>);
template UPoly<Rational> lcm(const UPoly<Rational>&, const UPoly<Rational>&);
template UPoly<Fp> lcm(const UPoly<Fp>&, const UPoly<Fp>&);
template UPoly<Rational> squarefree_part(const UPoly<Rational>&);
template UPoly<Fp> squarefree_part(const UPoly<Fp>&);

// ---------------------------------------------------------------------------
// Real roots over Q.

namespace {

// Multiplies by a positive rational so the coefficients become coprime integers.
QPoly positive_normalize(const QPoly& f) {
  if (f.is_zero()) return f;
  mpz_class den = 1, num = 0;
  for (const auto& c : f.coeffs()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.denominator().get_mpz_t());
  }
  for (const auto& c : f.coeffs()) {
    mpz_class v = c.numerator() * (den / c.denominator());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
  }
  return f.scaled(Rational(den, num));
}

int sign_of(const Rational& r) { return r.sign(); }

std::size_t variations(const std::vector<QPoly>& seq, const Rational& x) {
  std::size_t v = 0;
  int prev = 0;
  for (const auto& p : seq) {
    const int s = sign_of(p.evaluate(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

Rational cauchy_bound(const QPoly& f) {
  Rational m = 0;
  const Rational lead = f.leading().abs();
  for (long i = 0; i < f.degree(); ++i) {
    Rational r = f.coeffs()[static_cast<std::size_t>(i)].abs() / lead;
    if (r > m) m = r;
  }
  return m + Rational(1);
}

}  // namespace

QPoly primitive_integer(const QPoly& f) {
  QPoly g = positive_normalize(f);
  if (!g.is_zero() && g.leading().sign() < 0) g = -g;
  return g;
}

std::vector<QPoly> sturm_sequence(const QPoly& f) {
  std::vector<QPoly> seq;
  QPoly g = positive_normalize(squarefree_part(f));
  if (g.is_zero()) return seq;
  seq.push_back(g);
  QPoly d = positive_normalize(g.derivative());
  while (!d.is_zero()) {
    seq.push_back(d);
    QPoly r = seq[seq.size() - 2].divmod(d).second;
    d = positive_normalize(-r);
  }
  return seq;
}

std::size_t sturm_count(const std::vector<QPoly>& seq, const Rational& a, const Rational& b) {
  if (seq.empty()) return 0;
  const std::size_t va = variations(seq, a);
  const std::size_t vb = variations(seq, b);
  return va > vb ? va - vb : 0;
}

std::size_t count_real_roots(const QPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("real roots of the zero polynomial");
  auto seq = sturm_sequence(f);
  if (seq.empty() || seq.front().degree() <= 0) return 0;
  const Rational b = cauchy_bound(seq.front());
  return sturm_count(seq, -b, b);
}

std::vector<RootInterval> sturm_isolate(const QPoly& f, const Rational& precision) {
  if (f.is_zero()) throw std::invalid_argument("sturm_isolate of the zero polynomial");
  if (precision.sign() <= 0) throw std::invalid_argument("precision must be positive");
  std::vector<RootInterval> out;
  const auto seq = sturm_sequence(f);
  if (seq.front().degree() <= 0) return out;
  const QPoly& g = seq.front();
  const Rational bound = cauchy_bound(g);
  const Rational two(2);

  auto refine = [&](Rational lo, Rational hi) {
    const int slo = sign_of(g.evaluate(lo));
    while (hi - lo > precision) {
      Rational m = (lo + hi) / two;
      const int sm = sign_of(g.evaluate(m));
      if (sm == 0) {
        out.push_back({m, m});
        return;
      }
      if (sm == slo) {
        lo = std::move(m);
      } else {
        hi = std::move(m);
      }
    }
    out.push_back({lo, hi});
  };

  // Invariant: neither lo nor hi is a root; `count` roots lie in (lo, hi).
  auto isolate = [&](auto&& self, const Rational& lo, const Rational& hi, std::size_t count) -> void {
    if (count == 0) return;
    if (count == 1) {
      refine(lo, hi);
      return;
    }
    Rational m = (lo + hi) / two;
    if (g.evaluate(m).is_zero()) {
      Rational delta = (hi - lo) / Rational(4);
      for (;;) {
        Rational a = m - delta, b = m + delta;
        if (!g.evaluate(a).is_zero() && !g.evaluate(b).is_zero() && sturm_count(seq, a, b) == 1) break;
        delta /= two;
      }
      const Rational a = m - delta, b = m + delta;
      self(self, lo, a, sturm_count(seq, lo, a));
      out.push_back({m, m});
      self(self, b, hi, sturm_count(seq, b, hi));
      return;
    }
    const std::size_t left = sturm_count(seq, lo, m);
    self(self, lo, m, left);
    self(self, m, hi, count - left);
  };

  isolate(isolate, -bound, bound, sturm_count(seq, -bound, bound));
  return out;
}

Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
  if (hi < lo) return simplest_rational_between(hi, lo);
  if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
  if (hi.sign() < 0) return -simplest_rational_between(-hi, -lo);
  const Rational fl(lo.floor());
  if (fl == lo) return lo;
  if (fl + Rational(1) <= hi) return fl + Rational(1);
  return fl + simplest_rational_between((hi - fl).inverse(), (lo - fl).inverse()).inverse();
}

std::vector<Rational> rational_roots(const QPoly& f) {
  std::vector<Rational> roots;
  if (f.is_zero()) throw std::invalid_argument("rational roots of the zero polynomial");
  const QPoly h = primitive_integer(squarefree_part(f));
  if (h.degree() <= 0) return roots;
  // A root a/b in lowest terms has b | lead, and distinct rationals with
  // denominators at most B differ by at least 1/B^2.
  const mpz_class lead = abs(h.leading().numerator());
  const Rational precision(mpz_class(1), 2 * lead * lead);
  for (const auto& iv : sturm_isolate(h, precision)) {
    Rational cand = iv.exact() ? iv.lo : simplest_rational_between(iv.lo, iv.hi);
    if (h.evaluate(cand).is_zero()) roots.push_back(cand);
  }
  return roots;
}

}  // namespace vorcell
