#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "vorcell/field.hpp"
#include "vorcell/monomial.hpp"
#include "vorcell/ring.hpp"

namespace vorcell {

template <class K>
struct Term {
  Monomial mono;
  K coeff;
};

inline constexpr std::size_t kDroppedVariable = std::numeric_limits<std::size_t>::max();

/// Sparse multivariate polynomial over Q or F_p.
///
/// Terms are kept sorted in descending order of the ring's monomial order with
/// no zero coefficients, so equal polynomials have identical term vectors.
template <Coefficient K>
class Polynomial {
public:
  using Coeff = K;

  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const K& c);
  static Polynomial from_rational(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, std::size_t var);
  static Polynomial term(RingPtr ring, const Monomial& m, const K& c);
  /// Sorts, merges equal monomials and drops zeros.
  static Polynomial from_terms(RingPtr ring, std::vector<Term<K>> terms);
  /// Trusts the caller: terms strictly descending in the ring order, no zero coefficients.
  static Polynomial from_sorted_terms(RingPtr ring, std::vector<Term<K>> terms) {
    return Polynomial(std::move(ring), std::move(terms));
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term<K>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const K& leading_coeff() const { return terms_.front().coeff; }

  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  bool involves(std::size_t var) const { return degree_in(var) > 0; }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  K constant_term() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  template <Coefficient L>
  friend Polynomial<L> operator+(const Polynomial<L>& a, const Polynomial<L>& b);
  template <Coefficient L>
  friend Polynomial<L> operator-(const Polynomial<L>& a, const Polynomial<L>& b);
  template <Coefficient L>
  friend Polynomial<L> operator*(const Polynomial<L>& a, const Polynomial<L>& b);

  Polynomial scaled(const K& c) const;
  Polynomial mul_term(const Monomial& m, const K& c) const;
  /// this - c * m * g, computed in one merge pass.
  Polynomial sub_mul_term(const K& c, const Monomial& m, const Polynomial& g) const;
  Polynomial pow(unsigned e) const;
  /// Divides by the leading coefficient. Zero stays zero.
  Polynomial monic() const;

  Polynomial partial_derivative(std::size_t var) const;
  K evaluate(std::span<const K> point) const;

  /// Ring homomorphism sending variable i to images[i] (all in `target`).
  Polynomial substitute(const RingPtr& target, std::span<const Polynomial> images) const;
  /// Renames variable i to target variable var_map[i]. Variables mapped to
  /// kDroppedVariable must not occur.
  Polynomial remap(const RingPtr& target, std::span<const std::size_t> var_map) const;

  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    if (!same_ring(a.ring_, b.ring_)) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coeff == b.terms_[i].coeff)) {
        return false;
      }
    }
    return true;
  }

private:
  Polynomial(RingPtr ring, std::vector<Term<K>> sorted_terms)
      : ring_(std::move(ring)), terms_(std::move(sorted_terms)) {}

  void check_ring(const Polynomial& o) const;
  K zero_coeff() const { return K::zero(ring_->field()); }

  RingPtr ring_;
  std::vector<Term<K>> terms_;
};

namespace detail {

template <class K>
bool is_negative(const K& c) {
  if constexpr (std::is_same_v<K, Rational>) {
    return c.sign() < 0;
  } else {
    return false;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------

template <Coefficient K>
Polynomial<K> Polynomial<K>::constant(RingPtr ring, const K& c) {
  std::vector<Term<K>> t;
  if (!c.is_zero()) t.push_back({Monomial(ring->nvars()), c});
  return Polynomial(std::move(ring), std::move(t));
}

template <Coefficient K>
Polynomial<K> Polynomial<K>::from_rational(RingPtr ring, const Rational& c) {
  K k = K::from_rational(c, ring->field());
  return constant(std::move(ring), k);
}

template <Coefficient K>
Polynomial<K> Polynomial<K>::variable(RingPtr ring, std::size_t var) {
  const std::size_t n = ring->nvars();
  K one = K::one(ring->field());
  return Polynomial(std::move(ring), {{Monomial::unit(n, var), one}});
}

template <Coefficient K>
Polynomial<K> Polynomial<K>::term(RingPtr ring, const Monomial& m, const K& c) {
  std::vector<Term<K>> t;
  if (!c.is_zero()) t.push_back({m, c});
  return Polynomial(std::move(ring), std::move(t));
}

template <Coefficient K>
Polynomial<K> Polynomial<K>::from_terms(RingPtr ring, std::vector<Term<K>> terms) {
  const MonomialOrder& ord = ring->order();
  std::sort(terms.begin(), terms.end(),
            [&](const Term<K>& a, const Term<K>& b) { return ord.compare(a.mono, b.mono) > 0; });
  std::vector<Term<K>> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
  return Polynomial(std::move(ring), std::move(out));
}

template <Coefficient K>
void Polynomial<K>::check_ring(const Polynomial& o) const {
  if (!same_ring(ring_, o.ring_)) throw RingMismatch("polynomials belong to different rings");
}

template <Coefficient K>
unsigned Polynomial<K>::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

template <Coefficient K>
unsigned Polynomial<K>::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[var]);
  return d;
}

template <Coefficient K>
K Polynomial<K>::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return zero_coeff();
}

template <Coefficient K>
Polynomial<K> Polynomial<K>::operator-() const {
  std::vector<Term<K>> t = terms_;
  for (auto& x : t) x.coeff = -x.coeff;
  return Polynomial(ring_, std::move(t));
}

template <Coefficient K>
Polynomial<K> operator+(const Polynomial<K>& a, const Polynomial<K>& b) {
  a.check_ring(b);
  const MonomialOrder& ord = a.ring_->order();
  std::vector<Term<K>> out;
  out.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() && j < b.terms_.size()) {
    const int c = ord.compare(a.terms_[i].mono, b.terms_[j].mono);
    if (c > 0) {
      out.push_back(a.terms_[i++]);
    } else if (c < 0) {
      out.push_back(b.terms_[j++]);
    } else {
      K s = a.terms_[i].coeff + b.terms_[j].coeff;
      if (!s.is_zero()) out.push_back({a.terms_[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.terms_.size(); ++i) out.push_back(a.terms_[i]);
  for (; j < b.terms_.size(); ++j) out.push_back(b.terms_[j]);
  return Polynomial<K>(a.ring_, std::move(out));
}

template <Coefficient K>
Polynomial<K> operator-(const Polynomial<K>& a, const Polynomial<K>& b) {
  return a + (-b);
}

template <Coefficient K>
Polynomial<K> operator*(const Polynomial<K>& a, const Polynomial<K>& b) {
  a.check_ring(b);
  if (a.is_zero() || b.is_zero()) return Polynomial<K>(a.ring_);
  std::vector<Term<K>> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) prod.push_back({s.mono * t.mono, s.coeff * t.coeff});
  }
  return Polynomial<K>::from_terms(a.ring_, std::move(prod));
}

template <Coefficient K>
Polynomial<K> Polynomial<K>::scaled(const K& c) const {
  if (c.is_zero()) return Polynomial(ring_);
  std::vector<Term<K>> t = terms_;
  for (auto& x : t) x.coeff *= c;
  return Polynomial(ring_, std::move(t));
}

template <Coefficient K>
Polynomial<K> Polynomial<K>::mul_term(const Monomial& m, const K& c) const {
  if (c.is_zero()) return Polynomial(ring_);
  std::vector<Term<K>> t;
  t.reserve(terms_.size());
  for (const auto& x : terms_) t.push_back({x.mono * m, x.coeff * c});
  return Polynomial(ring_, std::move(t));
}

template <Coefficient K>
Polynomial<K> Polynomial<K>::sub_mul_term(const K& c, const Monomial& m, const Polynomial& g) const {
  const MonomialOrder& ord = ring_->order();
  std::vector<Term<K>> out;
  out.reserve(terms_.size() + g.terms_.size());
  std::size_t i = 0, j = 0;
  Monomial gm;
  bool have = false;
  while (i < terms_.size() && j < g.terms_.size()) {
    if (!have) {
      gm = g.terms_[j].mono * m;
      have = true;
    }
    const int cmp = ord.compare(terms_[i].mono, gm);
    if (cmp > 0) {
      out.push_back(terms_[i++]);
    } else if (cmp < 0) {
      out.push_back({gm, -(c * g.terms_[j].coeff)});
      ++j;
      have = false;
    } else {
      K s = terms_[i].coeff - c * g.terms_[j].coeff;
      if (!s.is_zero()) out.push_back({gm, std::move(s)});
      ++i;
      ++j;
      have = false;
    }
  }
  for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
  for (; j < g.terms_.size(); ++j) out.push_back({g.terms_[j].mono * m, -(c * g.terms_[j].coeff)});
  return Polynomial(ring_, std::move(out));
}

template <Coefficient K>
Polynomial<K> Polynomial<K>::pow(unsigned e) const {
  Polynomial result = constant(ring_, K::one(ring_->field()));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

template <Coefficient K>
Polynomial<K> Polynomial<K>::monic() const {
  if (is_zero() || leading_coeff().is_one()) return *this;
  return scaled(leading_coeff().inverse());
}

template <Coefficient K>
Polynomial<K> Polynomial<K>::partial_derivative(std::size_t var) const {
  const Field& f = ring_->field();
  std::vector<Term<K>> out;
  for (const auto& t : terms_) {
    const unsigned e = t.mono[var];
    if (e == 0) continue;
    K c = t.coeff * K::from_rational(Rational(e), f);
    if (c.is_zero()) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    out.push_back({m, std::move(c)});
  }
  // Lowering one exponent can reorder terms under grevlex, so re-sort.
  return from_terms(ring_, std::move(out));
}

template <Coefficient K>
K Polynomial<K>::evaluate(std::span<const K> point) const {
  const std::size_t n = ring_->nvars();
  if (point.size() != n) throw std::invalid_argument("evaluation point has wrong length");
  std::vector<std::vector<K>> powers(n);
  K total = zero_coeff();
  for (const auto& t : terms_) {
    K v = t.coeff;
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned e = t.mono[i];
      if (e == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(K::one(ring_->field()));
      while (pw.size() <= e) pw.push_back(pw.back() * point[i]);
      v *= pw[e];
    }
    total += v;
  }
  return total;
}

template <Coefficient K>
Polynomial<K> Polynomial<K>::substitute(const RingPtr& target, std::span<const Polynomial> images) const {
  const std::size_t n = ring_->nvars();
  if (images.size() != n) throw std::invalid_argument("substitution needs one image per variable");
  std::vector<std::vector<Polynomial>> powers(n);
  Polynomial result(target);
  const Field& tf = target->field();
  for (const auto& t : terms_) {
    Polynomial v = constant(target, t.coeff);
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned e = t.mono[i];
      if (e == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(target, K::one(tf)));
      while (pw.size() <= e) pw.push_back(pw.back() * images[i]);
      v = v * pw[e];
    }
    result = result + v;
  }
  return result;
}

template <Coefficient K>
Polynomial<K> Polynomial<K>::remap(const RingPtr& target, std::span<const std::size_t> var_map) const {
  const std::size_t n = ring_->nvars();
  if (var_map.size() != n) throw std::invalid_argument("variable map has wrong length");
  std::vector<Term<K>> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(target->nvars());
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned e = t.mono[i];
      if (e == 0) continue;
      if (var_map[i] == kDroppedVariable) {
        throw std::invalid_argument("remap drops variable " + ring_->name(i) + " that occurs");
      }
      m.set(var_map[i], m[var_map[i]] + e);
    }
    out.push_back({m, t.coeff});
  }
  return from_terms(target, std::move(out));
}

template <Coefficient K>
std::string Polynomial<K>::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    const bool neg = detail::is_negative(t.coeff);
    K mag = neg ? -t.coeff : t.coeff;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      const unsigned e = t.mono[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->name(i);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      s += mag.to_string();
    } else if (mag.is_one()) {
      s += mono;
    } else {
      s += mag.to_string() + "*" + mono;
    }
  }
  return s;
}

extern template class Polynomial<Rational>;
extern template class Polynomial<Fp>;

}  // namespace vorcell
