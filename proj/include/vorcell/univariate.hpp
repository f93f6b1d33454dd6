#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vorcell/polynomial.hpp"

namespace vorcell {

/// Dense univariate polynomial, coefficients stored from the constant term up.
template <Coefficient K>
class UPoly {
public:
  UPoly() : field_(Field::rationals()) {}
  explicit UPoly(Field field) : field_(field) {}
  UPoly(Field field, std::vector<K> coeffs);

  static UPoly monomial(Field field, std::size_t degree, const K& c);

  const Field& field() const { return field_; }
  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K::zero(field_); }
  const K& leading() const { return c_.back(); }

  UPoly operator-() const;
  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly scaled(const K& c) const;
  UPoly monic() const;
  UPoly derivative() const;
  K evaluate(const K& x) const;

  /// Quotient and remainder; throws std::domain_error on division by zero.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const;

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Writes the polynomial in `var`.
  std::string to_string(const std::string& var) const;

  /// Lifts into `ring` as a polynomial in variable `var`.
  Polynomial<K> to_polynomial(const RingPtr& ring, std::size_t var) const;
  /// Requires p to involve no variable other than `var`.
  static UPoly from_polynomial(const Polynomial<K>& p, std::size_t var);

private:
  void trim();

  Field field_;
  std::vector<K> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
template <Coefficient K>
UPoly<K> gcd(UPoly<K> a, UPoly<K> b);

/// Monic lcm; lcm with zero is zero.
template <Coefficient K>
UPoly<K> lcm(const UPoly<K>& a, const UPoly<K>& b);

/// f / gcd(f, f'), made monic.
template <Coefficient K>
UPoly<K> squarefree_part(const UPoly<K>& f);

extern template class UPoly<Rational>;
extern template class UPoly<Fp>;

using QPoly = UPoly<Rational>;

/// Scales f to an integer polynomial with coprime coefficients and positive leading coefficient.
QPoly primitive_integer(const QPoly& f);

/// Isolating interval of one real root. When lo == hi the root is exactly lo;
/// otherwise the root lies strictly inside (lo, hi) and f changes sign there.
struct RootInterval {
  Rational lo;
  Rational hi;

  bool exact() const { return lo == hi; }
  Rational midpoint() const { return (lo + hi) / Rational(2); }
};

/// Sturm sequence of the squarefree part of f.
std::vector<QPoly> sturm_sequence(const QPoly& f);

/// Number of distinct real roots of f in (a, b].
std::size_t sturm_count(const std::vector<QPoly>& seq, const Rational& a, const Rational& b);

/// One disjoint interval per distinct real root, ascending, each of width at most
/// `precision`. Throws std::invalid_argument for the zero polynomial or
/// nonpositive precision.
std::vector<RootInterval> sturm_isolate(const QPoly& f, const Rational& precision);

/// Number of distinct real roots of f.
std::size_t count_real_roots(const QPoly& f);

/// All rational roots of f, ascending, without multiplicity.
std::vector<Rational> rational_roots(const QPoly& f);

/// Simplest rational (smallest denominator) in the closed interval [lo, hi].
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

}  // namespace vorcell
