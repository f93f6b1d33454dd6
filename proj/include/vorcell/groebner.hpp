#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vorcell/polynomial.hpp"
#include "vorcell/univariate.hpp"

namespace vorcell {

/// Generators of an ideal in one ring, plus an optional declared codimension.
/// Zero generators are dropped, so the zero ideal has no generators.
template <Coefficient K>
class IdealSpec {
public:
  explicit IdealSpec(RingPtr ring, std::vector<Polynomial<K>> gens = {},
                     std::optional<unsigned> codim = std::nullopt);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial<K>>& gens() const { return gens_; }
  const std::optional<unsigned>& codim() const { return codim_; }
  bool is_zero() const { return gens_.empty(); }

  IdealSpec with_codim(std::optional<unsigned> c) const { return IdealSpec(ring_, gens_, c); }
  /// Sum of ideals.
  IdealSpec operator+(const IdealSpec& o) const;

private:
  RingPtr ring_;
  std::vector<Polynomial<K>> gens_;
  std::optional<unsigned> codim_;
};

struct GroebnerOptions {
  /// Cap on S-pair reductions per basis computation.
  std::size_t max_reductions = 1'000'000;

  /// Defaults, with the cap overridden by VORONOI_BUDGET when set.
  static GroebnerOptions from_env();
};

/// The S-pair budget ran out. Says nothing about the ideal itself.
class BudgetExhausted : public std::runtime_error {
public:
  BudgetExhausted(std::string stage, std::size_t reductions)
      : std::runtime_error("budget exhausted in " + stage + " after " + std::to_string(reductions) +
                           " S-pair reductions"),
        stage_(std::move(stage)),
        reductions_(reductions) {}

  const std::string& stage() const { return stage_; }
  std::size_t reductions() const { return reductions_; }

private:
  std::string stage_;
  std::size_t reductions_;
};

class NotZeroDimensional : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Reduced Groebner basis: monic, inter-reduced, sorted by leading monomial descending.
template <Coefficient K>
class GroebnerBasis {
public:
  GroebnerBasis(RingPtr ring, std::vector<Polynomial<K>> reduced_elements)
      : ring_(std::move(ring)), elems_(std::move(reduced_elements)) {}

  const RingPtr& ring() const { return ring_; }
  const MonomialOrder& order() const { return ring_->order(); }
  const std::vector<Polynomial<K>>& elements() const { return elems_; }
  bool reduced() const { return true; }
  bool is_unit() const { return elems_.size() == 1 && elems_[0].is_constant(); }
  bool is_zero() const { return elems_.empty(); }

  /// Remainder of full division; throws RingMismatch on a different ring or order.
  Polynomial<K> normal_form(const Polynomial<K>& f) const;
  bool contains(const Polynomial<K>& f) const { return normal_form(f).is_zero(); }

  IdealSpec<K> ideal() const { return IdealSpec<K>(ring_, elems_); }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    return same_ring(a.ring_, b.ring_) && a.elems_ == b.elems_;
  }

private:
  RingPtr ring_;
  std::vector<Polynomial<K>> elems_;
};

/// Moves p to a ring with the same variable names and field but another order.
template <Coefficient K>
Polynomial<K> reorder(const Polynomial<K>& p, const RingPtr& target);

/// Reduced Groebner basis in the ideal's own ring order.
template <Coefficient K>
GroebnerBasis<K> buchberger(const IdealSpec<K>& ideal, const GroebnerOptions& opts = GroebnerOptions::from_env(),
                            const std::string& stage = "groebner");

/// Reduced Groebner basis after switching the ring to `order`.
template <Coefficient K>
GroebnerBasis<K> buchberger(const IdealSpec<K>& ideal, const MonomialOrder& order,
                            const GroebnerOptions& opts = GroebnerOptions::from_env());

template <Coefficient K>
Polynomial<K> normal_form(const Polynomial<K>& f, const GroebnerBasis<K>& g) {
  return g.normal_form(f);
}

/// Intersection of the ideal with the subring omitting `drop_vars`. The result
/// lives in a ring of the remaining variables (in their original order) and its
/// generators are the reduced grevlex basis of the elimination ideal.
template <Coefficient K>
IdealSpec<K> eliminate(const IdealSpec<K>& ideal, const std::vector<std::size_t>& drop_vars,
                       const GroebnerOptions& opts = GroebnerOptions::from_env(),
                       const std::string& stage = "elimination");

/// (I : J^inf) as the intersection over generators g of J of (I : g^inf).
template <Coefficient K>
IdealSpec<K> saturate(const IdealSpec<K>& i, const IdealSpec<K>& j,
                      const GroebnerOptions& opts = GroebnerOptions::from_env());

template <Coefficient K>
IdealSpec<K> intersect(const IdealSpec<K>& i, const IdealSpec<K>& j,
                       const GroebnerOptions& opts = GroebnerOptions::from_env());

/// The unit ideal counts as zero-dimensional (its variety is empty).
template <Coefficient K>
bool is_zero_dimensional(const GroebnerBasis<K>& g);

template <Coefficient K>
bool is_zero_dimensional(const IdealSpec<K>& ideal, const GroebnerOptions& opts = GroebnerOptions::from_env()) {
  return is_zero_dimensional(buchberger(ideal, opts));
}

/// Monomials outside the leading-term ideal, ascending in the ring order.
/// Throws NotZeroDimensional when there are infinitely many.
template <Coefficient K>
std::vector<Monomial> standard_monomials(const GroebnerBasis<K>& g);

template <Coefficient K>
std::size_t quotient_degree(const GroebnerBasis<K>& g) {
  return standard_monomials(g).size();
}

template <Coefficient K>
std::size_t quotient_degree(const IdealSpec<K>& ideal, const GroebnerOptions& opts = GroebnerOptions::from_env()) {
  return quotient_degree(buchberger(ideal, opts));
}

/// Monic generator of I ∩ K[x_var] for zero-dimensional I: the minimal
/// polynomial of x_var acting on the quotient ring.
template <Coefficient K>
UPoly<K> eliminant(const GroebnerBasis<K>& g, std::size_t var);

/// Equal ideals, compared through reduced bases in the first ideal's ring.
template <Coefficient K>
bool same_ideal(const IdealSpec<K>& a, const IdealSpec<K>& b,
                const GroebnerOptions& opts = GroebnerOptions::from_env());

#define VORCELL_GROEBNER_EXTERN(K)                                                                    \
  extern template class IdealSpec<K>;                                                                 \
  extern template class GroebnerBasis<K>;                                                             \
  extern template Polynomial<K> reorder(const Polynomial<K>&, const RingPtr&);                        \
  extern template GroebnerBasis<K> buchberger(const IdealSpec<K>&, const GroebnerOptions&,            \
                                              const std::string&);                                    \
  extern template GroebnerBasis<K> buchberger(const IdealSpec<K>&, const MonomialOrder&,              \
                                              const GroebnerOptions&);                                \
  extern template IdealSpec<K> eliminate(const IdealSpec<K>&, const std::vector<std::size_t>&,        \
                                         const GroebnerOptions&, const std::string&);                 \
  extern template IdealSpec<K> saturate(const IdealSpec<K>&, const IdealSpec<K>&,                     \
                                        const GroebnerOptions&);                                      \
  extern template IdealSpec<K> intersect(const IdealSpec<K>&, const IdealSpec<K>&,                    \
                                         const GroebnerOptions&);                                     \
  extern template bool is_zero_dimensional(const GroebnerBasis<K>&);                                  \
  extern template std::vector<Monomial> standard_monomials(const GroebnerBasis<K>&);                  \
  extern template UPoly<K> eliminant(const GroebnerBasis<K>&, std::size_t);                           \
  extern template bool same_ideal(const IdealSpec<K>&, const IdealSpec<K>&, const GroebnerOptions&);

VORCELL_GROEBNER_EXTERN(Rational)
VORCELL_GROEBNER_EXTERN(Fp)

#undef VORCELL_GROEBNER_EXTERN

}  // namespace vorcell
