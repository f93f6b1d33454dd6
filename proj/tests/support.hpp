#pragma once

#include <random>
#include <string>
#include <vector>

#include "vorcell/parse.hpp"
#include "vorcell/polynomial.hpp"

namespace testing_support {

using namespace vorcell;

inline Rational random_rational(std::mt19937_64& rng, long range = 9, long max_den = 4) {
  std::uniform_int_distribution<long> num(-range, range);
  std::uniform_int_distribution<long> den(1, max_den);
  return Rational(num(rng), den(rng));
}

template <Coefficient K>
K random_coeff(std::mt19937_64& rng, const Field& f) {
  if constexpr (std::is_same_v<K, Rational>) {
    return random_rational(rng);
  } else {
    std::uniform_int_distribution<std::uint32_t> d(0, f.modulus() - 1);
    return K(d(rng), f.modulus());
  }
}

/// Random polynomial with up to `terms` terms of total degree at most `deg`.
template <Coefficient K>
Polynomial<K> random_poly(std::mt19937_64& rng, const RingPtr& ring, unsigned deg, std::size_t terms) {
  std::vector<Term<K>> out;
  std::uniform_int_distribution<unsigned> e(0, deg);
  for (std::size_t t = 0; t < terms; ++t) {
    Monomial m(ring->nvars());
    unsigned budget = e(rng);
    for (std::size_t i = 0; i < ring->nvars() && budget > 0; ++i) {
      std::uniform_int_distribution<unsigned> take(0, budget);
      const unsigned k = take(rng);
      m.set(i, k);
      budget -= k;
    }
    out.push_back({m, random_coeff<K>(rng, ring->field())});
  }
  return Polynomial<K>::from_terms(ring, std::move(out));
}

inline Polynomial<Rational> qpoly(const RingPtr& ring, const std::string& text) {
  return parse_polynomial<Rational>(text, ring);
}

}  // namespace testing_support
