#include "vorcell/monomial.hpp"

#include <stdexcept>

namespace vorcell {

Monomial::Monomial(std::size_t nvars) : n_(static_cast<std::uint8_t>(nvars)) {
  if (nvars > kMaxVariables) {
    throw std::length_error("at most " + std::to_string(kMaxVariables) + " variables are supported");
  }
}

Monomial::Monomial(std::initializer_list<unsigned> exponents) : Monomial(exponents.size()) {
  std::size_t i = 0;
  for (unsigned e : exponents) set(i++, e);
}

Monomial Monomial::unit(std::size_t nvars, std::size_t var, unsigned power) {
  Monomial m(nvars);
  m.set(var, power);
  return m;
}

void Monomial::set(std::size_t i, unsigned e) {
  if (e > 0xFFFF) throw std::overflow_error("exponent overflow");
  deg_ = static_cast<std::uint16_t>(deg_ - exp_[i] + e);
  exp_[i] = static_cast<std::uint16_t>(e);
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < a.n_; ++i) r.exp_[i] = static_cast<std::uint16_t>(a.exp_[i] + b.exp_[i]);
  r.deg_ = static_cast<std::uint16_t>(a.deg_ + b.deg_);
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < a.n_; ++i) r.exp_[i] = static_cast<std::uint16_t>(a.exp_[i] - b.exp_[i]);
  r.deg_ = static_cast<std::uint16_t>(a.deg_ - b.deg_);
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  unsigned d = 0;
  for (std::size_t i = 0; i < a.n_; ++i) {
    r.exp_[i] = std::max(a.exp_[i], b.exp_[i]);
    d += r.exp_[i];
  }
  r.deg_ = static_cast<std::uint16_t>(d);
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.n_; ++i) {
    if (a.exp_[i] != 0 && b.exp_[i] != 0) return false;
  }
  return true;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < n_; ++i) {
    h ^= exp_[i];
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

// Graded reverse lex restricted to variables [lo, hi).
int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  unsigned da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  const std::size_t n = a.size();
  switch (kind_) {
    case Kind::Lex:
      for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      }
      return 0;
    case Kind::GrevLex: {
      if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
      for (std::size_t i = n; i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
      }
      return 0;
    }
    case Kind::BlockElim: {
      const std::size_t k = std::min(block_, n);
      const int c = grevlex_range(a, b, 0, k);
      if (c != 0) return c;
      return grevlex_range(a, b, k, n);
    }
  }
  return 0;
}

std::string MonomialOrder::to_string() const {
  switch (kind_) {
    case Kind::Lex:
      return "Lex";
    case Kind::GrevLex:
      return "GrevLex";
    case Kind::BlockElim:
      return "BlockElim(" + std::to_string(block_) + ")";
  }
  return "?";
}

}  // namespace vorcell
