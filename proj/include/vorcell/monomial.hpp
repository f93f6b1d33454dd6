#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>

namespace vorcell {

inline constexpr std::size_t kMaxVariables = 16;

/// Dense exponent vector. Its length is the variable count of the owning ring.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars);
  Monomial(std::initializer_list<unsigned> exponents);

  static Monomial unit(std::size_t nvars, std::size_t var, unsigned power = 1);

  std::size_t size() const { return n_; }
  unsigned operator[](std::size_t i) const { return exp_[i]; }
  unsigned degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  void set(std::size_t i, unsigned e);

  /// True when this monomial divides `other`.
  bool divides(const Monomial& other) const {
    if (deg_ > other.deg_) return false;
    for (std::size_t i = 0; i < n_; ++i) {
      if (exp_[i] > other.exp_[i]) return false;
    }
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Exact quotient; requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool coprime(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.n_ == b.n_ && a.exp_ == b.exp_;
  }

  std::size_t hash() const;

private:
  std::array<std::uint16_t, kMaxVariables> exp_{};
  std::uint16_t deg_ = 0;
  std::uint8_t n_ = 0;
};

/// Lex, graded reverse lex, or a two-block elimination order.
///
/// BlockElim(k) compares the first k variables by grevlex and breaks ties with
/// grevlex on the remaining variables, so any polynomial whose leading term is
/// free of the first block lies entirely in the second block.
class MonomialOrder {
public:
  enum class Kind : std::uint8_t { Lex, GrevLex, BlockElim };

  static MonomialOrder lex() { return {Kind::Lex, 0}; }
  static MonomialOrder grevlex() { return {Kind::GrevLex, 0}; }
  static MonomialOrder block_elim(std::size_t k) { return {Kind::BlockElim, k}; }

  Kind kind() const { return kind_; }
  std::size_t block() const { return block_; }

  /// -1, 0 or 1 as a is smaller, equal or larger than b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  std::string to_string() const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

private:
  MonomialOrder(Kind kind, std::size_t block) : kind_(kind), block_(block) {}

  Kind kind_ = Kind::GrevLex;
  std::size_t block_ = 0;
};

}  // namespace vorcell
