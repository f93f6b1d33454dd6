#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "vorcell/rational.hpp"

namespace vorcell {

inline constexpr std::uint32_t kDefaultPrime = 32003;

/// Coefficient field descriptor: the rationals or a prime field F_p.
class Field {
public:
  enum class Kind : std::uint8_t { Rationals, Prime };

  static Field rationals() { return Field(Kind::Rationals, 0); }
  /// Throws std::invalid_argument unless p is a prime below 2^31.
  static Field prime(std::uint32_t p);
  /// Accepts "Q" and "Fp:<p>".
  static Field parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_prime() const { return kind_ == Kind::Prime; }
  std::uint32_t modulus() const { return modulus_; }
  std::string to_string() const;

  friend bool operator==(const Field&, const Field&) = default;

private:
  Field(Kind kind, std::uint32_t modulus) : kind_(kind), modulus_(modulus) {}

  Kind kind_;
  std::uint32_t modulus_;
};

bool is_prime(std::uint32_t p);

/// Element of F_p. Carries its modulus so values are self-describing.
class PrimeFieldElement {
public:
  PrimeFieldElement() = default;
  PrimeFieldElement(std::uint64_t value, std::uint32_t p)
      : v_(static_cast<std::uint32_t>(value % p)), p_(p) {}

  static PrimeFieldElement zero(const Field& f) { return {0, f.modulus()}; }
  static PrimeFieldElement one(const Field& f) { return {1, f.modulus()}; }
  /// Throws std::domain_error when the denominator vanishes mod p.
  static PrimeFieldElement from_rational(const Rational& r, const Field& f);

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  PrimeFieldElement inverse() const;
  std::string to_string() const { return std::to_string(v_); }

  PrimeFieldElement operator-() const { return {v_ == 0 ? 0u : p_ - v_, p_, Raw{}}; }
  PrimeFieldElement& operator+=(const PrimeFieldElement& o) {
    std::uint32_t s = v_ + o.v_;
    if (s >= p_) s -= p_;
    v_ = s;
    return *this;
  }
  PrimeFieldElement& operator-=(const PrimeFieldElement& o) {
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
  }
  PrimeFieldElement& operator*=(const PrimeFieldElement& o) {
    v_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(v_) * o.v_ % p_);
    return *this;
  }
  PrimeFieldElement& operator/=(const PrimeFieldElement& o) { return *this *= o.inverse(); }

  friend PrimeFieldElement operator+(PrimeFieldElement a, const PrimeFieldElement& b) { return a += b; }
  friend PrimeFieldElement operator-(PrimeFieldElement a, const PrimeFieldElement& b) { return a -= b; }
  friend PrimeFieldElement operator*(PrimeFieldElement a, const PrimeFieldElement& b) { return a *= b; }
  friend PrimeFieldElement operator/(PrimeFieldElement a, const PrimeFieldElement& b) { return a /= b; }
  friend bool operator==(const PrimeFieldElement& a, const PrimeFieldElement& b) { return a.v_ == b.v_; }

private:
  struct Raw {};
  PrimeFieldElement(std::uint32_t v, std::uint32_t p, Raw) : v_(v), p_(p) {}

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 1;
};

using Fp = PrimeFieldElement;

/// The operations every coefficient type provides to the polynomial code.
template <class K>
concept Coefficient = requires(const K a, const K b, const Field& f, const Rational& r) {
  { a + b } -> std::same_as<K>;
  { a - b } -> std::same_as<K>;
  { a * b } -> std::same_as<K>;
  { a / b } -> std::same_as<K>;
  { -a } -> std::same_as<K>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.is_one() } -> std::convertible_to<bool>;
  { a.inverse() } -> std::same_as<K>;
  { a.to_string() } -> std::convertible_to<std::string>;
  { K::zero(f) } -> std::same_as<K>;
  { K::one(f) } -> std::same_as<K>;
  { K::from_rational(r, f) } -> std::same_as<K>;
};

static_assert(Coefficient<Rational>);
static_assert(Coefficient<Fp>);

/// Maps a compile-time coefficient type to the runtime field kind it represents.
template <class K>
constexpr bool matches_field(const Field& f) {
  if constexpr (std::is_same_v<K, Rational>) {
    return f.kind() == Field::Kind::Rationals;
  } else {
    return f.kind() == Field::Kind::Prime;
  }
}

}  // namespace vorcell
