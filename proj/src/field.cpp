#include "vorcell/field.hpp"

#include <charconv>
#include <stdexcept>

namespace vorcell {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::uint32_t d = 3; static_cast<std::uint64_t>(d) * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !vorcell::is_prime(p)) {
    throw std::invalid_argument("modulus " + std::to_string(p) + " is not a prime below 2^31");
  }
  return Field(Kind::Prime, p);
}

Field Field::parse(std::string_view text) {
  if (text == "Q" || text == "QQ") return rationals();
  if (text.starts_with("Fp:")) {
    std::string_view digits = text.substr(3);
    std::uint32_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw std::invalid_argument("malformed field '" + std::string(text) + "'");
    }
    return prime(p);
  }
  throw std::invalid_argument("unknown field '" + std::string(text) + "' (expected Q or Fp:<p>)");
}

std::string Field::to_string() const {
  return kind_ == Kind::Rationals ? std::string("Q") : "Fp:" + std::to_string(modulus_);
}

PrimeFieldElement PrimeFieldElement::from_rational(const Rational& r, const Field& f) {
  const std::uint32_t p = f.modulus();
  const mpz_class pm(static_cast<unsigned long>(p));
  mpz_class n = r.numerator() % pm;
  if (n < 0) n += pm;
  mpz_class d = r.denominator() % pm;
  if (d == 0) throw std::domain_error("denominator of " + r.to_string() + " vanishes mod " + std::to_string(p));
  PrimeFieldElement num(n.get_ui(), p);
  PrimeFieldElement den(d.get_ui(), p);
  return num / den;
}

PrimeFieldElement PrimeFieldElement::inverse() const {
  if (v_ == 0) throw std::domain_error("inverse of zero in F_p");
  // Extended Euclid on (v, p).
  std::int64_t a = v_, b = p_, x0 = 1, x1 = 0;
  while (b != 0) {
    const std::int64_t q = a / b;
    std::int64_t t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  x0 %= static_cast<std::int64_t>(p_);
  if (x0 < 0) x0 += p_;
  return {static_cast<std::uint64_t>(x0), p_};
}

}  // namespace vorcell
