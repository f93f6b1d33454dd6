#pragma once

// Polynomial text grammar (whitespace is ignored):
//
//   poly    = term { ("+" | "-") term } ;
//   term    = unary { "*" unary } ;
//   unary   = ("+" | "-") unary | power ;
//   power   = atom [ "^" integer ] ;
//   atom    = number | identifier | "(" poly ")" ;
//   number  = integer [ "/" integer ] ;
//   identifier = letter { letter | digit | "_" } ;
//
// Identifiers must be variables of the ring. Juxtaposition ("2x") is an error;
// "/" only appears inside a rational literal.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "vorcell/polynomial.hpp"

namespace vorcell {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

template <Coefficient K>
Polynomial<K> parse_polynomial(std::string_view text, const RingPtr& ring);

extern template Polynomial<Rational> parse_polynomial(std::string_view, const RingPtr&);
extern template Polynomial<Fp> parse_polynomial(std::string_view, const RingPtr&);

}  // namespace vorcell
