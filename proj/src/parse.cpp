#include "vorcell/parse.hpp"

#include <cctype>

namespace vorcell {

namespace {

template <Coefficient K>
class Parser {
public:
  Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Polynomial<K> run() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty polynomial", pos_);
    Polynomial<K> p = poly();
    skip_space();
    if (pos_ != text_.size()) fail_unexpected();
    return p;
  }

private:
  Polynomial<K> poly() {
    Polynomial<K> acc = term();
    for (;;) {
      skip_space();
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial<K> term() {
    Polynomial<K> acc = unary();
    for (;;) {
      skip_space();
      if (!accept('*')) return acc;
      acc = acc * unary();
    }
  }

  Polynomial<K> unary() {
    skip_space();
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial<K> power() {
    Polynomial<K> base = atom();
    skip_space();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t at = pos_;
    std::string digits = read_digits();
    if (digits.empty()) throw ParseError("expected integer exponent", at);
    if (digits.size() > 5) throw ParseError("exponent too large", at);
    return base.pow(static_cast<unsigned>(std::stoul(digits)));
  }

  Polynomial<K> atom() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial<K> inner = poly();
      skip_space();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t at = pos_;
      std::string lit = read_digits();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::string den = read_digits();
        if (den.empty()) throw ParseError("expected denominator", pos_);
        lit += "/" + den;
      }
      Rational r;
      try {
        r = Rational::parse(lit);
      } catch (const std::exception& e) {
        throw ParseError(e.what(), at);
      }
      try {
        return Polynomial<K>::from_rational(ring_, r);
      } catch (const std::domain_error& e) {
        throw ParseError(e.what(), at);
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t at = pos_;
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        name += text_[pos_++];
      }
      auto idx = ring_->index_of(name);
      if (!idx) throw ParseError("unknown variable '" + name + "'", at);
      return Polynomial<K>::variable(ring_, *idx);
    }
    fail_unexpected();
  }

  std::string read_digits() {
    std::string d;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) d += text_[pos_++];
    return d;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail_unexpected() {
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

template <Coefficient K>
Polynomial<K> parse_polynomial(std::string_view text, const RingPtr& ring) {
  if (!matches_field<K>(ring->field())) throw RingMismatch("coefficient type does not match ring field");
  return Parser<K>(text, ring).run();
}

template Polynomial<Rational> parse_polynomial(std::string_view, const RingPtr&);
template Polynomial<Fp> parse_polynomial(std::string_view, const RingPtr&);

}  // namespace vorcell
