#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vorcell/field.hpp"
#include "vorcell/monomial.hpp"

namespace vorcell {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Thrown when two operands live in different polynomial rings.
class RingMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Polynomial ring descriptor: variable names, coefficient field and monomial order.
/// Immutable; a different order means a different ring.
class Ring {
public:
  Ring(std::vector<std::string> names, Field field, MonomialOrder order = MonomialOrder::grevlex());

  static RingPtr make(std::vector<std::string> names, Field field,
                      MonomialOrder order = MonomialOrder::grevlex()) {
    return std::make_shared<const Ring>(std::move(names), field, order);
  }

  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const Field& field() const { return field_; }
  const MonomialOrder& order() const { return order_; }

  std::optional<std::size_t> index_of(std::string_view name) const;

  RingPtr with_order(MonomialOrder order) const { return make(names_, field_, order); }

  bool operator==(const Ring& other) const {
    return names_ == other.names_ && field_ == other.field_ && order_ == other.order_;
  }

private:
  std::vector<std::string> names_;
  Field field_;
  MonomialOrder order_;
};

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// A name not already used in `names`, derived from `stem`.
std::string fresh_name(const std::vector<std::string>& names, const std::string& stem);

}  // namespace vorcell
