#include "vorcell/ring.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace vorcell {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

Ring::Ring(std::vector<std::string> names, Field field, MonomialOrder order)
    : names_(std::move(names)), field_(field), order_(order) {
  if (names_.size() > kMaxVariables) {
    throw std::length_error("at most " + std::to_string(kMaxVariables) + " variables are supported");
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!valid_identifier(n)) throw std::invalid_argument("invalid variable name '" + n + "'");
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate variable name '" + n + "'");
  }
  if (order_.kind() == MonomialOrder::Kind::BlockElim && order_.block() > names_.size()) {
    throw std::invalid_argument("elimination block larger than the variable count");
  }
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::string fresh_name(const std::vector<std::string>& names, const std::string& stem) {
  auto taken = [&](const std::string& s) { return std::find(names.begin(), names.end(), s) != names.end(); };
  if (!taken(stem)) return stem;
  for (int i = 0;; ++i) {
    std::string cand = stem + "_" + std::to_string(i);
    if (!taken(cand)) return cand;
  }
}

}  // namespace vorcell
