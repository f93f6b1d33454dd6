#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vorcell/field.hpp"

namespace vorcell::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitBudget = 2,
  kExitNonMember = 3,
  kExitInconclusive = 4,
};

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::uint64_t seed = 0;
  std::uint32_t prime = kDefaultPrime;
  /// Overrides VORONOI_BUDGET.
  std::optional<std::size_t> budget;
  std::optional<double> tol;
  /// Report destination; empty means the `out` stream.
  std::string output;
  bool timings = false;
};

/// One invocation; `args` excludes the program name. Reports go to `out` or
/// --output, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Desk-scale (n, d) sizes the degree subcommand runs without --force.
bool degree_whitelisted(unsigned n, unsigned d, bool homogeneous);

}  // namespace vorcell::cli
