#pragma once

// Kochen-Specker non-colorability checks over ks_coloring scenarios:
//  * the structural parity argument (every observable in an even number of
//    contexts plus an odd number of contexts makes one-true-per-context
//    impossible: the total of all context sums would be both even and odd),
//  * an exhaustive backtracking search certifying that no context-independent
//    {0,1} valuation picks exactly one true member per context,
//  * validation of a concrete vector realization (orthogonal bases resolving
//    the identity) for the scenario's incidence structure.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qontext/scenario.hpp"

namespace qontext::ks {

struct WrongScenarioKindError : std::runtime_error {
  explicit WrongScenarioKindError(std::string_view got)
      : std::runtime_error("operation requires a ks_coloring scenario, got " + std::string(got)) {}
};

struct TooLargeError : std::runtime_error {
  explicit TooLargeError(std::size_t n)
      : std::runtime_error("scenario has " + std::to_string(n) +
                           " observables; exhaustive search is capped at 30") {}
};

struct MissingVectorError : std::runtime_error {
  explicit MissingVectorError(const std::string& id)
      : std::runtime_error("realization has no vector for observable '" + id + "'") {}
};

struct DimensionMismatchError : std::runtime_error {
  explicit DimensionMismatchError(const std::string& message) : std::runtime_error(message) {}
};

struct ParityCertificate {
  int context_count = 0;
  std::map<std::string, int> per_observable_occurrences;
  bool all_even = false;
  bool contexts_odd = false;
  // all_even && contexts_odd: summing the one-true-per-context constraints
  // counts every observable an even number of times, yet the total must be
  // the (odd) number of contexts.
  bool contradiction_established = false;
};

ParityCertificate parity_check(const scenario::Scenario& s);

struct ColoringResult {
  bool satisfiable = false;
  std::optional<std::map<std::string, int>> witness;
  std::uint64_t assignments_examined = 0;
};

// Backtracking over {0,1} values, observables in declaration order, value 1
// tried before 0, under "exactly one member of each context is 1".
// assignments_examined counts attempted value placements; it is identical
// across runs on an identical scenario. Throws TooLargeError above 30
// observables, WrongScenarioKindError on non-coloring scenarios.
ColoringResult exhaustive_coloring(const scenario::Scenario& s);

struct VectorRealization {
  Eigen::Index dimension = 0;
  std::map<std::string, Eigen::VectorXcd> vectors;
};

// Line format: `vec <id> <re,im> <re,im> ...`; '#' comments and blank lines
// ignored. All vectors must share one dimension and be nonzero.
VectorRealization parse_realization(std::string_view text);
VectorRealization load_realization(const std::string& path);

struct ContextDeviation {
  std::size_t context_index = 0;
  double deviation = 0.0;
};

struct RealizationReport {
  bool valid = false;
  double worst_deviation = 0.0;
  std::vector<ContextDeviation> per_context;
};

// Per context: pairwise orthogonality of the (normalized) member vectors and
// entrywise agreement of the rank-1 projector sum with the identity, both
// within tol. The reported deviation is the worse of the two.
RealizationReport validate_realization(const scenario::Scenario& s, const VectorRealization& r,
                                       double tol);

}  // namespace qontext::ks
