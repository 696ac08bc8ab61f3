#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "causal/structure_matrix.hpp"

namespace causal {

/// Maximum bipartite matching between a set of equations and the variables
/// they contain.
struct Matching {
  /// Matched variable per equation, indexed by equation index; empty for
  /// equations outside the subset or left unmatched.
  std::vector<std::optional<std::size_t>> variable_of;
  /// Matched equation per variable, indexed by variable index.
  std::vector<std::optional<std::size_t>> equation_of;
  std::size_t size = 0;
};

/// Augmenting-path matching restricted to the equations in `equations`
/// (ascending order of processing, so the result is deterministic).
Matching maximum_matching(const StructureMatrix& matrix, const std::vector<std::size_t>& equations);

/// Matching over all equations of the matrix.
Matching maximum_matching(const StructureMatrix& matrix);

/// Given a matching that leaves equation `unmatched` free, returns the
/// equations reachable from it by alternating paths. This set has exactly
/// one more equation than it has variables, so it violates Hall's condition.
EquationSubset hall_violator(const StructureMatrix& matrix, const Matching& matching,
                             std::size_t unmatched);

}  // namespace causal
