#include "causal/matching.hpp"

#include <deque>

namespace causal {
namespace {

bool augment(const StructureMatrix& matrix, std::size_t eq, std::vector<bool>& visited, Matching& m) {
  for (std::size_t var : matrix.row(eq)) {
    if (visited[var]) continue;
    visited[var] = true;
    const auto owner = m.equation_of[var];
    if (!owner || augment(matrix, *owner, visited, m)) {
      m.equation_of[var] = eq;
      m.variable_of[eq] = var;
      return true;
    }
  }
  return false;
}

}  // namespace

Matching maximum_matching(const StructureMatrix& matrix, const std::vector<std::size_t>& equations) {
  const std::size_t n = matrix.size();
  Matching m;
  m.variable_of.assign(n, std::nullopt);
  m.equation_of.assign(n, std::nullopt);
  std::vector<bool> visited(n);
  for (std::size_t eq : equations) {
    if (eq >= n) throw RangeError("equation index " + std::to_string(eq) + " out of range");
    std::fill(visited.begin(), visited.end(), false);
    if (augment(matrix, eq, visited, m)) ++m.size;
  }
  return m;
}

Matching maximum_matching(const StructureMatrix& matrix) {
  std::vector<std::size_t> all(matrix.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return maximum_matching(matrix, all);
}

EquationSubset hall_violator(const StructureMatrix& matrix, const Matching& matching, std::size_t unmatched) {
  // Alternating BFS: equation -> any of its variables -> the equation matched
  // to that variable. In a maximum matching every reached variable is matched.
  EquationSubset out;
  std::deque<std::size_t> queue{unmatched};
  out.equations.insert(EquationId{unmatched});
  while (!queue.empty()) {
    const std::size_t eq = queue.front();
    queue.pop_front();
    for (std::size_t var : matrix.row(eq)) {
      if (!out.variables.insert(VariableId{var}).second) continue;
      const auto owner = matching.equation_of[var];
      if (owner && out.equations.insert(EquationId{*owner}).second) queue.push_back(*owner);
    }
  }
  return out;
}

}  // namespace causal
