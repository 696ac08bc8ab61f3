#include "causal/triangular.hpp"

namespace causal {

Triangularization triangularize(const StructureMatrix& matrix) {
  require_self_contained(matrix);
  const std::size_t n = matrix.size();
  std::vector<bool> row_done(n, false);
  std::vector<bool> col_done(n, false);
  Triangularization out;

  for (std::size_t pivot = 0; pivot < n; ++pivot) {
    bool found = false;
    for (std::size_t eq = 0; eq < n && !found; ++eq) {
      if (row_done[eq]) continue;
      std::size_t live = 0;
      std::size_t last = 0;
      for (std::size_t var : matrix.row(eq)) {
        if (!col_done[var]) {
          ++live;
          last = var;
        }
      }
      if (live != 1) continue;
      row_done[eq] = col_done[last] = true;
      out.row_perm.push_back(EquationId{eq});
      out.col_perm.push_back(VariableId{last});
      out.determined_by.emplace(EquationId{eq}, VariableId{last});
      found = true;
    }
    if (!found) {
      EquationSet witness;
      std::string names;
      for (std::size_t eq = 0; eq < n; ++eq) {
        if (row_done[eq]) continue;
        witness.insert(EquationId{eq});
        names += (names.empty() ? "" : ",") + matrix.equation_labels()[eq];
      }
      throw CyclicStructureError(std::move(witness), "no single-variable equation at pivot " +
                                                         std::to_string(pivot) + "; cyclic equations {" + names + "}");
    }
  }
  return out;
}

bool is_triangularizable(const StructureMatrix& matrix) {
  require_self_contained(matrix);
  try {
    triangularize(matrix);
    return true;
  } catch (const CyclicStructureError&) {
    return false;
  }
}

}  // namespace causal
