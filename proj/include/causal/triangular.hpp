#pragma once

#include <map>
#include <vector>

#include "causal/structure_matrix.hpp"

namespace causal {

/// Row and column interchanges that bring a structure matrix to
/// lower-triangular form with a fully set diagonal.
struct Triangularization {
  /// Position k of the permuted matrix holds original equation row_perm[k].
  std::vector<EquationId> row_perm;
  /// Position k of the permuted matrix holds original variable col_perm[k].
  std::vector<VariableId> col_perm;
  /// Variable each equation determines (its diagonal entry).
  std::map<EquationId, VariableId> determined_by;
};

/// No remaining row has a single non-zero at some pivot. `witness` is the
/// set of equations still unpivoted at that point.
class CyclicStructureError : public Error {
 public:
  CyclicStructureError(EquationSet witness, const std::string& message)
      : Error("cyclic", message), witness_(std::move(witness)) {}
  const EquationSet& witness() const noexcept { return witness_; }

 private:
  EquationSet witness_;
};

/// Pivots along the diagonal: at each step the lowest-indexed remaining
/// equation with exactly one variable among the remaining columns is moved to
/// the pivot row, and that variable to the pivot column. Throws
/// NotSelfContainedError or CyclicStructureError.
Triangularization triangularize(const StructureMatrix& matrix);

/// True iff triangularize succeeds. Throws NotSelfContainedError.
bool is_triangularizable(const StructureMatrix& matrix);

}  // namespace causal
