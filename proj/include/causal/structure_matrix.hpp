#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "causal/error.hpp"

namespace causal {

/// Column index of a variable in a structure matrix.
struct VariableId {
  std::size_t index = 0;
  friend auto operator<=>(const VariableId&, const VariableId&) = default;
};

/// Row index of an equation in a structure matrix.
struct EquationId {
  std::size_t index = 0;
  friend auto operator<=>(const EquationId&, const EquationId&) = default;
};

using VariableSet = std::set<VariableId>;
using EquationSet = std::set<EquationId>;

/// Square boolean incidence matrix of a system of simultaneous structural
/// equations: entry (i, j) is set iff variable j participates in equation i.
///
/// Only the qualitative pattern is stored. Coefficients and the latent error
/// term each equation carries are not columns of the matrix. Instances are
/// immutable and always valid: construction rejects non-square input, empty
/// rows, empty or duplicate variable names, and duplicate equation labels.
class StructureMatrix {
 public:
  /// `rows[i]` lists the variable indices of equation i (duplicates are
  /// ignored). Throws InvalidModelError on any violated invariant.
  StructureMatrix(std::vector<std::string> variable_names,
                  std::vector<std::string> equation_labels,
                  const std::vector<std::vector<std::size_t>>& rows);

  /// Builds from a dense boolean grid; `grid[i][j]` set iff variable j is in
  /// equation i.
  static StructureMatrix from_grid(std::vector<std::string> variable_names,
                                   std::vector<std::string> equation_labels,
                                   const std::vector<std::vector<bool>>& grid);

  std::size_t size() const noexcept { return n_; }
  bool at(EquationId eq, VariableId var) const;
  bool at(std::size_t eq, std::size_t var) const { return cells_[eq * n_ + var] != 0; }

  /// Variable indices of equation `eq`, ascending.
  const std::vector<std::size_t>& row(std::size_t eq) const { return rows_[eq]; }

  const std::vector<std::string>& variable_names() const noexcept { return names_; }
  const std::vector<std::string>& equation_labels() const noexcept { return labels_; }

  const std::string& variable_name(VariableId v) const { return names_.at(v.index); }
  const std::string& equation_label(EquationId e) const { return labels_.at(e.index); }

  std::optional<VariableId> find_variable(const std::string& name) const;
  std::optional<EquationId> find_equation(const std::string& label) const;

  /// Row-by-row variable index lists (a copy, suitable for rebuilding).
  std::vector<std::vector<std::size_t>> rows() const { return rows_; }

  /// Matrix with rows and columns reordered: new row k is old row
  /// `row_perm[k]`, new column k is old column `col_perm[k]`.
  StructureMatrix permuted(const std::vector<std::size_t>& row_perm,
                           const std::vector<std::size_t>& col_perm) const;

  friend bool operator==(const StructureMatrix& a, const StructureMatrix& b) {
    return a.n_ == b.n_ && a.cells_ == b.cells_ && a.names_ == b.names_ && a.labels_ == b.labels_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> cells_;
  std::vector<std::vector<std::size_t>> rows_;
  std::vector<std::string> names_;
  std::vector<std::string> labels_;
};

/// A set of equations together with the union of their variables.
struct EquationSubset {
  EquationSet equations;
  VariableSet variables;
  friend bool operator==(const EquationSubset&, const EquationSubset&) = default;
};

/// Union of the variables participating in the equations of `subset`.
/// Throws RangeError for an equation index outside the matrix.
VariableSet variables_of(const StructureMatrix& matrix, const EquationSet& subset);

/// A subset is self-contained when it has as many variables as equations and
/// every sub-subset has at least as many variables as equations. The second
/// clause is decided through Hall's theorem: a matching saturating every
/// equation of the subset must exist. Throws RangeError on an empty subset.
bool is_self_contained(const StructureMatrix& matrix, const EquationSet& subset);

/// Outcome of checking a whole system for self-containment.
struct SystemReport {
  bool self_contained = false;
  /// Variables that occur in no equation.
  VariableSet unused_variables;
  /// Equations with fewer variables than equations, present whenever the
  /// system is not self-contained.
  std::optional<EquationSubset> violating_subset;
};

SystemReport check_system(const StructureMatrix& matrix);

/// One-line human-readable summary of a report, naming the violating equations.
std::string describe(const StructureMatrix& matrix, const SystemReport& report);

/// Thrown by operations that require a self-contained system.
class NotSelfContainedError : public Error {
 public:
  NotSelfContainedError(SystemReport report, const std::string& message);
  const SystemReport& report() const noexcept { return report_; }

 private:
  SystemReport report_;
};

/// Throws NotSelfContainedError unless the whole system is self-contained.
void require_self_contained(const StructureMatrix& matrix);

}  // namespace causal
