#include "causal/structure_matrix.hpp"

#include <algorithm>
#include <unordered_set>

#include "causal/matching.hpp"

namespace causal {

StructureMatrix::StructureMatrix(std::vector<std::string> variable_names,
                                 std::vector<std::string> equation_labels,
                                 const std::vector<std::vector<std::size_t>>& rows)
    : n_(variable_names.size()), names_(std::move(variable_names)), labels_(std::move(equation_labels)) {
  if (n_ == 0) throw InvalidModelError("structure matrix must have at least one variable");
  if (labels_.size() != n_ || rows.size() != n_) {
    throw InvalidModelError("structure matrix must be square: " + std::to_string(n_) + " variables, " +
                            std::to_string(rows.size()) + " equations");
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty()) throw InvalidModelError("variable names must be non-empty");
    if (!seen.insert(name).second) throw InvalidModelError("duplicate variable name '" + name + "'");
  }
  seen.clear();
  for (const auto& label : labels_) {
    if (!seen.insert(label).second) throw InvalidModelError("duplicate equation label '" + label + "'");
  }
  cells_.assign(n_ * n_, 0);
  rows_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j : rows[i]) {
      if (j >= n_) {
        throw InvalidModelError("equation " + labels_[i] + " references variable index " + std::to_string(j) +
                                " out of range");
      }
      cells_[i * n_ + j] = 1;
    }
    for (std::size_t j = 0; j < n_; ++j) {
      if (cells_[i * n_ + j]) rows_[i].push_back(j);
    }
    if (rows_[i].empty()) throw InvalidModelError("equation " + labels_[i] + " has no variables");
  }
}

StructureMatrix StructureMatrix::from_grid(std::vector<std::string> variable_names,
                                           std::vector<std::string> equation_labels,
                                           const std::vector<std::vector<bool>>& grid) {
  std::vector<std::vector<std::size_t>> rows;
  rows.reserve(grid.size());
  for (const auto& cells : grid) {
    if (cells.size() != variable_names.size()) throw InvalidModelError("structure matrix must be square");
    std::vector<std::size_t> row;
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (cells[j]) row.push_back(j);
    }
    rows.push_back(std::move(row));
  }
  return StructureMatrix(std::move(variable_names), std::move(equation_labels), rows);
}

bool StructureMatrix::at(EquationId eq, VariableId var) const {
  if (eq.index >= n_ || var.index >= n_) throw RangeError("structure matrix index out of range");
  return at(eq.index, var.index);
}

std::optional<VariableId> StructureMatrix::find_variable(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return VariableId{static_cast<std::size_t>(it - names_.begin())};
}

std::optional<EquationId> StructureMatrix::find_equation(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return EquationId{static_cast<std::size_t>(it - labels_.begin())};
}

StructureMatrix StructureMatrix::permuted(const std::vector<std::size_t>& row_perm,
                                          const std::vector<std::size_t>& col_perm) const {
  if (row_perm.size() != n_ || col_perm.size() != n_) throw RangeError("permutation size mismatch");
  std::vector<std::size_t> new_col(n_, n_);
  for (std::size_t k = 0; k < n_; ++k) {
    if (col_perm[k] >= n_ || new_col[col_perm[k]] != n_) throw RangeError("column permutation is not a bijection");
    new_col[col_perm[k]] = k;
  }
  std::vector<bool> row_used(n_, false);
  std::vector<std::string> names(n_), labels(n_);
  std::vector<std::vector<std::size_t>> rows(n_);
  for (std::size_t k = 0; k < n_; ++k) {
    const std::size_t old = row_perm[k];
    if (old >= n_ || row_used[old]) throw RangeError("row permutation is not a bijection");
    row_used[old] = true;
    labels[k] = labels_[old];
    names[k] = names_[col_perm[k]];
    for (std::size_t j : rows_[old]) rows[k].push_back(new_col[j]);
  }
  return StructureMatrix(std::move(names), std::move(labels), rows);
}

VariableSet variables_of(const StructureMatrix& matrix, const EquationSet& subset) {
  VariableSet vars;
  for (EquationId eq : subset) {
    if (eq.index >= matrix.size()) throw RangeError("equation index " + std::to_string(eq.index) + " out of range");
    for (std::size_t j : matrix.row(eq.index)) vars.insert(VariableId{j});
  }
  return vars;
}

bool is_self_contained(const StructureMatrix& matrix, const EquationSet& subset) {
  if (subset.empty()) throw RangeError("self-containment is undefined for an empty equation set");
  if (variables_of(matrix, subset).size() != subset.size()) return false;
  std::vector<std::size_t> eqs;
  eqs.reserve(subset.size());
  for (EquationId eq : subset) eqs.push_back(eq.index);
  return maximum_matching(matrix, eqs).size == subset.size();
}

SystemReport check_system(const StructureMatrix& matrix) {
  SystemReport report;
  const std::size_t n = matrix.size();
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : matrix.row(i)) used[j] = true;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!used[j]) report.unused_variables.insert(VariableId{j});
  }

  const Matching matching = maximum_matching(matrix);
  if (matching.size == n) {
    report.self_contained = true;
    return report;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!matching.variable_of[i]) {
      report.violating_subset = hall_violator(matrix, matching, i);
      break;
    }
  }
  return report;
}

std::string describe(const StructureMatrix& matrix, const SystemReport& report) {
  if (report.self_contained) return "system is self-contained";
  std::string msg = "system is not self-contained";
  if (report.violating_subset) {
    msg += ": equations {";
    bool first = true;
    for (EquationId e : report.violating_subset->equations) {
      msg += (first ? "" : ",") + matrix.equation_label(e);
      first = false;
    }
    msg += "} contain only " + std::to_string(report.violating_subset->variables.size()) + " variable(s)";
  }
  return msg;
}

NotSelfContainedError::NotSelfContainedError(SystemReport report, const std::string& message)
    : Error("not_self_contained", message), report_(std::move(report)) {}

void require_self_contained(const StructureMatrix& matrix) {
  SystemReport report = check_system(matrix);
  if (report.self_contained) return;
  std::string message = describe(matrix, report);
  throw NotSelfContainedError(std::move(report), message);
}

}  // namespace causal
