#pragma once

#include <string>
#include <vector>

#include "causal/bbn.hpp"
#include "causal/causal_ordering.hpp"
#include "causal/structure_matrix.hpp"

namespace causal {

/// A "change in structure": an edit to the mechanisms of a model.
struct StructuralChange {
  enum class Kind { kReplaceEquation, kAddExogenousVariable, kSetBbnNode };

  Kind kind = Kind::kReplaceEquation;
  /// Equation label (replace_equation), new variable name
  /// (add_exogenous_variable), or node name (set_bbn_node).
  std::string target;
  /// Variables of the new or replacement equation.
  std::vector<std::string> vars;
  /// Replacement distribution for set_bbn_node.
  std::vector<double> dist;

  friend bool operator==(const StructuralChange&, const StructuralChange&) = default;
};

std::string to_string(StructuralChange::Kind kind);
StructuralChange::Kind parse_change_kind(const std::string& text);

/// Applies a replace_equation or add_exogenous_variable change and checks the
/// result. The new equation of add_exogenous_variable is labelled "e<n+1>"
/// and its variable becomes the last column. Throws NotSelfContainedError
/// when the edited system is not self-contained, RangeError on unknown
/// names, and InvalidModelError for set_bbn_node.
StructureMatrix apply_change(const StructureMatrix& matrix, const StructuralChange& change);

/// Variables of the changed equation's cluster plus everything downstream of
/// it along cluster edges.
VariableSet affected_variables(const CausalOrdering& ordering, EquationId changed_equation);

/// Cuts every arc into `node` and replaces its CPT with the single row
/// `dist`. Throws RangeError on a length mismatch or an unnormalized `dist`.
Bbn intervene_bbn(const Bbn& bbn, VariableId node, const std::vector<double>& dist);

/// set_bbn_node change applied to a network.
Bbn apply_change(const Bbn& bbn, const StructuralChange& change);

/// Per-variable max |P_before(v = k) - P_after(v = k)| over outcomes k, by
/// exact enumeration. Throws InvalidModelError on mismatched variables.
std::vector<double> compare_marginals(const Bbn& before, const Bbn& after);

}  // namespace causal
