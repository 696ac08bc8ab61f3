#include "causal/intervention.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace causal {

std::string to_string(StructuralChange::Kind kind) {
  switch (kind) {
    case StructuralChange::Kind::kReplaceEquation:
      return "replace_equation";
    case StructuralChange::Kind::kAddExogenousVariable:
      return "add_exogenous_variable";
    case StructuralChange::Kind::kSetBbnNode:
      return "set_bbn_node";
  }
  return "unknown";
}

StructuralChange::Kind parse_change_kind(const std::string& text) {
  if (text == "replace_equation") return StructuralChange::Kind::kReplaceEquation;
  if (text == "add_exogenous_variable") return StructuralChange::Kind::kAddExogenousVariable;
  if (text == "set_bbn_node") return StructuralChange::Kind::kSetBbnNode;
  throw ParseError("unknown change kind '" + text + "'");
}

namespace {

std::vector<std::size_t> resolve(const std::vector<std::string>& names, const std::vector<std::string>& vars) {
  std::vector<std::size_t> row;
  for (const auto& v : vars) {
    auto it = std::find(names.begin(), names.end(), v);
    if (it == names.end()) throw RangeError("unknown variable '" + v + "'");
    row.push_back(static_cast<std::size_t>(it - names.begin()));
  }
  return row;
}

}  // namespace

StructureMatrix apply_change(const StructureMatrix& matrix, const StructuralChange& change) {
  auto names = matrix.variable_names();
  auto labels = matrix.equation_labels();
  auto rows = matrix.rows();

  switch (change.kind) {
    case StructuralChange::Kind::kReplaceEquation: {
      const auto eq = matrix.find_equation(change.target);
      if (!eq) throw RangeError("unknown equation '" + change.target + "'");
      rows[eq->index] = resolve(names, change.vars);
      break;
    }
    case StructuralChange::Kind::kAddExogenousVariable: {
      if (matrix.find_variable(change.target)) throw RangeError("variable '" + change.target + "' already exists");
      if (std::find(change.vars.begin(), change.vars.end(), change.target) == change.vars.end()) {
        throw RangeError("equation for new variable '" + change.target + "' must contain it");
      }
      names.push_back(change.target);
      std::size_t next = labels.size() + 1;
      while (matrix.find_equation("e" + std::to_string(next))) ++next;
      labels.push_back("e" + std::to_string(next));
      rows.push_back(resolve(names, change.vars));
      break;
    }
    case StructuralChange::Kind::kSetBbnNode:
      throw InvalidModelError("set_bbn_node applies to networks, not structure matrices");
  }

  StructureMatrix edited(std::move(names), std::move(labels), rows);
  require_self_contained(edited);
  return edited;
}

VariableSet affected_variables(const CausalOrdering& ordering, EquationId changed_equation) {
  const std::size_t start = ordering.cluster_of(changed_equation);
  std::vector<bool> reached(ordering.clusters.size(), false);
  std::deque<std::size_t> queue{start};
  reached[start] = true;
  VariableSet out;
  while (!queue.empty()) {
    const std::size_t c = queue.front();
    queue.pop_front();
    out.insert(ordering.clusters[c].variables.begin(), ordering.clusters[c].variables.end());
    for (auto it = ordering.cluster_edges.lower_bound({c, 0}); it != ordering.cluster_edges.end() && it->first == c;
         ++it) {
      if (!reached[it->second]) {
        reached[it->second] = true;
        queue.push_back(it->second);
      }
    }
  }
  return out;
}

Bbn intervene_bbn(const Bbn& bbn, VariableId node, const std::vector<double>& dist) {
  require_valid(bbn);
  if (node.index >= bbn.size()) throw RangeError("node index " + std::to_string(node.index) + " out of range");
  const BbnNode& old = bbn.node(node.index);
  if (dist.size() != old.outcomes.size()) {
    throw RangeError("distribution for '" + old.name + "' has " + std::to_string(dist.size()) + " entries, expected " +
                     std::to_string(old.outcomes.size()));
  }
  double sum = 0.0;
  for (double p : dist) {
    if (!(p >= 0.0 && p <= 1.0)) throw RangeError("distribution entry outside [0, 1]");
    sum += p;
  }
  if (!(std::abs(sum - 1.0) <= kNormalizationTolerance)) throw RangeError("distribution does not sum to 1");
  return bbn.with_node(node.index, BbnNode{old.name, old.outcomes, {}, {dist}});
}

Bbn apply_change(const Bbn& bbn, const StructuralChange& change) {
  if (change.kind != StructuralChange::Kind::kSetBbnNode) {
    throw InvalidModelError(to_string(change.kind) + " applies to structure matrices, not networks");
  }
  return intervene_bbn(bbn, VariableId{bbn.index_of(change.target)}, change.dist);
}

std::vector<double> compare_marginals(const Bbn& before, const Bbn& after) {
  if (before.names() != after.names() || outcome_counts(before) != outcome_counts(after)) {
    throw InvalidModelError("networks differ in variables or outcome spaces");
  }
  const auto a = marginals(before);
  const auto b = marginals(after);
  std::vector<double> out(a.size(), 0.0);
  for (std::size_t v = 0; v < a.size(); ++v) {
    for (std::size_t k = 0; k < a[v].size(); ++k) out[v] = std::max(out[v], std::abs(a[v][k] - b[v][k]));
  }
  return out;
}

}  // namespace causal
