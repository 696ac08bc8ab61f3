#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "causal/structure_matrix.hpp"

namespace causal {

/// A minimal self-contained subset identified by the ordering procedure.
struct Cluster {
  EquationSet equations;
  /// Variables solved by this cluster (excludes earlier-solved inputs).
  VariableSet variables;
  std::size_t degree = 0;
  std::size_t order = 0;

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

using VariableEdge = std::pair<VariableId, VariableId>;

/// Causal ordering of a self-contained system.
///
/// Clusters are listed canonically, ascending by (order, smallest variable
/// index). `cluster_edges` refer to positions in `clusters`.
struct CausalOrdering {
  std::vector<Cluster> clusters;
  std::set<std::pair<std::size_t, std::size_t>> cluster_edges;
  /// u -> v: u was solved earlier and appears in an equation of v's cluster.
  std::set<VariableEdge> variable_edges;
  std::vector<std::string> variable_names;
  std::vector<std::string> equation_labels;

  /// Position in `clusters` of the cluster holding `eq`; throws RangeError
  /// for an unknown equation.
  std::size_t cluster_of(EquationId eq) const;
  std::size_t cluster_of(VariableId var) const;
  bool acyclic() const;

  friend bool operator==(const CausalOrdering&, const CausalOrdering&) = default;
};

/// Computes the ordering from a perfect matching: equations are linked
/// through the variables they share with other equations' matched variables,
/// strongly connected components of that graph are the clusters, and the
/// longest-path depth in the condensation is the order. Throws
/// NotSelfContainedError when no perfect matching exists.
CausalOrdering causal_ordering(const StructureMatrix& matrix);

/// Minimal self-contained subsets of the whole system (the order-0 clusters).
std::vector<EquationSubset> minimal_self_contained_subsets(const StructureMatrix& matrix);

/// Graphviz rendering: one node per variable, feedback clusters as
/// same-rank subgraphs labelled with their degree.
std::string ordering_to_dot(const CausalOrdering& ordering);

/// DOT identifier: bare when it is a plain identifier, otherwise quoted and
/// escaped.
std::string dot_id(const std::string& name);

}  // namespace causal
