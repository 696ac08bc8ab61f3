#include "causal/causal_ordering.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "causal/matching.hpp"

namespace causal {
namespace {

// Tarjan's algorithm; components come out in reverse topological order.
class SccFinder {
 public:
  explicit SccFinder(const std::vector<std::vector<std::size_t>>& graph)
      : graph_(graph), number_(graph.size(), kUnvisited), low_(graph.size(), 0), on_stack_(graph.size(), false) {}

  std::vector<std::vector<std::size_t>> run() {
    for (std::size_t v = 0; v < graph_.size(); ++v) {
      if (number_[v] == kUnvisited) visit(v);
    }
    std::reverse(components_.begin(), components_.end());
    return std::move(components_);
  }

 private:
  static constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);

  void visit(std::size_t v) {
    number_[v] = low_[v] = counter_++;
    stack_.push_back(v);
    on_stack_[v] = true;
    for (std::size_t w : graph_[v]) {
      if (number_[w] == kUnvisited) {
        visit(w);
        low_[v] = std::min(low_[v], low_[w]);
      } else if (on_stack_[w]) {
        low_[v] = std::min(low_[v], number_[w]);
      }
    }
    if (low_[v] != number_[v]) return;
    std::vector<std::size_t> component;
    std::size_t w;
    do {
      w = stack_.back();
      stack_.pop_back();
      on_stack_[w] = false;
      component.push_back(w);
    } while (w != v);
    components_.push_back(std::move(component));
  }

  const std::vector<std::vector<std::size_t>>& graph_;
  std::vector<std::size_t> number_;
  std::vector<std::size_t> low_;
  std::vector<bool> on_stack_;
  std::vector<std::size_t> stack_;
  std::vector<std::vector<std::size_t>> components_;
  std::size_t counter_ = 0;
};

}  // namespace

std::size_t CausalOrdering::cluster_of(EquationId eq) const {
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (clusters[c].equations.count(eq)) return c;
  }
  throw RangeError("unknown equation index " + std::to_string(eq.index));
}

std::size_t CausalOrdering::cluster_of(VariableId var) const {
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (clusters[c].variables.count(var)) return c;
  }
  throw RangeError("unknown variable index " + std::to_string(var.index));
}

bool CausalOrdering::acyclic() const {
  return std::all_of(clusters.begin(), clusters.end(), [](const Cluster& c) { return c.degree == 1; });
}

CausalOrdering causal_ordering(const StructureMatrix& matrix) {
  const std::size_t n = matrix.size();
  const Matching matching = maximum_matching(matrix);
  if (matching.size != n) require_self_contained(matrix);

  // Edge a -> b when equation b uses the variable that equation a determines.
  std::vector<std::vector<std::size_t>> graph(n);
  for (std::size_t eq = 0; eq < n; ++eq) {
    for (std::size_t var : matrix.row(eq)) {
      const std::size_t source = *matching.equation_of[var];
      if (source != eq) graph[source].push_back(eq);
    }
  }
  const auto components = SccFinder(graph).run();

  std::vector<std::size_t> component_of(n);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (std::size_t eq : components[c]) component_of[eq] = c;
  }

  // Components are topologically sorted, so one forward pass gives the
  // longest-path depth of each.
  std::vector<std::size_t> depth(components.size(), 0);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (std::size_t eq : components[c]) {
      for (std::size_t next : graph[eq]) {
        const std::size_t d = component_of[next];
        if (d != c) depth[d] = std::max(depth[d], depth[c] + 1);
      }
    }
  }

  std::vector<Cluster> raw(components.size());
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (std::size_t eq : components[c]) {
      raw[c].equations.insert(EquationId{eq});
      raw[c].variables.insert(VariableId{*matching.variable_of[eq]});
    }
    raw[c].degree = components[c].size();
    raw[c].order = depth[c];
  }

  std::vector<std::size_t> rank(components.size());
  for (std::size_t c = 0; c < rank.size(); ++c) rank[c] = c;
  std::sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
    return std::pair(raw[a].order, raw[a].variables.begin()->index) <
           std::pair(raw[b].order, raw[b].variables.begin()->index);
  });
  CausalOrdering out;
  for (std::size_t k = 0; k < rank.size(); ++k) {
    out.clusters.push_back(std::move(raw[rank[k]]));
  }

  std::vector<std::size_t> var_cluster(n);
  for (std::size_t c = 0; c < out.clusters.size(); ++c) {
    for (VariableId v : out.clusters[c].variables) var_cluster[v.index] = c;
  }
  for (std::size_t c = 0; c < out.clusters.size(); ++c) {
    const Cluster& cluster = out.clusters[c];
    for (EquationId eq : cluster.equations) {
      for (std::size_t var : matrix.row(eq.index)) {
        const std::size_t from = var_cluster[var];
        if (from == c) continue;
        out.cluster_edges.emplace(from, c);
        for (VariableId target : cluster.variables) out.variable_edges.emplace(VariableId{var}, target);
      }
    }
  }
  out.variable_names = matrix.variable_names();
  out.equation_labels = matrix.equation_labels();
  return out;
}

std::vector<EquationSubset> minimal_self_contained_subsets(const StructureMatrix& matrix) {
  const CausalOrdering ordering = causal_ordering(matrix);
  std::vector<EquationSubset> out;
  for (const Cluster& c : ordering.clusters) {
    if (c.order == 0) out.push_back({c.equations, c.variables});
  }
  return out;
}

std::string dot_id(const std::string& name) {
  static const std::set<std::string> keywords{"node", "edge", "graph", "digraph", "subgraph", "strict"};
  const bool plain = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0])) &&
                     std::all_of(name.begin(), name.end(), [](char ch) {
                       return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
                     });
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (plain && !keywords.count(lower)) return name;
  std::string quoted = "\"";
  for (char ch : name) {
    if (ch == '"' || ch == '\\') quoted += '\\';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

std::string ordering_to_dot(const CausalOrdering& ordering) {
  std::ostringstream os;
  const auto& names = ordering.variable_names;
  os << "digraph causal_ordering {\n";
  for (std::size_t c = 0; c < ordering.clusters.size(); ++c) {
    const Cluster& cluster = ordering.clusters[c];
    if (cluster.degree > 1) {
      os << "  subgraph cluster_" << c << " {\n"
         << "    label=\"degree=" << cluster.degree << "\";\n"
         << "    rank=same;\n";
      for (VariableId v : cluster.variables) os << "    " << dot_id(names[v.index]) << ";\n";
      os << "  }\n";
    } else {
      os << "  " << dot_id(names[cluster.variables.begin()->index]) << ";\n";
    }
  }
  for (const auto& [from, to] : ordering.variable_edges) {
    os << "  " << dot_id(names[from.index]) << " -> " << dot_id(names[to.index]) << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace causal
