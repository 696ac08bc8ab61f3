#include "causal/bbn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <unordered_set>

namespace causal {

std::vector<std::string> Bbn::names() const {
  std::vector<std::string> out;
  out.reserve(nodes_.size());
  for (const auto& n : nodes_) out.push_back(n.name);
  return out;
}

std::size_t Bbn::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].name == name) return i;
  }
  throw RangeError("unknown node '" + name + "'");
}

std::set<std::pair<VariableId, VariableId>> Bbn::edges() const {
  std::set<std::pair<VariableId, VariableId>> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (std::size_t p : nodes_[i].parents) out.emplace(VariableId{p}, VariableId{i});
  }
  return out;
}

std::uint64_t Bbn::configuration_count() const {
  std::uint64_t total = 1;
  for (const auto& n : nodes_) {
    const std::uint64_t k = n.outcomes.size();
    if (k == 0) return 0;
    if (total > std::numeric_limits<std::uint64_t>::max() / k) return std::numeric_limits<std::uint64_t>::max();
    total *= k;
  }
  return total;
}

std::size_t Bbn::row_index(std::size_t node, const Assignment& a) const {
  std::size_t row = 0;
  for (std::size_t p : nodes_[node].parents) row = row * nodes_[p].outcomes.size() + a[p];
  return row;
}

Bbn Bbn::with_node(std::size_t i, BbnNode node) const {
  Bbn copy = *this;
  copy.nodes_.at(i) = std::move(node);
  return copy;
}

std::string BbnReport::summary(const std::vector<std::string>& names) const {
  auto name = [&](std::size_t i) { return i < names.size() ? names[i] : "#" + std::to_string(i); };
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << "; ";
    first = false;
  };
  if (!cycle.empty()) {
    sep();
    os << "cycle [";
    for (std::size_t k = 0; k < cycle.size(); ++k) os << (k ? "," : "") << name(cycle[k]);
    os << "]";
  }
  for (const auto& r : row_sums) {
    sep();
    os << "node " << name(r.node) << " row " << r.row << " sums to 1 - " << r.deviation;
  }
  for (const auto& p : problems) {
    sep();
    os << p;
  }
  return os.str();
}

namespace {

// Depth-first search over parent->child edges; returns the first cycle found.
std::vector<std::size_t> find_cycle(const std::vector<std::vector<std::size_t>>& children) {
  const std::size_t n = children.size();
  std::vector<int> state(n, 0);  // 0 new, 1 on path, 2 done
  std::vector<std::size_t> path;
  std::vector<std::size_t> cycle;

  std::function<bool(std::size_t)> dfs = [&](std::size_t v) {
    state[v] = 1;
    path.push_back(v);
    for (std::size_t w : children[v]) {
      if (state[w] == 1) {
        auto it = std::find(path.begin(), path.end(), w);
        cycle.assign(it, path.end());
        return true;
      }
      if (state[w] == 0 && dfs(w)) return true;
    }
    path.pop_back();
    state[v] = 2;
    return false;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (state[v] == 0 && dfs(v)) break;
  }
  if (!cycle.empty()) std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  return cycle;
}

}  // namespace

BbnReport validate(const Bbn& bbn) {
  BbnReport report;
  const auto& nodes = bbn.nodes();
  const std::size_t n = nodes.size();
  std::unordered_set<std::string> seen_names;
  std::vector<std::vector<std::size_t>> children(n);
  bool dims_ok = true;

  for (std::size_t i = 0; i < n; ++i) {
    const BbnNode& node = nodes[i];
    const std::string who = "node " + (node.name.empty() ? "#" + std::to_string(i) : node.name);
    if (node.name.empty()) report.problems.push_back(who + ": empty name");
    if (!seen_names.insert(node.name).second) report.problems.push_back(who + ": duplicate name");
    if (node.outcomes.size() < 2) {
      report.problems.push_back(who + ": needs at least 2 outcomes");
      dims_ok = false;
    }
    std::unordered_set<std::string> labels(node.outcomes.begin(), node.outcomes.end());
    if (labels.size() != node.outcomes.size()) report.problems.push_back(who + ": duplicate outcome labels");

    std::unordered_set<std::size_t> parent_set;
    for (std::size_t p : node.parents) {
      if (p >= n) {
        report.problems.push_back(who + ": parent index " + std::to_string(p) + " does not resolve");
        dims_ok = false;
        continue;
      }
      if (!parent_set.insert(p).second) report.problems.push_back(who + ": duplicate parent " + nodes[p].name);
      children[p].push_back(i);
    }
  }

  report.cycle = find_cycle(children);

  for (std::size_t i = 0; i < n && dims_ok; ++i) {
    const BbnNode& node = nodes[i];
    std::size_t rows = 1;
    for (std::size_t p : node.parents) rows *= nodes[p].outcomes.size();
    if (node.cpt.size() != rows) {
      report.problems.push_back("node " + node.name + ": cpt has " + std::to_string(node.cpt.size()) +
                                " rows, expected " + std::to_string(rows));
    }
    for (std::size_t r = 0; r < node.cpt.size(); ++r) {
      const CptRow& row = node.cpt[r];
      if (row.size() != node.outcomes.size()) {
        report.problems.push_back("node " + node.name + " row " + std::to_string(r) + ": has " +
                                  std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(node.outcomes.size()));
        continue;
      }
      double sum = 0.0;
      for (double p : row) {
        if (!(p >= 0.0 && p <= 1.0)) {
          report.problems.push_back("node " + node.name + " row " + std::to_string(r) + ": entry outside [0,1]");
        }
        sum += p;
      }
      if (!(std::abs(1.0 - sum) <= kNormalizationTolerance)) report.row_sums.push_back({i, r, 1.0 - sum});
    }
  }
  return report;
}

void require_valid(const Bbn& bbn) {
  const BbnReport report = validate(bbn);
  if (!report.ok()) throw InvalidModelError("invalid network: " + report.summary(bbn.names()));
}

double joint_probability(const Bbn& bbn, const Assignment& a) {
  if (a.size() != bbn.size()) {
    throw RangeError("assignment covers " + std::to_string(a.size()) + " of " + std::to_string(bbn.size()) +
                     " variables");
  }
  double p = 1.0;
  for (std::size_t i = 0; i < bbn.size(); ++i) {
    const BbnNode& node = bbn.node(i);
    if (a[i] >= node.outcomes.size()) throw RangeError("outcome index out of range for node " + node.name);
    p *= node.cpt[bbn.row_index(i, a)][a[i]];
  }
  return p;
}

std::vector<VariableId> topological_order(const Bbn& bbn) {
  const std::size_t n = bbn.size();
  std::vector<std::size_t> pending(n, 0);
  std::vector<std::vector<std::size_t>> children(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p : bbn.node(i).parents) {
      if (p >= n) throw InvalidModelError("node " + bbn.node(i).name + " has a dangling parent");
      children[p].push_back(i);
      ++pending[i];
    }
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (pending[i] == 0) ready.push(i);
  }
  std::vector<VariableId> order;
  while (!ready.empty()) {
    const std::size_t v = ready.top();
    ready.pop();
    order.push_back(VariableId{v});
    for (std::size_t c : children[v]) {
      if (--pending[c] == 0) ready.push(c);
    }
  }
  if (order.size() != n) throw InvalidModelError("network contains a cycle");
  return order;
}

void for_each_assignment(const std::vector<std::size_t>& outcome_counts,
                         const std::function<void(const Assignment&)>& visit, std::uint64_t limit) {
  std::uint64_t total = 1;
  for (std::size_t k : outcome_counts) {
    if (k == 0) return;
    if (total > limit / k) {
      throw RangeError("configuration space exceeds " + std::to_string(limit) + " assignments");
    }
    total *= k;
  }
  if (total > limit) throw RangeError("configuration space exceeds " + std::to_string(limit) + " assignments");
  Assignment a(outcome_counts.size(), 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    visit(a);
    for (std::size_t i = a.size(); i-- > 0;) {
      if (++a[i] < outcome_counts[i]) break;
      a[i] = 0;
    }
  }
}

std::vector<std::size_t> outcome_counts(const Bbn& bbn) {
  std::vector<std::size_t> out;
  out.reserve(bbn.size());
  for (const auto& n : bbn.nodes()) out.push_back(n.outcomes.size());
  return out;
}

std::vector<std::vector<double>> marginals(const Bbn& bbn, std::uint64_t limit) {
  require_valid(bbn);
  std::vector<std::vector<double>> out;
  for (const auto& n : bbn.nodes()) out.emplace_back(n.outcomes.size(), 0.0);
  for_each_assignment(
      outcome_counts(bbn),
      [&](const Assignment& a) {
        const double p = joint_probability(bbn, a);
        for (std::size_t v = 0; v < a.size(); ++v) out[v][a[v]] += p;
      },
      limit);
  return out;
}

}  // namespace causal
