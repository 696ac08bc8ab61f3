#include "causal/sem_bridge.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>
#include <unordered_set>

#include "causal/causal_ordering.hpp"

namespace causal {

ThresholdEquationSystem::ThresholdEquationSystem(std::vector<std::string> names,
                                                 std::vector<ThresholdEquation> equations)
    : names_(std::move(names)) {
  const std::size_t n = names_.size();
  if (n == 0) throw InvalidModelError("threshold system must have at least one equation");
  std::unordered_set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty()) throw InvalidModelError("variable names must be non-empty");
    if (!seen.insert(name).second) throw InvalidModelError("duplicate variable name '" + name + "'");
  }
  if (equations.size() != n) {
    throw InvalidModelError("expected one equation per variable: " + std::to_string(n) + " variables, " +
                            std::to_string(equations.size()) + " equations");
  }

  equations_.resize(n);
  std::vector<bool> placed(n, false);
  for (auto& eq : equations) {
    if (eq.target >= n) throw InvalidModelError("equation target index out of range");
    if (placed[eq.target]) throw InvalidModelError("two equations target '" + names_[eq.target] + "'");
    placed[eq.target] = true;
    equations_[eq.target] = std::move(eq);
  }

  std::vector<std::size_t> counts(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& eq = equations_[v];
    const std::string who = "equation for '" + names_[v] + "'";
    if (eq.thresholds.empty()) throw InvalidModelError(who + " has no threshold rows");
    counts[v] = eq.thresholds.front().size();
    if (counts[v] < 2) throw InvalidModelError(who + " needs at least 2 outcomes");
  }

  for (std::size_t v = 0; v < n; ++v) {
    auto& eq = equations_[v];
    const std::string who = "equation for '" + names_[v] + "'";
    std::unordered_set<std::size_t> parent_set;
    std::size_t rows = 1;
    for (std::size_t p : eq.parents) {
      if (p >= n) throw InvalidModelError(who + " has a parent index out of range");
      if (p == v) throw InvalidModelError(who + " lists its own target as a parent");
      if (!parent_set.insert(p).second) throw InvalidModelError(who + " repeats parent '" + names_[p] + "'");
      rows *= counts[p];
    }
    if (eq.thresholds.size() != rows) {
      throw InvalidModelError(who + " has " + std::to_string(eq.thresholds.size()) + " rows, expected " +
                              std::to_string(rows));
    }
    for (std::size_t r = 0; r < rows; ++r) {
      auto& row = eq.thresholds[r];
      const std::string where = who + " row " + std::to_string(r);
      if (row.size() != counts[v]) throw InvalidModelError(where + " has inconsistent width");
      if (!(std::abs(row.back() - 1.0) <= kNormalizationTolerance)) {
        throw InvalidModelError(where + " does not end at 1");
      }
      double prev = 0.0;
      for (double& c : row) {
        if (!(c >= 0.0)) throw InvalidModelError(where + " has a negative threshold");
        c = std::min(c, 1.0);
        if (c < prev) throw InvalidModelError(where + " is not non-decreasing");
        prev = c;
      }
      row.back() = 1.0;
    }
  }

  std::vector<std::size_t> pending(n, 0);
  std::vector<std::vector<std::size_t>> children(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t p : equations_[v].parents) {
      children[p].push_back(v);
      ++pending[v];
    }
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (pending[v] == 0) ready.push(v);
  }
  while (!ready.empty()) {
    const std::size_t v = ready.top();
    ready.pop();
    order_.push_back(v);
    for (std::size_t c : children[v]) {
      if (--pending[c] == 0) ready.push(c);
    }
  }
  if (order_.size() != n) throw InvalidModelError("threshold equations form a cycle");
}

std::vector<std::size_t> ThresholdEquationSystem::outcome_counts() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for (std::size_t v = 0; v < size(); ++v) out.push_back(outcome_count(v));
  return out;
}

std::size_t ThresholdEquationSystem::row_index(std::size_t target, const Assignment& a) const {
  std::size_t row = 0;
  for (std::size_t p : equations_[target].parents) row = row * outcome_count(p) + a[p];
  return row;
}

ThresholdEquationSystem bbn_to_sem(const Bbn& bbn) {
  require_valid(bbn);
  std::vector<ThresholdEquation> equations;
  equations.reserve(bbn.size());
  for (std::size_t v = 0; v < bbn.size(); ++v) {
    const BbnNode& node = bbn.node(v);
    ThresholdEquation eq{v, node.parents, {}};
    for (const CptRow& row : node.cpt) {
      std::vector<double> cumulative(row.size());
      std::partial_sum(row.begin(), row.end(), cumulative.begin());
      eq.thresholds.push_back(std::move(cumulative));
    }
    equations.push_back(std::move(eq));
  }
  return ThresholdEquationSystem(bbn.names(), std::move(equations));
}

std::size_t select_outcome(const std::vector<double>& thresholds, double u) {
  // First j with u <= c_j; empty intervals are skipped because c_{j-1} = c_j.
  const auto it = std::lower_bound(thresholds.begin(), thresholds.end(), u);
  if (it == thresholds.end()) return thresholds.size() - 1;
  return static_cast<std::size_t>(it - thresholds.begin());
}

Assignment evaluate(const ThresholdEquationSystem& sem, const std::vector<double>& latents) {
  if (latents.size() != sem.size()) {
    throw RangeError("expected " + std::to_string(sem.size()) + " latents, got " + std::to_string(latents.size()));
  }
  for (std::size_t v = 0; v < latents.size(); ++v) {
    if (!(latents[v] > 0.0 && latents[v] <= 1.0)) {
      throw RangeError("latent for '" + sem.names()[v] + "' outside (0, 1]");
    }
  }
  Assignment a(sem.size(), 0);
  for (std::size_t v : sem.evaluation_order()) {
    a[v] = select_outcome(sem.equation(v).thresholds[sem.row_index(v, a)], latents[v]);
  }
  return a;
}

double sem_joint(const ThresholdEquationSystem& sem, const Assignment& a) {
  if (a.size() != sem.size()) {
    throw RangeError("assignment covers " + std::to_string(a.size()) + " of " + std::to_string(sem.size()) +
                     " variables");
  }
  double p = 1.0;
  for (std::size_t v = 0; v < sem.size(); ++v) {
    if (a[v] >= sem.outcome_count(v)) throw RangeError("outcome index out of range for '" + sem.names()[v] + "'");
    const auto& row = sem.equation(v).thresholds[sem.row_index(v, a)];
    const double lower = a[v] == 0 ? 0.0 : row[a[v] - 1];
    p *= row[a[v]] - lower;
  }
  return p;
}

double check_equivalence(const Bbn& bbn, const ThresholdEquationSystem& sem) {
  require_valid(bbn);
  const auto counts = outcome_counts(bbn);
  if (counts != sem.outcome_counts()) throw InvalidModelError("network and threshold system differ in outcome spaces");
  double worst = 0.0;
  for_each_assignment(counts, [&](const Assignment& a) {
    worst = std::max(worst, std::abs(joint_probability(bbn, a) - sem_joint(sem, a)));
  });
  return worst;
}

double EmpiricalDistribution::frequency(const Assignment& a) const {
  const auto it = tallies.find(a);
  if (it == tallies.end() || count == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(count);
}

double latent_from_bits(std::uint64_t bits) { return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53; }

EmpiricalDistribution sample(const ThresholdEquationSystem& sem, std::uint64_t seed, std::uint64_t count) {
  if (count == 0) throw RangeError("sample count must be at least 1");
  std::mt19937_64 engine(seed);
  std::vector<double> latents(sem.size());
  EmpiricalDistribution out;
  out.count = count;
  for (std::uint64_t s = 0; s < count; ++s) {
    for (double& u : latents) u = latent_from_bits(engine());
    ++out.tallies[evaluate(sem, latents)];
  }
  return out;
}

StructureMatrix sem_structure(const ThresholdEquationSystem& sem) {
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> rows;
  for (std::size_t v = 0; v < sem.size(); ++v) {
    labels.push_back("e" + std::to_string(v + 1));
    std::vector<std::size_t> row = sem.equation(v).parents;
    row.push_back(v);
    rows.push_back(std::move(row));
  }
  return StructureMatrix(sem.names(), std::move(labels), rows);
}

bool roundtrip_check(const Bbn& bbn) {
  const CausalOrdering ordering = causal_ordering(sem_structure(bbn_to_sem(bbn)));
  return ordering.acyclic() && ordering.variable_edges == bbn.edges();
}

}  // namespace causal
