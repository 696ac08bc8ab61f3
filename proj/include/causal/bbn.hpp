#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "causal/structure_matrix.hpp"

namespace causal {

/// Outcome index per variable, indexed by variable index. Total by
/// construction once its size matches the network.
using Assignment = std::vector<std::size_t>;

/// Probability vector over a node's outcomes, one per parent configuration.
using CptRow = std::vector<double>;

/// Tolerance for CPT rows and distributions summing to one.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Upper bound on the number of joint configurations enumerated exactly.
inline constexpr std::uint64_t kMaxEnumeratedConfigurations = std::uint64_t{1} << 20;

struct BbnNode {
  std::string name;
  std::vector<std::string> outcomes;
  /// Parent variable indices; their order fixes CPT row indexing.
  std::vector<std::size_t> parents;
  /// Row r covers the parent configuration whose mixed-radix value is r,
  /// first parent most significant.
  std::vector<CptRow> cpt;

  friend bool operator==(const BbnNode&, const BbnNode&) = default;
};

struct RowSumViolation {
  std::size_t node = 0;
  std::size_t row = 0;
  /// 1 - (sum of the row).
  double deviation = 0.0;
};

/// All invariant violations of a network; `ok()` iff none were found.
struct BbnReport {
  /// Variable indices along a directed cycle, starting at the smallest index.
  std::vector<std::size_t> cycle;
  std::vector<RowSumViolation> row_sums;
  /// Everything else (dimensions, ranges, names), one message each.
  std::vector<std::string> problems;

  bool ok() const { return cycle.empty() && row_sums.empty() && problems.empty(); }
  std::string summary(const std::vector<std::string>& names) const;
};

/// Discrete Bayesian belief network. A Bbn may hold an invalid model; call
/// validate() (or require_valid()) before querying it.
class Bbn {
 public:
  Bbn() = default;
  explicit Bbn(std::vector<BbnNode> nodes) : nodes_(std::move(nodes)) {}

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<BbnNode>& nodes() const noexcept { return nodes_; }
  const BbnNode& node(std::size_t i) const { return nodes_.at(i); }
  std::vector<std::string> names() const;
  std::size_t index_of(const std::string& name) const;

  /// Parent -> child pairs.
  std::set<std::pair<VariableId, VariableId>> edges() const;

  /// Number of joint configurations, saturating at UINT64_MAX.
  std::uint64_t configuration_count() const;

  /// CPT row index for `node` under the parent outcomes in `a`.
  std::size_t row_index(std::size_t node, const Assignment& a) const;

  /// Returns a copy with node `i` replaced.
  Bbn with_node(std::size_t i, BbnNode node) const;

  friend bool operator==(const Bbn&, const Bbn&) = default;

 private:
  std::vector<BbnNode> nodes_;
};

BbnReport validate(const Bbn& bbn);

/// Throws InvalidModelError carrying validate()'s summary.
void require_valid(const Bbn& bbn);

/// Product of the CPT entries selected by `a`. Throws RangeError when `a` is
/// not a total, in-range assignment.
double joint_probability(const Bbn& bbn, const Assignment& a);

/// Parents before children, ties broken by ascending index. Throws
/// InvalidModelError on a cycle or dangling parent.
std::vector<VariableId> topological_order(const Bbn& bbn);

/// Visits every joint configuration in mixed-radix order (variable 0 most
/// significant). Throws RangeError above `limit` configurations.
void for_each_assignment(const std::vector<std::size_t>& outcome_counts,
                         const std::function<void(const Assignment&)>& visit,
                         std::uint64_t limit = kMaxEnumeratedConfigurations);

/// Outcome count per variable.
std::vector<std::size_t> outcome_counts(const Bbn& bbn);

/// Exact marginals by enumeration; result[v][k] = P(v = k).
std::vector<std::vector<double>> marginals(const Bbn& bbn, std::uint64_t limit = kMaxEnumeratedConfigurations);

}  // namespace causal
