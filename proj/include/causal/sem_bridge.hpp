#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "causal/bbn.hpp"
#include "causal/structure_matrix.hpp"

namespace causal {

/// Deterministic equation for one variable: given the parents' outcomes
/// (selecting a row) and the variable's own latent value u in (0, 1],
/// outcome j is chosen iff u lies in (c_{j-1}, c_j], with c_0 = 0.
struct ThresholdEquation {
  std::size_t target = 0;
  std::vector<std::size_t> parents;
  /// Cumulative thresholds c_1..c_k per parent configuration (same
  /// mixed-radix row order as CPTs); c_k is exactly 1.
  std::vector<std::vector<double>> thresholds;

  friend bool operator==(const ThresholdEquation&, const ThresholdEquation&) = default;
};

/// One threshold equation per variable, each with its own independent
/// Uniform(0, 1] latent. Construction validates the system and clamps each
/// final threshold to 1 (after checking it is within 1e-9 of 1).
class ThresholdEquationSystem {
 public:
  /// `equations` may come in any order but must have distinct targets
  /// covering 0..n-1. Throws InvalidModelError.
  ThresholdEquationSystem(std::vector<std::string> names, std::vector<ThresholdEquation> equations);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  /// Indexed by target.
  const std::vector<ThresholdEquation>& equations() const noexcept { return equations_; }
  const ThresholdEquation& equation(std::size_t target) const { return equations_.at(target); }
  std::size_t outcome_count(std::size_t var) const { return equations_.at(var).thresholds.front().size(); }
  std::vector<std::size_t> outcome_counts() const;
  /// Evaluation order: parents first, ties by ascending index.
  const std::vector<std::size_t>& evaluation_order() const noexcept { return order_; }
  std::size_t row_index(std::size_t target, const Assignment& a) const;

  friend bool operator==(const ThresholdEquationSystem& a, const ThresholdEquationSystem& b) {
    return a.names_ == b.names_ && a.equations_ == b.equations_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<ThresholdEquation> equations_;
  std::vector<std::size_t> order_;
};

/// Builds the threshold system whose rows are the cumulative sums of the
/// network's CPT rows. Throws InvalidModelError for an invalid network.
ThresholdEquationSystem bbn_to_sem(const Bbn& bbn);

/// Outcome selected by a single cumulative-threshold row for latent `u`.
std::size_t select_outcome(const std::vector<double>& thresholds, double u);

/// Evaluates every equation for one latent vector (indexed by variable).
/// Throws RangeError for a latent outside (0, 1] or a size mismatch.
Assignment evaluate(const ThresholdEquationSystem& sem, const std::vector<double>& latents);

/// Probability of `a`: product of the selected interval lengths.
double sem_joint(const ThresholdEquationSystem& sem, const Assignment& a);

/// Max over all joint configurations of |P_bbn - P_sem|. Throws RangeError
/// above 2^20 configurations and InvalidModelError when the outcome spaces
/// differ.
double check_equivalence(const Bbn& bbn, const ThresholdEquationSystem& sem);

/// Tallies of sampled assignments.
struct EmpiricalDistribution {
  std::map<Assignment, std::uint64_t> tallies;
  std::uint64_t count = 0;

  double frequency(const Assignment& a) const;
};

/// Draws `count` latent vectors from std::mt19937_64 seeded with `seed` and
/// tallies the evaluated assignments. Latents are drawn per sample in
/// variable-index order as ((x >> 11) + 1) * 2^-53. Throws RangeError for
/// count == 0.
EmpiricalDistribution sample(const ThresholdEquationSystem& sem, std::uint64_t seed, std::uint64_t count);

/// Maps one 64-bit generator output onto (0, 1].
double latent_from_bits(std::uint64_t bits);

/// Structure matrix of the system: equation i (labelled "e<i+1>") contains
/// its target and the target's parents.
StructureMatrix sem_structure(const ThresholdEquationSystem& sem);

/// Converts the network, orders the resulting structure, and checks that
/// every cluster has degree one and the recovered variable edges are exactly
/// the network's arcs.
bool roundtrip_check(const Bbn& bbn);

}  // namespace causal
