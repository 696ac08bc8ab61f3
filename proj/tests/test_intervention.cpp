#include "causal/intervention.hpp"

#include <gtest/gtest.h>

#include "causal/sem_bridge.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace causal {
namespace {

using testing::kA;
using testing::kB;
using testing::kD;
using testing::kM;
using testing::vars;
using Kind = StructuralChange::Kind;

TEST(ApplyChangeTest, AddingSeatBeltsReproducesTheSeatBeltModel) {
  const auto with_b = apply_change(testing::drunk_driving(), {Kind::kAddExogenousVariable, "b", {"b"}, {}});
  const auto edited = apply_change(with_b, {Kind::kReplaceEquation, "e3", {"m", "a", "b"}, {}});
  EXPECT_EQ(edited, testing::seat_belt());
}

TEST(ApplyChangeTest, NoOpReplacement) {
  EXPECT_EQ(apply_change(testing::drunk_driving(), {Kind::kReplaceEquation, "e1", {"d"}, {}}), testing::drunk_driving());
}

TEST(ApplyChangeTest, CuttingAnInputDropsTheEdge) {
  const auto edited = apply_change(testing::drunk_driving(), {Kind::kReplaceEquation, "e3", {"m"}, {}});
  const auto ordering = causal_ordering(edited);
  EXPECT_EQ(ordering.variable_edges, (std::set<VariableEdge>{{kD, kA}}));
}

TEST(ApplyChangeTest, Errors) {
  const auto m = testing::drunk_driving();
  // e3 := {a} leaves m in no equation.
  EXPECT_THROW(apply_change(m, {Kind::kReplaceEquation, "e3", {"a"}, {}}), NotSelfContainedError);
  EXPECT_THROW(apply_change(m, {Kind::kReplaceEquation, "e9", {"a"}, {}}), RangeError);
  EXPECT_THROW(apply_change(m, {Kind::kReplaceEquation, "e3", {"zz"}, {}}), RangeError);
  EXPECT_THROW(apply_change(m, {Kind::kAddExogenousVariable, "d", {"d"}, {}}), RangeError);
  EXPECT_THROW(apply_change(m, {Kind::kAddExogenousVariable, "b", {"a"}, {}}), RangeError);
  EXPECT_THROW(apply_change(m, {Kind::kSetBbnNode, "d", {}, {1.0}}), InvalidModelError);
  EXPECT_THROW(apply_change(m, {Kind::kReplaceEquation, "e3", {}, {}}), InvalidModelError);
}

TEST(AffectedVariablesTest, WorkedExamples) {
  const auto chain = causal_ordering(testing::drunk_driving());
  EXPECT_EQ(affected_variables(chain, EquationId{2}), vars({kM}));
  EXPECT_EQ(affected_variables(chain, EquationId{0}), vars({kD, kA, kM}));
  const auto belt = causal_ordering(testing::seat_belt());
  EXPECT_EQ(affected_variables(belt, EquationId{3}), vars({kB, kM}));
  EXPECT_THROW(affected_variables(belt, EquationId{4}), RangeError);
}

TEST(AffectedVariablesTest, FeedbackClusterMovesTogether) {
  const auto ordering = causal_ordering(testing::drunk_driving_nonstructural());
  EXPECT_EQ(affected_variables(ordering, EquationId{1}), vars({kM, kA, kD}));
}

double marginal(const Bbn& bbn, std::size_t var, std::size_t outcome) { return marginals(bbn)[var][outcome]; }

TEST(InterveneBbnTest, ForcingXMakesYFollowItsRow) {
  const auto after = intervene_bbn(testing::xy_network(), VariableId{0}, {1.0, 0.0});
  EXPECT_TRUE(validate(after).ok());
  EXPECT_NEAR(marginal(after, 1, 0), 0.7, 1e-12);
}

TEST(InterveneBbnTest, ForcingYLeavesXAlone) {
  const auto before = testing::xy_network();
  const auto after = intervene_bbn(before, VariableId{1}, {1.0, 0.0});
  EXPECT_TRUE(after.node(1).parents.empty());
  EXPECT_NEAR(marginal(after, 0, 0), 0.4, 1e-12);
  EXPECT_NEAR(marginal(after, 0, 1), 0.6, 1e-12);
}

TEST(InterveneBbnTest, CurrentMarginalOnRootIsANoOp) {
  const auto before = testing::xy_network();
  const auto after = intervene_bbn(before, VariableId{0}, {0.4, 0.6});
  for_each_assignment(outcome_counts(before), [&](const Assignment& a) {
    EXPECT_NEAR(joint_probability(before, a), joint_probability(after, a), 1e-12);
  });
}

TEST(InterveneBbnTest, Errors) {
  const auto bbn = testing::xy_network();
  EXPECT_THROW(intervene_bbn(bbn, VariableId{0}, {1.0}), RangeError);
  EXPECT_THROW(intervene_bbn(bbn, VariableId{0}, {0.5, 0.6}), RangeError);
  EXPECT_THROW(intervene_bbn(bbn, VariableId{5}, {0.5, 0.5}), RangeError);
  EXPECT_THROW(apply_change(bbn, {Kind::kSetBbnNode, "nope", {}, {0.5, 0.5}}), RangeError);
  EXPECT_EQ(apply_change(bbn, {Kind::kSetBbnNode, "y", {}, {1.0, 0.0}}), intervene_bbn(bbn, VariableId{1}, {1.0, 0.0}));
}

TEST(CompareMarginalsTest, Examples) {
  const auto before = testing::xy_network();
  const auto cut_y = compare_marginals(before, intervene_bbn(before, VariableId{1}, {1.0, 0.0}));
  EXPECT_LE(cut_y[0], 1e-12);
  EXPECT_NEAR(cut_y[1], 0.6, 1e-12);

  const auto same = compare_marginals(before, before);
  EXPECT_EQ(same, (std::vector<double>{0.0, 0.0}));

  const auto force_x = compare_marginals(before, intervene_bbn(before, VariableId{0}, {1.0, 0.0}));
  EXPECT_NEAR(force_x[1], 0.3, 1e-12);
  EXPECT_NEAR(force_x[0], 0.6, 1e-12);

  EXPECT_THROW(compare_marginals(before, testing::diamond_network()), InvalidModelError);
}

// --- properties ------------------------------------------------------------

std::vector<double> random_dist(testing::Rng& rng, std::size_t k) {
  if (testing::coin(rng, 0.3)) {
    std::vector<double> point(k, 0.0);
    point[testing::uniform_index(rng, 0, k - 1)] = 1.0;
    return point;
  }
  return testing::random_distribution(rng, k);
}

TEST(InterventionProperty, NonDescendantsKeepTheirMarginals) {
  testing::Rng rng(51);
  for (int trial = 0; trial < 150; ++trial) {
    const auto bbn = testing::random_bbn(rng, testing::uniform_index(rng, 1, 7), 3);
    const std::size_t target = testing::uniform_index(rng, 0, bbn.size() - 1);
    const auto after = intervene_bbn(bbn, VariableId{target}, random_dist(rng, bbn.node(target).outcomes.size()));
    const auto deviation = compare_marginals(bbn, after);
    const auto downstream = testing::oracle::descendants(bbn, target);
    for (std::size_t v = 0; v < bbn.size(); ++v) {
      if (!downstream.count(v)) ASSERT_LE(deviation[v], 1e-12);
    }
  }
}

TEST(InterventionProperty, AffectedVariablesAreExactlyTheDescendants) {
  testing::Rng rng(52);
  for (int trial = 0; trial < 150; ++trial) {
    const auto bbn = testing::random_bbn(rng, testing::uniform_index(rng, 1, 7), 3);
    const auto ordering = causal_ordering(sem_structure(bbn_to_sem(bbn)));
    const std::size_t target = testing::uniform_index(rng, 0, bbn.size() - 1);
    // sem_structure gives node v the equation at row v.
    const auto affected = affected_variables(ordering, EquationId{target});
    VariableSet expected;
    for (std::size_t v : testing::oracle::descendants(bbn, target)) expected.insert(VariableId{v});
    ASSERT_EQ(affected, expected);

    const auto after = intervene_bbn(bbn, VariableId{target}, random_dist(rng, bbn.node(target).outcomes.size()));
    const auto deviation = compare_marginals(bbn, after);
    for (std::size_t v = 0; v < bbn.size(); ++v) {
      if (!affected.count(VariableId{v})) ASSERT_LE(deviation[v], 1e-12);
    }
  }
}

TEST(InterventionProperty, EditsLeaveUnreachableClustersAlone) {
  testing::Rng rng(53);
  int applied = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = testing::uniform_index(rng, 2, 9);
    const auto m = testing::random_self_contained(rng, n, 0.25, trial % 2 == 0);
    const auto before = causal_ordering(m);
    const std::size_t eq = testing::uniform_index(rng, 0, n - 1);

    // New row: one variable of the equation's own cluster plus random others.
    // Edits that break self-containment are skipped.
    const auto& own = before.clusters[before.cluster_of(EquationId{eq})].variables;
    std::vector<std::string> new_vars{m.variable_names()[own.begin()->index]};
    for (std::size_t j = 0; j < n; ++j) {
      if (testing::coin(rng, 0.3)) new_vars.push_back(m.variable_names()[j]);
    }
    StructureMatrix edited = m;
    try {
      edited = apply_change(m, {Kind::kReplaceEquation, m.equation_labels()[eq], new_vars, {}});
    } catch (const NotSelfContainedError&) {
      continue;
    }
    ++applied;
    const auto after = causal_ordering(edited);
    const auto touched = affected_variables(before, EquationId{eq});
    for (const auto& c : before.clusters) {
      const bool reachable = std::any_of(c.variables.begin(), c.variables.end(),
                                         [&](VariableId v) { return touched.count(v) > 0; });
      if (reachable) continue;
      // Same cluster (equations and variables) exists after the edit, and its
      // inputs are unchanged.
      bool found = false;
      for (const auto& d : after.clusters) {
        if (d.equations == c.equations && d.variables == c.variables && d.order == c.order) found = true;
      }
      ASSERT_TRUE(found) << "trial " << trial;
    }
  }
  EXPECT_GT(applied, 50);
}

TEST(InterventionProperty, InterveningTwiceEqualsOnce) {
  testing::Rng rng(54);
  for (int trial = 0; trial < 50; ++trial) {
    const auto bbn = testing::random_bbn(rng, testing::uniform_index(rng, 1, 6), 3);
    const VariableId target{testing::uniform_index(rng, 0, bbn.size() - 1)};
    const auto dist = random_dist(rng, bbn.node(target.index).outcomes.size());
    const auto once = intervene_bbn(bbn, target, dist);
    ASSERT_EQ(intervene_bbn(once, target, dist), once);
  }
}

}  // namespace
}  // namespace causal
