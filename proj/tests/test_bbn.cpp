#include "causal/bbn.hpp"

#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/generators.hpp"

namespace causal {
namespace {

TEST(BbnValidateTest, XyNetworkIsValid) {
  const auto report = validate(testing::xy_network());
  EXPECT_TRUE(report.ok()) << report.summary(testing::xy_network().names());
}

TEST(BbnValidateTest, TwoNodeCycle) {
  const Bbn bbn({BbnNode{"x", {"0", "1"}, {1}, {{0.5, 0.5}, {0.5, 0.5}}},
                 BbnNode{"y", {"0", "1"}, {0}, {{0.5, 0.5}, {0.5, 0.5}}}});
  const auto report = validate(bbn);
  EXPECT_EQ(report.cycle, (std::vector<std::size_t>{0, 1}));
  EXPECT_FALSE(report.ok());
  EXPECT_THROW(topological_order(bbn), InvalidModelError);
}

TEST(BbnValidateTest, RowSumDeviation) {
  const Bbn bbn({BbnNode{"x", {"0", "1"}, {}, {{0.7, 0.2}}}});
  const auto report = validate(bbn);
  ASSERT_EQ(report.row_sums.size(), 1u);
  EXPECT_EQ(report.row_sums[0].node, 0u);
  EXPECT_EQ(report.row_sums[0].row, 0u);
  EXPECT_NEAR(report.row_sums[0].deviation, 0.1, 1e-12);
}

TEST(BbnValidateTest, ReportsDimensionProblems) {
  const Bbn wrong_rows({BbnNode{"x", {"0", "1"}, {}, {{0.5, 0.5}}},
                        BbnNode{"y", {"0", "1"}, {0}, {{0.5, 0.5}}}});
  EXPECT_EQ(validate(wrong_rows).problems.size(), 1u);

  const Bbn wrong_width({BbnNode{"x", {"0", "1", "2"}, {}, {{0.5, 0.5}}}});
  EXPECT_FALSE(validate(wrong_width).ok());

  const Bbn dangling({BbnNode{"x", {"0", "1"}, {4}, {{0.5, 0.5}}}});
  EXPECT_FALSE(validate(dangling).ok());

  const Bbn one_outcome({BbnNode{"x", {"only"}, {}, {{1.0}}}});
  EXPECT_FALSE(validate(one_outcome).ok());

  const Bbn negative({BbnNode{"x", {"0", "1"}, {}, {{1.5, -0.5}}}});
  EXPECT_FALSE(validate(negative).ok());

  const Bbn dup_parent({BbnNode{"x", {"0", "1"}, {}, {{0.5, 0.5}}},
                        BbnNode{"y", {"0", "1"}, {0, 0}, {{1, 0}, {1, 0}, {1, 0}, {1, 0}}}});
  EXPECT_FALSE(validate(dup_parent).ok());
}

TEST(JointProbabilityTest, XyNetwork) {
  const auto bbn = testing::xy_network();
  EXPECT_NEAR(joint_probability(bbn, {0, 0}), 0.28, 1e-15);
  EXPECT_NEAR(joint_probability(bbn, {1, 1}), 0.48, 1e-15);
  EXPECT_NEAR(joint_probability(bbn, {1, 0}), 0.12, 1e-15);
  EXPECT_THROW(joint_probability(bbn, {0}), RangeError);
  EXPECT_THROW(joint_probability(bbn, {0, 2}), RangeError);
}

TEST(JointProbabilityTest, MixedRadixRowOrderFirstParentMostSignificant) {
  const auto bbn = testing::diamond_network();
  // d has parents (b, c); b = 1, c = 0 selects row 2.
  EXPECT_EQ(bbn.row_index(3, {0, 1, 0, 0}), 2u);
  EXPECT_NEAR(joint_probability(bbn, {0, 1, 0, 1}), 0.3 * 0.1 * 0.2 * 0.65, 1e-15);
}

TEST(TopologicalOrderTest, Examples) {
  EXPECT_EQ(topological_order(testing::xy_network()), (std::vector<VariableId>{VariableId{0}, VariableId{1}}));
  const Bbn isolated({BbnNode{"c", {"0", "1"}, {}, {{1, 0}}}, BbnNode{"a", {"0", "1"}, {}, {{1, 0}}},
                      BbnNode{"b", {"0", "1"}, {}, {{1, 0}}}});
  EXPECT_EQ(topological_order(isolated), (std::vector<VariableId>{VariableId{0}, VariableId{1}, VariableId{2}}));
  EXPECT_EQ(topological_order(testing::diamond_network()),
            (std::vector<VariableId>{VariableId{0}, VariableId{1}, VariableId{2}, VariableId{3}}));
  // Parent listed after child in the node list.
  const Bbn reversed({BbnNode{"y", {"0", "1"}, {1}, {{1, 0}, {0, 1}}}, BbnNode{"x", {"0", "1"}, {}, {{1, 0}}}});
  EXPECT_EQ(topological_order(reversed), (std::vector<VariableId>{VariableId{1}, VariableId{0}}));
}

TEST(EnumerationTest, RespectsLimit) {
  EXPECT_THROW(for_each_assignment(std::vector<std::size_t>(21, 2), [](const Assignment&) {}), RangeError);
  std::size_t visits = 0;
  for_each_assignment({2, 3}, [&](const Assignment&) { ++visits; });
  EXPECT_EQ(visits, 6u);
}

TEST(BbnProperty, JointSumsToOneAndValidateMatchesTopologicalOrder) {
  testing::Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto bbn = testing::random_bbn(rng, testing::uniform_index(rng, 1, 7), 4);
    ASSERT_TRUE(validate(bbn).ok());
    EXPECT_NO_THROW(topological_order(bbn));
    double total = 0.0;
    for_each_assignment(outcome_counts(bbn), [&](const Assignment& a) { total += joint_probability(bbn, a); });
    ASSERT_NEAR(total, 1.0, 1e-9);

    const auto order = topological_order(bbn);
    std::vector<std::size_t> position(bbn.size());
    for (std::size_t k = 0; k < order.size(); ++k) position[order[k].index] = k;
    for (const auto& [parent, child] : bbn.edges()) ASSERT_LT(position[parent.index], position[child.index]);
  }
}

TEST(BbnProperty, CyclicNetworksFailBothValidateAndTopologicalOrder) {
  testing::Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    auto bbn = testing::random_bbn(rng, testing::uniform_index(rng, 2, 6), 3, 3, 0.7);
    const auto edges = bbn.edges();
    if (edges.empty()) continue;
    // Reverse-close one arc: make the parent depend on its child.
    const auto [parent, child] = *std::next(edges.begin(), static_cast<long>(testing::uniform_index(rng, 0, edges.size() - 1)));
    BbnNode node = bbn.node(parent.index);
    node.parents.push_back(child.index);
    node.cpt.clear();
    std::size_t rows = 1;
    for (std::size_t p : node.parents) rows *= bbn.node(p).outcomes.size();
    for (std::size_t r = 0; r < rows; ++r) node.cpt.push_back(testing::random_distribution(rng, node.outcomes.size()));
    bbn = bbn.with_node(parent.index, node);
    ASSERT_FALSE(validate(bbn).cycle.empty());
    ASSERT_THROW(topological_order(bbn), InvalidModelError);
  }
}

TEST(BbnProperty, JointInvariantUnderOutcomeRelabelling) {
  testing::Rng rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const auto bbn = testing::random_bbn(rng, testing::uniform_index(rng, 1, 5), 3);
    std::vector<BbnNode> renamed = bbn.nodes();
    for (auto& node : renamed) {
      for (auto& label : node.outcomes) label = "renamed_" + label;
    }
    const Bbn other(renamed);
    for_each_assignment(outcome_counts(bbn), [&](const Assignment& a) {
      ASSERT_EQ(joint_probability(bbn, a), joint_probability(other, a));
    });
  }
}

}  // namespace
}  // namespace causal
