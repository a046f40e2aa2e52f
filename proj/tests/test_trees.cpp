#include <gtest/gtest.h>

#include <memory>

#include "proxyshap/errors.hpp"
#include "proxyshap/numeric.hpp"
#include "proxyshap/trees.hpp"

using namespace proxyshap;

namespace {

TreeNode split(int feature, int left, int right, double threshold = 0.5) {
  TreeNode node;
  node.feature = feature;
  node.left = left;
  node.right = right;
  node.threshold = threshold;
  return node;
}

TreeNode leaf(double value) {
  TreeNode node;
  node.leaf_value = value;
  return node;
}

// Random complete-ish tree over n features, repeated features allowed.
std::vector<TreeNode> random_tree(std::size_t n, std::size_t depth, Rng& rng) {
  std::vector<TreeNode> nodes;
  auto build = [&](auto&& self, std::size_t d) -> int {
    const int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    if (d == depth || rng.uniform01() < 0.15) {
      nodes[static_cast<std::size_t>(id)] = leaf(2.0 * rng.uniform01() - 1.0);
      return id;
    }
    const int feature = static_cast<int>(rng.uniform_below(n));
    const int l = self(self, d + 1);
    const int r = self(self, d + 1);
    nodes[static_cast<std::size_t>(id)] = split(feature, l, r);
    return id;
  };
  build(build, 0);
  return nodes;
}

}  // namespace

TEST(Trees, SingleLeafTree) {
  TreeEnsemble e;
  e.n = 3;
  e.base_score = 0.5;
  e.trees.push_back(Tree::from_nodes({leaf(2.0)}, 3));
  ASSERT_EQ(e.trees[0].leaves().size(), 1u);
  EXPECT_TRUE(e.trees[0].leaves()[0].left.empty());
  EXPECT_TRUE(e.trees[0].leaves()[0].right.empty());
  for (std::uint64_t m = 0; m < 8; ++m) EXPECT_EQ(predict(e, Coalition::from_mask(3, m)), 2.5);
}

TEST(Trees, DepthOneSplit) {
  const auto tree = Tree::from_nodes({split(0, 1, 2), leaf(-1.0), leaf(4.0)}, 2);
  ASSERT_EQ(tree.leaves().size(), 2u);
  EXPECT_EQ(tree.leaves()[0].left, Coalition::from_members(2, {0}));
  EXPECT_TRUE(tree.leaves()[0].right.empty());
  EXPECT_EQ(tree.leaves()[0].value, -1.0);
  EXPECT_TRUE(tree.leaves()[1].left.empty());
  EXPECT_EQ(tree.leaves()[1].right, Coalition::from_members(2, {0}));
  EXPECT_EQ(tree.leaves()[1].value, 4.0);
}

TEST(Trees, RepeatedSplitCollapsesOrIsDropped) {
  // Right on 3 twice, then either side of the second split.
  FlattenReport report;
  const auto tree = Tree::from_nodes({split(3, 1, 2), leaf(0.0), split(3, 3, 4), leaf(7.0), leaf(9.0)}, 5, &report);
  EXPECT_EQ(report.leaves, 3u);
  EXPECT_EQ(report.unreachable, 1u);
  ASSERT_EQ(tree.leaves().size(), 2u);
  EXPECT_EQ(tree.leaves()[1].right, Coalition::from_members(5, {3}));
  EXPECT_TRUE(tree.leaves()[1].left.empty());
  EXPECT_EQ(tree.leaves()[1].value, 9.0);
}

TEST(Trees, LeafIndicatorSemantics) {
  const Leaf l{Coalition::from_members(3, {1}), Coalition::from_members(3, {2}), 5.0};
  TreeEnsemble e;
  e.n = 3;
  e.trees.push_back(Tree::from_leaves({l}));
  EXPECT_EQ(predict(e, Coalition::from_members(3, {2})), 5.0);
  EXPECT_EQ(predict(e, Coalition::from_members(3, {1, 2})), 0.0);
}

TEST(Trees, TreesAreAdditive) {
  TreeEnsemble e;
  e.n = 2;
  e.trees.push_back(Tree::from_nodes({leaf(1.0)}, 2));
  e.trees.push_back(Tree::from_nodes({leaf(1.0)}, 2));
  for (std::uint64_t m = 0; m < 4; ++m) EXPECT_EQ(predict(e, Coalition::from_mask(2, m)), 2.0);
}

TEST(Trees, ThresholdsOutsideTheUnitIntervalArePassThrough) {
  // τ ≤ 0 sends every binary input right; τ > 1 sends every input left.
  const auto right_only = Tree::from_nodes({split(0, 1, 2, 0.0), leaf(1.0), leaf(2.0)}, 1);
  ASSERT_EQ(right_only.leaves().size(), 1u);
  EXPECT_EQ(right_only.predict(Coalition(1)), 2.0);
  EXPECT_EQ(right_only.predict_nodes(Coalition(1)), 2.0);
  const auto left_only = Tree::from_nodes({split(0, 1, 2, 1.5), leaf(1.0), leaf(2.0)}, 1);
  EXPECT_EQ(left_only.predict(Coalition::full(1)), 1.0);
  EXPECT_EQ(left_only.predict_nodes(Coalition::full(1)), 1.0);
}

TEST(Trees, LeavesPartitionTheCoalitionSpace) {
  Rng rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 6;
    const auto tree = Tree::from_nodes(random_tree(n, 5, rng), n);
    for (std::uint64_t m = 0; m < 64; ++m) {
      const auto T = Coalition::from_mask(n, m);
      std::size_t hits = 0;
      for (const auto& l : tree.leaves()) hits += l.reaches(T);
      EXPECT_EQ(hits, 1u);
    }
  }
}

TEST(Trees, LeafAndNodeFormsPredictTheSame) {
  Rng rng(23);
  const std::size_t n = 70;
  TreeEnsemble e;
  e.n = n;
  e.base_score = 0.25;
  for (int t = 0; t < 10; ++t) e.trees.push_back(Tree::from_nodes(random_tree(n, 7, rng), n));
  for (int i = 0; i < 10000; ++i) {
    Coalition T(n);
    for (std::size_t j = 0; j < n; ++j)
      if (rng.uniform01() < 0.5) T.insert(j);
    double walked = e.base_score;
    for (const auto& tree : e.trees) walked += tree.predict_nodes(T);
    EXPECT_NEAR(predict(e, T), walked, 1e-12);
  }
}

TEST(Trees, JsonRoundTrip) {
  const std::string text =
      R"({"n":3,"base_score":0.5,"trees":[{"nodes":[{"feature":1,"left":1,"right":2},{"leaf":-1.5},)"
      R"({"feature":2,"threshold":0.25,"left":3,"right":4},{"leaf":2},{"leaf":3}]}]})";
  const auto e = parse_ensemble(text);
  EXPECT_EQ(e.n, 3u);
  EXPECT_EQ(e.leaf_count(), 3u);
  EXPECT_EQ(e.max_leaf_depth(), 2u);
  EXPECT_EQ(predict(e, Coalition::from_members(3, {1})), 2.5);
  EXPECT_EQ(predict(e, Coalition::from_members(3, {1, 2})), 3.5);
  const auto again = parse_ensemble(serialize_ensemble(e));
  for (std::uint64_t m = 0; m < 8; ++m)
    EXPECT_EQ(predict(again, Coalition::from_mask(3, m)), predict(e, Coalition::from_mask(3, m)));
  EXPECT_EQ(serialize_ensemble(again), serialize_ensemble(e));
}

TEST(Trees, MalformedModelsAreRejected) {
  EXPECT_THROW(parse_ensemble("{not json"), ParseError);
  EXPECT_THROW(parse_ensemble(R"({"n":2,"trees":[{"nodes":[{"feature":5,"left":1,"right":2},{"leaf":0},{"leaf":1}]}]})"),
               ParseError);
  EXPECT_THROW(parse_ensemble(R"({"n":2,"trees":[{"nodes":[{"feature":0,"left":1,"right":7},{"leaf":0}]}]})"),
               ParseError);
  EXPECT_THROW(parse_ensemble(R"({"n":2,"trees":[{"nodes":[{"feature":0,"left":1,"right":1},{"leaf":0}]}]})"),
               ParseError);
  EXPECT_THROW(parse_ensemble(R"({"n":2,"trees":[{"nodes":[]}]})"), ParseError);
  EXPECT_THROW(load_ensemble("/nonexistent/model.json"), IoError);
}

TEST(Trees, EnsemblesBuiltFromGamesReproduceThem) {
  const auto game = random_sparse_moebius(8, 15, 3, 4);
  const auto chain = ensemble_from_moebius(game);
  const auto complete = ensemble_from_game(game);
  EXPECT_EQ(complete.trees.size(), 1u);
  EXPECT_EQ(complete.leaf_count(), 256u);
  for (std::uint64_t m = 0; m < 256; ++m) {
    const auto T = Coalition::from_mask(8, m);
    EXPECT_NEAR(predict(chain, T), game.value(T), 1e-12);
    EXPECT_NEAR(predict(complete, T), game.value(T), 1e-12);
  }
  const TreeGame tg(std::make_shared<TreeEnsemble>(chain));
  EXPECT_NEAR(tg.value(Coalition::full(8)), game.value(Coalition::full(8)), 1e-12);
}
