#include <gtest/gtest.h>

#include <cmath>

#include "phishrev/forest.hpp"
#include "phishrev/tree.hpp"
#include "test_support.hpp"

using namespace phishrev;

namespace {

struct Data {
  Matrix x;
  std::vector<Label> y;
};

Data noisy(Rng& rng, std::size_t n, std::size_t d) {
  Data out{Matrix(n, d), {}};
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < d; ++j) {
      out.x(i, j) = std::round((uniform_unit(rng) * 4 - 2) * 4) / 4;  // repeated values
      s += out.x(i, j) * static_cast<double>(j % 3);
    }
    const bool phish = s + (uniform_unit(rng) - 0.5) > 0;
    out.y.push_back(phish ? Label::phishing : Label::legitimate);
  }
  return out;
}

// Plain recursive descent, independent of DecisionTree::predict.
Label walk(const DecisionTree& t, std::span<const double> x, int node = 0) {
  const auto& n = t.nodes[static_cast<std::size_t>(node)];
  if (n.feature < 0) return n.label;
  return walk(t, x, x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
}

}  // namespace

TEST(Tree, ImpurityClosedForms) {
  for (double p : {0.0, 0.25, 0.5, 1.0}) {
    EXPECT_NEAR(gini(p), 2 * p * (1 - p), 1e-12);
    const double h = (p <= 0 || p >= 1) ? 0.0 : -p * std::log2(p) - (1 - p) * std::log2(1 - p);
    EXPECT_NEAR(entropy(p), h, 1e-12);
  }
  EXPECT_NEAR(gini(0.25), 0.375, 1e-12);
  EXPECT_NEAR(entropy(0.25), 0.8112781244591328, 1e-12);
  EXPECT_NEAR(entropy(0.5), 1.0, 1e-12);
  EXPECT_NEAR(impurity(SplitCriterion::gini, 3, 1), 0.375, 1e-12);
  EXPECT_NEAR(impurity(SplitCriterion::entropy, 2, 2), 1.0, 1e-12);
  EXPECT_EQ(impurity(SplitCriterion::gini, 0, 0), 0.0);
}

TEST(Tree, StumpSplitsBetweenClusters) {
  Matrix x(6, 1);
  const double v[] = {1.0, 1.2, 1.1, 5.0, 5.3, 5.1};
  std::vector<Label> y;
  for (int i = 0; i < 6; ++i) {
    x(i, 0) = v[i];
    y.push_back(i < 3 ? Label::legitimate : Label::phishing);
  }
  const auto t = fit_tree(x, y, TreeParams{SplitCriterion::gini, 1, 2});
  ASSERT_FALSE(t.nodes[0].is_leaf());
  EXPECT_EQ(t.nodes[0].feature, 0);
  EXPECT_DOUBLE_EQ(t.nodes[0].threshold, (1.2 + 5.0) / 2);
  EXPECT_EQ(t.depth(), 1u);
}

TEST(Tree, PureNodeIsLeaf) {
  Matrix x(4, 2);
  for (std::size_t i = 0; i < 4; ++i) x(i, 0) = static_cast<double>(i);
  for (auto c : {SplitCriterion::gini, SplitCriterion::entropy}) {
    const auto t = fit_tree(x, std::vector<Label>(4, Label::phishing), TreeParams{c, std::nullopt, 2});
    ASSERT_EQ(t.nodes.size(), 1u);
    EXPECT_EQ(t.predict(x.row(0)), Label::phishing);
  }
}

TEST(Tree, TiesPreferLowerFeatureIndex) {
  Matrix x(4, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    x(i, 0) = static_cast<double>(i);
    x(i, 1) = static_cast<double>(i);
  }
  const std::vector<Label> y{Label::legitimate, Label::legitimate, Label::phishing, Label::phishing};
  const auto t = fit_tree(x, y, TreeParams{});
  EXPECT_EQ(t.nodes[0].feature, 0);
  EXPECT_DOUBLE_EQ(t.nodes[0].threshold, 1.5);
}

TEST(Tree, PredictionMatchesPathWalkAndLeafMajority) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = noisy(rng, 150, 5);
    for (auto crit : {SplitCriterion::gini, SplitCriterion::entropy}) {
      TreeParams p{crit, trial % 3 == 0 ? std::optional<int>{} : std::optional<int>{1 + trial % 6}, 2 + trial % 4};
      const auto t = fit_tree(d.x, d.y, p);
      if (p.max_depth) ASSERT_LE(t.depth(), static_cast<std::size_t>(*p.max_depth));
      std::vector<std::array<std::size_t, 2>> reached(t.nodes.size());
      for (std::size_t i = 0; i < d.x.rows(); ++i) {
        ASSERT_EQ(t.predict(d.x.row(i)), walk(t, d.x.row(i)));
        ++reached[t.leaf_index(d.x.row(i))][label_value(d.y[i])];
      }
      for (std::size_t n = 0; n < t.nodes.size(); ++n) {
        const auto& node = t.nodes[n];
        if (!node.is_leaf()) continue;
        ASSERT_EQ(reached[n], node.counts);
        const Label majority = node.counts[1] > node.counts[0] ? Label::phishing : Label::legitimate;
        ASSERT_EQ(node.label, majority);
        if (node.counts[0] == 0 || node.counts[1] == 0) {
          for (std::size_t i = 0; i < d.x.rows(); ++i)
            if (t.leaf_index(d.x.row(i)) == n) ASSERT_EQ(d.y[i], node.label);
        }
      }
      // off-sample points too
      for (int q = 0; q < 50; ++q) {
        std::vector<double> v(5);
        for (auto& e : v) e = uniform_unit(rng) * 5 - 2.5;
        ASSERT_EQ(t.predict(v), walk(t, v));
      }
    }
  }
}

TEST(Tree, MinSamplesSplitRespected) {
  Rng rng(13);
  const auto d = noisy(rng, 100, 3);
  const auto t = fit_tree(d.x, d.y, TreeParams{SplitCriterion::gini, std::nullopt, 10});
  for (const auto& n : t.nodes)
    if (!n.is_leaf()) EXPECT_GE(n.counts[0] + n.counts[1], 10u);
}

TEST(Tree, UnboundedTreeFitsDistinctPoints) {
  Rng rng(14);
  Matrix x(80, 2);
  std::vector<Label> y;
  for (std::size_t i = 0; i < 80; ++i) {
    x(i, 0) = static_cast<double>(i);
    x(i, 1) = uniform_unit(rng);
    y.push_back(uniform_index(rng, 2) ? Label::phishing : Label::legitimate);
  }
  const auto t = fit_tree(x, y, TreeParams{});
  for (std::size_t i = 0; i < 80; ++i) EXPECT_EQ(t.predict(x.row(i)), y[i]);
}

TEST(Tree, Errors) {
  Matrix x(2, 1);
  EXPECT_THROW(fit_tree(x, std::vector<Label>{Label::phishing}, TreeParams{}), std::invalid_argument);
  Matrix x2(2, 2);
  TreeBuildOptions o;
  o.max_features = 1;
  const std::vector<std::size_t> s{0, 1};
  EXPECT_THROW(fit_tree(x2, std::vector<Label>(2), s, o, nullptr), std::invalid_argument);
}

TEST(Forest, MaxFeatures) {
  EXPECT_EQ(default_max_features(87), 10u);
  EXPECT_EQ(default_max_features(100), 10u);
  EXPECT_EQ(default_max_features(1), 1u);
  EXPECT_EQ(default_max_features(2), 2u);
}

TEST(Forest, EvenVoteGoesToLegitimate) {
  auto leaf = [](Label l) {
    DecisionTree t;
    TreeNode n;
    n.label = l;
    t.nodes.push_back(n);
    return t;
  };
  RandomForest f;
  f.trees = {leaf(Label::phishing), leaf(Label::legitimate), leaf(Label::phishing), leaf(Label::legitimate)};
  const std::vector<double> x{0.0};
  EXPECT_EQ(f.votes(x), (std::array<std::size_t, 2>{2, 2}));
  EXPECT_EQ(f.predict(x), Label::legitimate);
  f.trees.push_back(leaf(Label::phishing));
  EXPECT_EQ(f.predict(x), Label::phishing);
}

TEST(Forest, DeterministicAndSeedSensitive) {
  Rng rng(15);
  const auto d = noisy(rng, 120, 6);
  const ForestParams p{15, std::nullopt, SplitCriterion::entropy};
  const auto a = fit_forest(d.x, d.y, p, 42);
  const auto b = fit_forest(d.x, d.y, p, 42);
  const auto c = fit_forest(d.x, d.y, p, 43);
  ASSERT_EQ(a.trees.size(), 15u);
  bool differs = false;
  for (std::size_t t = 0; t < 15; ++t) {
    EXPECT_EQ(a.trees[t].nodes, b.trees[t].nodes);
    differs = differs || a.trees[t].nodes != c.trees[t].nodes;
  }
  EXPECT_TRUE(differs);
  for (std::size_t i = 0; i < d.x.rows(); ++i) {
    const auto v = a.votes(d.x.row(i));
    EXPECT_EQ(v[0] + v[1], 15u);
  }
}

TEST(Forest, DepthLimit) {
  Rng rng(16);
  const auto d = noisy(rng, 120, 6);
  const auto f = fit_forest(d.x, d.y, ForestParams{5, 3, SplitCriterion::gini}, 1);
  for (const auto& t : f.trees) EXPECT_LE(t.depth(), 3u);
}
