#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "phishrev/dataset.hpp"
#include "phishrev/matrix.hpp"
#include "phishrev/params.hpp"
#include "phishrev/random.hpp"

namespace phishrev {

double gini(double p);
double entropy(double p);
/// Impurity of a node holding n0 legitimate and n1 phishing samples.
double impurity(SplitCriterion criterion, double n0, double n1);

/// Internal nodes send x[feature] <= threshold to the left child.
struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  Label label = Label::legitimate;  // majority label, ties to legitimate
  std::array<std::size_t, 2> counts{};

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  Label predict(std::span<const double> x) const;
  std::size_t leaf_index(std::span<const double> x) const;
  std::size_t depth() const;
};

struct TreeBuildOptions {
  SplitCriterion criterion = SplitCriterion::gini;
  std::optional<int> max_depth;
  std::size_t min_samples_split = 2;
  /// Features examined per node; 0 means all of them.
  std::size_t max_features = 0;
};

/// CART on the rows listed in `samples` (repeats allowed, e.g. a bootstrap).
/// `rng` is required when max_features restricts the candidate set.
DecisionTree fit_tree(const Matrix& x, std::span<const Label> y, std::span<const std::size_t> samples,
                      const TreeBuildOptions& options, Rng* rng = nullptr);

DecisionTree fit_tree(const Matrix& x, std::span<const Label> y, const TreeParams& params);

}  // namespace phishrev
