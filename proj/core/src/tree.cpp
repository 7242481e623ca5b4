#include "phishrev/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace phishrev {

double gini(double p) { return 2.0 * p * (1.0 - p); }

double entropy(double p) {
  auto term = [](double q) { return q > 0.0 ? -q * std::log2(q) : 0.0; };
  return term(p) + term(1.0 - p);
}

double impurity(SplitCriterion criterion, double n0, double n1) {
  const double n = n0 + n1;
  if (n <= 0.0) return 0.0;
  const double p = n1 / n;
  return criterion == SplitCriterion::gini ? gini(p) : entropy(p);
}

std::size_t DecisionTree::leaf_index(std::span<const double> x) const {
  if (nodes.empty()) throw std::logic_error("DecisionTree: empty tree");
  std::size_t at = 0;
  while (!nodes[at].is_leaf()) {
    const auto& node = nodes[at];
    at = static_cast<std::size_t>(x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                                              : node.right);
  }
  return at;
}

Label DecisionTree::predict(std::span<const double> x) const { return nodes[leaf_index(x)].label; }

std::size_t DecisionTree::depth() const {
  if (nodes.empty()) return 0;
  std::size_t best = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [at, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    if (!nodes[at].is_leaf()) {
      stack.emplace_back(static_cast<std::size_t>(nodes[at].left), d + 1);
      stack.emplace_back(static_cast<std::size_t>(nodes[at].right), d + 1);
    }
  }
  return best;
}

namespace {

constexpr double kMinGain = 1e-12;

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double gain = kMinGain;
};

Split best_split(const Matrix& x, std::span<const Label> y, const std::vector<std::size_t>& samples,
                 const std::array<std::size_t, 2>& counts, std::span<const std::size_t> features,
                 SplitCriterion criterion) {
  const double n = static_cast<double>(samples.size());
  const double parent = impurity(criterion, static_cast<double>(counts[0]), static_cast<double>(counts[1]));
  Split best;
  std::vector<std::pair<double, int>> column(samples.size());
  for (auto f : features) {
    for (std::size_t i = 0; i < samples.size(); ++i)
      column[i] = {x(samples[i], f), label_value(y[samples[i]])};
    std::sort(column.begin(), column.end());

    double left[2] = {0.0, 0.0};
    for (std::size_t i = 0; i + 1 < column.size(); ++i) {
      left[column[i].second] += 1.0;
      if (column[i].first == column[i + 1].first) continue;
      const double nl = static_cast<double>(i + 1);
      const double nr = n - nl;
      const double right0 = static_cast<double>(counts[0]) - left[0];
      const double right1 = static_cast<double>(counts[1]) - left[1];
      const double child = (nl / n) * impurity(criterion, left[0], left[1]) +
                           (nr / n) * impurity(criterion, right0, right1);
      const double gain = parent - child;
      if (gain > best.gain) {
        double thr = column[i].first + (column[i + 1].first - column[i].first) / 2.0;
        if (!(thr < column[i + 1].first)) thr = column[i].first;
        best = {static_cast<int>(f), thr, gain};
      }
    }
  }
  return best;
}

}  // namespace

DecisionTree fit_tree(const Matrix& x, std::span<const Label> y, std::span<const std::size_t> samples,
                      const TreeBuildOptions& options, Rng* rng) {
  if (samples.empty()) throw std::invalid_argument("fit_tree: empty training set");
  if (y.size() != x.rows()) throw std::invalid_argument("fit_tree: label count mismatch");
  const std::size_t d = x.cols();
  const bool subsample = options.max_features > 0 && options.max_features < d;
  if (subsample && rng == nullptr) throw std::invalid_argument("fit_tree: feature subsampling needs an rng");

  std::vector<std::size_t> all_features(d);
  std::iota(all_features.begin(), all_features.end(), std::size_t{0});

  DecisionTree tree;
  struct Pending {
    std::size_t node;
    std::vector<std::size_t> samples;
    int depth;
  };
  tree.nodes.emplace_back();
  std::vector<Pending> stack;
  stack.push_back({0, std::vector<std::size_t>(samples.begin(), samples.end()), 0});

  while (!stack.empty()) {
    Pending job = std::move(stack.back());
    stack.pop_back();

    std::array<std::size_t, 2> counts{};
    for (auto s : job.samples) ++counts[label_value(y[s])];
    {
      auto& node = tree.nodes[job.node];
      node.counts = counts;
      node.label = counts[1] > counts[0] ? Label::phishing : Label::legitimate;
    }

    const bool pure = counts[0] == 0 || counts[1] == 0;
    const bool depth_capped = options.max_depth && job.depth >= *options.max_depth;
    if (pure || depth_capped || job.samples.size() < options.min_samples_split) continue;

    std::vector<std::size_t> features;
    if (subsample) {
      std::vector<std::size_t> pool = all_features;
      for (std::size_t i = 0; i < options.max_features; ++i) {
        const auto j = i + static_cast<std::size_t>(uniform_index(*rng, d - i));
        std::swap(pool[i], pool[j]);
      }
      features.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(options.max_features));
      std::sort(features.begin(), features.end());
    } else {
      features = all_features;
    }

    const Split split = best_split(x, y, job.samples, counts, features, options.criterion);
    if (split.feature < 0) continue;

    std::vector<std::size_t> left_samples;
    std::vector<std::size_t> right_samples;
    for (auto s : job.samples) {
      (x(s, static_cast<std::size_t>(split.feature)) <= split.threshold ? left_samples : right_samples)
          .push_back(s);
    }

    const auto left = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    const auto right = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    auto& node = tree.nodes[job.node];
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.left = left;
    node.right = right;

    // Right pushed first so the left subtree is expanded (and draws from rng) first.
    stack.push_back({static_cast<std::size_t>(right), std::move(right_samples), job.depth + 1});
    stack.push_back({static_cast<std::size_t>(left), std::move(left_samples), job.depth + 1});
  }
  return tree;
}

DecisionTree fit_tree(const Matrix& x, std::span<const Label> y, const TreeParams& params) {
  std::vector<std::size_t> samples(x.rows());
  std::iota(samples.begin(), samples.end(), std::size_t{0});
  TreeBuildOptions options;
  options.criterion = params.criterion;
  options.max_depth = params.max_depth;
  options.min_samples_split = static_cast<std::size_t>(params.min_samples_split);
  return fit_tree(x, y, samples, options);
}

}  // namespace phishrev
