#include "phishrev/forest.hpp"

#include <cmath>
#include <stdexcept>

namespace phishrev {

std::size_t default_max_features(std::size_t n_features) {
  auto m = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n_features))));
  return std::max<std::size_t>(1, m);
}

std::array<std::size_t, 2> RandomForest::votes(std::span<const double> x) const {
  std::array<std::size_t, 2> v{};
  for (const auto& t : trees) ++v[label_value(t.predict(x))];
  return v;
}

Label RandomForest::predict(std::span<const double> x) const {
  const auto v = votes(x);
  return v[1] > v[0] ? Label::phishing : Label::legitimate;
}

RandomForest fit_forest(const Matrix& x, std::span<const Label> y, const ForestParams& params,
                        std::uint64_t seed) {
  if (x.rows() == 0) throw std::invalid_argument("fit_forest: empty training set");
  if (params.n_estimators <= 0) throw std::invalid_argument("fit_forest: n_estimators must be positive");

  TreeBuildOptions options;
  options.criterion = params.criterion;
  options.max_depth = params.max_depth;
  options.min_samples_split = 2;
  options.max_features = default_max_features(x.cols());

  RandomForest forest;
  forest.trees.reserve(static_cast<std::size_t>(params.n_estimators));
  const std::size_t n = x.rows();
  std::vector<std::size_t> bootstrap(n);
  for (int t = 0; t < params.n_estimators; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    for (auto& s : bootstrap) s = static_cast<std::size_t>(uniform_index(rng, n));
    forest.trees.push_back(fit_tree(x, y, bootstrap, options, &rng));
  }
  return forest;
}

}  // namespace phishrev
