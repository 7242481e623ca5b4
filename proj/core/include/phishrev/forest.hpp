#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "phishrev/tree.hpp"

namespace phishrev {

struct RandomForest {
  std::vector<DecisionTree> trees;

  std::array<std::size_t, 2> votes(std::span<const double> x) const;
  /// Majority vote; an even split goes to legitimate.
  Label predict(std::span<const double> x) const;
};

/// ceil(sqrt(d)) candidate features per split.
std::size_t default_max_features(std::size_t n_features);

/// Tree t is grown from a bootstrap drawn with derive_seed(seed, t).
RandomForest fit_forest(const Matrix& x, std::span<const Label> y, const ForestParams& params,
                        std::uint64_t seed);

}  // namespace phishrev
