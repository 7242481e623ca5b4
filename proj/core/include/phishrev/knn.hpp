#pragma once

#include <span>
#include <vector>

#include "phishrev/dataset.hpp"
#include "phishrev/matrix.hpp"
#include "phishrev/params.hpp"

namespace phishrev {

/// Lazy learner: keeps the scaled training matrix verbatim.
struct KnnModel {
  KnnParams params;
  Matrix train;
  std::vector<Label> labels;

  Label predict(std::span<const double> x) const;
};

double distance(KnnMetric metric, std::span<const double> a, std::span<const double> b);

KnnModel fit_knn(Matrix x, std::vector<Label> y, const KnnParams& params);

}  // namespace phishrev
