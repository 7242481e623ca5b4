#include "phishrev/knn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace phishrev {

double distance(KnnMetric metric, std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  if (metric == KnnMetric::manhattan) {
    for (std::size_t j = 0; j < a.size(); ++j) acc += std::abs(a[j] - b[j]);
    return acc;
  }
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    acc += d * d;
  }
  return std::sqrt(acc);
}

KnnModel fit_knn(Matrix x, std::vector<Label> y, const KnnParams& params) {
  if (x.rows() == 0) throw std::invalid_argument("fit_knn: empty training set");
  if (y.size() != x.rows()) throw std::invalid_argument("fit_knn: label count mismatch");
  if (params.k <= 0) throw std::invalid_argument("fit_knn: k must be positive");
  return KnnModel{params, std::move(x), std::move(y)};
}

Label KnnModel::predict(std::span<const double> x) const {
  const std::size_t n = train.rows();
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(params.k), n);

  // (distance, index) so that equal distances resolve to the lower index.
  std::vector<std::pair<double, std::size_t>> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = {distance(params.metric, train.row(i), x), i};
  std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k - 1), d.end());
  std::sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k));

  double votes[2] = {0.0, 0.0};
  if (params.weights == KnnWeights::distance && d.front().first == 0.0) {
    // Exact matches dominate: only zero-distance neighbours vote.
    for (std::size_t i = 0; i < k && d[i].first == 0.0; ++i) votes[label_value(labels[d[i].second])] += 1.0;
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      const double w = params.weights == KnnWeights::uniform ? 1.0 : 1.0 / d[i].first;
      votes[label_value(labels[d[i].second])] += w;
    }
  }
  return votes[1] > votes[0] ? Label::phishing : Label::legitimate;
}

}  // namespace phishrev
