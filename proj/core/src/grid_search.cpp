#include <array>

#include "phishrev/classifiers.hpp"

namespace phishrev {

GridSearchResult grid_search(const HyperGrid& grid, std::span<const FeatureRecord> records,
                             const std::vector<IdList>& folds, std::uint64_t seed, const TrainOptions& options) {
  const auto candidates = effective_candidates(grid.candidates());
  if (candidates.empty()) throw ModelError("grid_search: empty grid");
  if (folds.size() < 2) throw ModelError("grid_search: need at least two folds");

  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::array<std::size_t, 2> seen{};
    for (auto id : folds[f]) ++seen[label_value(record_at(records, id).label)];
    if (seen[0] == 0 || seen[1] == 0)
      throw ModelError("grid_search: fold " + std::to_string(f) + " contains a single class");
  }

  std::vector<IdList> fold_train(folds.size());
  for (std::size_t f = 0; f < folds.size(); ++f)
    for (std::size_t g = 0; g < folds.size(); ++g)
      if (g != f) fold_train[f].insert(fold_train[f].end(), folds[g].begin(), folds[g].end());

  GridSearchResult result;
  for (const auto& params : candidates) {
    CandidateScore score;
    score.params = params;
    double total = 0.0;
    for (std::size_t f = 0; f < folds.size(); ++f) {
      const auto model = train(params, records, fold_train[f], seed, options);
      const double acc = accuracy(model, records, folds[f]);
      score.fold_accuracy.push_back(acc);
      total += acc;
    }
    score.mean_accuracy = total / static_cast<double>(folds.size());
    result.scores.push_back(std::move(score));
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < result.scores.size(); ++i)
    if (result.scores[i].mean_accuracy > result.scores[best].mean_accuracy) best = i;
  result.best = result.scores[best].params;
  result.cv_accuracy = result.scores[best].mean_accuracy;
  return result;
}

}  // namespace phishrev
