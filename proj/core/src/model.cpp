#include <cmath>

#include "phishrev/classifiers.hpp"

namespace phishrev {

Matrix design_matrix(std::span<const FeatureRecord> records, std::span<const InstanceId> ids,
                     const ScalerStats& scaler) {
  Matrix x(0, scaler.dimension());
  for (auto id : ids) {
    const auto scaled = scaler.apply(record_at(records, id).features);
    for (double v : scaled)
      if (!std::isfinite(v)) throw ModelError("non-finite feature after scaling (instance " + std::to_string(id) + ")");
    x.append_row(scaled);
  }
  return x;
}

TrainedModel train(const ModelParams& params, std::span<const FeatureRecord> records,
                   std::span<const InstanceId> train_ids, std::uint64_t seed, const TrainOptions& options) {
  if (train_ids.empty()) throw ModelError("train: empty training set");

  TrainedModel model;
  model.kind = kind_of(params);
  model.params = params;
  model.seed = seed;
  model.scaler = fit_scaler(records, train_ids);

  Matrix x = design_matrix(records, train_ids, model.scaler);
  std::vector<Label> y;
  y.reserve(train_ids.size());
  for (auto id : train_ids) y.push_back(record_at(records, id).label);

  model.state = std::visit(
      [&](const auto& p) -> ModelState {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SvmParams>) {
          return fit_svm(x, y, p, options.smo);
        } else if constexpr (std::is_same_v<T, KnnParams>) {
          return fit_knn(std::move(x), std::move(y), p);
        } else if constexpr (std::is_same_v<T, TreeParams>) {
          return fit_tree(x, y, p);
        } else {
          return fit_forest(x, y, p, seed);
        }
      },
      params);
  return model;
}

Label predict(const TrainedModel& model, std::span<const double> raw_features) {
  if (raw_features.size() != model.scaler.dimension())
    throw ModelError("predict: expected " + std::to_string(model.scaler.dimension()) + " features, got " +
                     std::to_string(raw_features.size()));
  const auto x = model.scaler.apply(raw_features);
  return std::visit([&](const auto& s) { return s.predict(x); }, model.state);
}

double accuracy(const TrainedModel& model, std::span<const FeatureRecord> records,
                std::span<const InstanceId> ids) {
  if (ids.empty()) return 0.0;
  std::size_t hits = 0;
  for (auto id : ids) {
    const auto& r = record_at(records, id);
    hits += predict(model, r) == r.label ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(ids.size());
}

std::vector<InitialBelief> generate_initial_beliefs(const std::map<ClassifierKind, TrainedModel>& models,
                                                    std::span<const FeatureRecord> records,
                                                    std::span<const InstanceId> test_ids,
                                                    std::span<const ClassifierKind> kinds) {
  for (auto k : kinds)
    if (!models.contains(k)) throw ModelError("missing trained model for " + std::string(kind_symbol(k)));

  std::vector<InitialBelief> beliefs;
  beliefs.reserve(test_ids.size() * kinds.size());
  for (auto id : test_ids) {
    const auto& r = record_at(records, id);
    for (auto k : kinds) beliefs.push_back({k, id, predict(models.at(k), r)});
  }
  return beliefs;
}

}  // namespace phishrev
