#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "phishrev/dataset.hpp"
#include "phishrev/forest.hpp"
#include "phishrev/knn.hpp"
#include "phishrev/params.hpp"
#include "phishrev/svm.hpp"
#include "phishrev/tree.hpp"

namespace phishrev {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ModelState = std::variant<SvmModel, KnnModel, DecisionTree, RandomForest>;

/// A fitted classifier together with the scaler fitted on its training rows.
/// predict() applies the scaler, so callers always pass raw features.
struct TrainedModel {
  ClassifierKind kind = ClassifierKind::svm;
  ModelParams params;
  std::uint64_t seed = kDefaultSeed;
  ScalerStats scaler;
  ModelState state;
};

struct TrainOptions {
  SmoOptions smo;
};

/// Builds the scaled design matrix for `ids` (rows in the given order).
Matrix design_matrix(std::span<const FeatureRecord> records, std::span<const InstanceId> ids,
                     const ScalerStats& scaler);

TrainedModel train(const ModelParams& params, std::span<const FeatureRecord> records,
                   std::span<const InstanceId> train_ids, std::uint64_t seed = kDefaultSeed,
                   const TrainOptions& options = {});

Label predict(const TrainedModel& model, std::span<const double> raw_features);
inline Label predict(const TrainedModel& model, const FeatureRecord& record) {
  return predict(model, record.features);
}

double accuracy(const TrainedModel& model, std::span<const FeatureRecord> records,
                std::span<const InstanceId> ids);

// ---------------------------------------------------------------------------

struct CandidateScore {
  ModelParams params;
  std::vector<double> fold_accuracy;
  double mean_accuracy = 0.0;
};

struct GridSearchResult {
  ModelParams best;
  double cv_accuracy = 0.0;
  std::vector<CandidateScore> scores;  // effective candidates in grid order
};

/// k-fold CV over the effective candidates of `grid`. The scaler is refit on
/// each fold's training part. Highest mean accuracy wins; ties keep the
/// earlier candidate.
GridSearchResult grid_search(const HyperGrid& grid, std::span<const FeatureRecord> records,
                             const std::vector<IdList>& folds, std::uint64_t seed = kDefaultSeed,
                             const TrainOptions& options = {});

// ---------------------------------------------------------------------------

struct InitialBelief {
  ClassifierKind classifier = ClassifierKind::svm;
  InstanceId instance_id = 0;
  Label predicted = Label::legitimate;
  bool operator==(const InitialBelief&) const = default;
};

/// One belief per (kind, test id): outer loop over test ids, inner over kinds.
std::vector<InitialBelief> generate_initial_beliefs(const std::map<ClassifierKind, TrainedModel>& models,
                                                    std::span<const FeatureRecord> records,
                                                    std::span<const InstanceId> test_ids,
                                                    std::span<const ClassifierKind> kinds = kAllKinds);

// ---------------------------------------------------------------------------
// Persistence: line-oriented text, doubles in shortest round-trip form.

std::string serialize_model(const TrainedModel& model);
TrainedModel parse_model(std::string_view text);
void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

}  // namespace phishrev
