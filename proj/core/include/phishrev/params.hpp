#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace phishrev {

enum class ClassifierKind { svm, knn, dt, rf };

inline constexpr std::array<ClassifierKind, 4> kAllKinds = {
    ClassifierKind::svm, ClassifierKind::knn, ClassifierKind::dt, ClassifierKind::rf};

/// Lowercase symbol used in files and facts: svm, knn, dt, rf.
std::string_view kind_symbol(ClassifierKind kind);
std::optional<ClassifierKind> kind_from_symbol(std::string_view s);

enum class SvmKernel { linear, rbf };
enum class GammaMode { scale, automatic };
enum class KnnWeights { uniform, distance };
enum class KnnMetric { euclidean, manhattan };
enum class SplitCriterion { gini, entropy };

struct SvmParams {
  double c = 1.0;
  SvmKernel kernel = SvmKernel::rbf;
  GammaMode gamma = GammaMode::scale;
  bool operator==(const SvmParams&) const = default;
};

struct KnnParams {
  int k = 5;
  KnnWeights weights = KnnWeights::uniform;
  KnnMetric metric = KnnMetric::euclidean;
  bool operator==(const KnnParams&) const = default;
};

struct TreeParams {
  SplitCriterion criterion = SplitCriterion::gini;
  std::optional<int> max_depth;  // nullopt = unbounded
  int min_samples_split = 2;
  bool operator==(const TreeParams&) const = default;
};

struct ForestParams {
  int n_estimators = 100;
  std::optional<int> max_depth;
  SplitCriterion criterion = SplitCriterion::gini;
  bool operator==(const ForestParams&) const = default;
};

using ModelParams = std::variant<SvmParams, KnnParams, TreeParams, ForestParams>;

class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

ClassifierKind kind_of(const ModelParams& params);

/// Named assignment, e.g. {"C","10"},{"kernel","rbf"},{"gamma","scale"}.
using Assignment = std::vector<std::pair<std::string, std::string>>;

Assignment to_assignment(const ModelParams& params);
ModelParams from_assignment(ClassifierKind kind, const Assignment& assignment);

/// Canonical one-line rendering, `C=10 kernel=rbf gamma=scale`.
std::string describe(const ModelParams& params);

/// Ordered candidate lists per parameter name.
struct HyperGrid {
  ClassifierKind kind = ClassifierKind::svm;
  std::vector<std::pair<std::string, std::vector<std::string>>> parameter_lists;

  /// Cartesian product in listing order, last parameter varying fastest.
  std::vector<ModelParams> candidates() const;
  std::size_t cardinality() const;
};

HyperGrid default_grid(ClassifierKind kind);
ModelParams best_config(ClassifierKind kind);

/// Drops candidates that are behaviourally identical to an earlier one
/// (gamma does not affect the linear kernel). Order is preserved.
std::vector<ModelParams> effective_candidates(const std::vector<ModelParams>& candidates);

}  // namespace phishrev
