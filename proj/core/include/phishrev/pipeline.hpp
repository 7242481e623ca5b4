#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "phishrev/classifiers.hpp"
#include "phishrev/config.hpp"
#include "phishrev/revision.hpp"

namespace phishrev {

/// Output file names inside RunConfig::output_dir.
namespace artifacts {
inline constexpr const char* kConfig = "config.txt";
inline constexpr const char* kSplitManifest = "split_manifest.csv";
inline constexpr const char* kScalerStats = "scaler_stats.txt";
inline constexpr const char* kTrainSummary = "train_summary.txt";
inline constexpr const char* kCvSummary = "cv_summary.txt";
inline constexpr const char* kFacts = "facts.lp";
inline constexpr const char* kFinalBeliefs = "final_beliefs.csv";
inline constexpr const char* kReportText = "report.txt";
inline constexpr const char* kReportKv = "report.kv";
inline constexpr const char* kComparison = "comparison.txt";
std::string model_file(ClassifierKind kind);
}  // namespace artifacts

/// Pipeline failure after configuration was accepted (CLI exit code 1).
class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrainSummary {
  std::map<ClassifierKind, ModelParams> params;
  std::map<ClassifierKind, double> cv_accuracy;  // grid search only
  std::map<ClassifierKind, double> test_accuracy;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
};

/// Split, (optionally) grid-search, fit and persist one model per selected kind.
TrainSummary cmd_train(const RunConfig& config);

/// Beliefs on the test split -> facts.lp -> rule engine -> final beliefs and report.
RevisionReport cmd_revise(const RunConfig& config);

/// Renders the comparison tables from report.kv alone.
std::string cmd_report(const RunConfig& config);

/// final_beliefs.csv body (header id,classifier,initial,final,revised).
std::string final_beliefs_csv(const std::vector<FinalBelief>& beliefs);

}  // namespace phishrev
