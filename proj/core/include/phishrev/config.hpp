#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phishrev/dataset.hpp"
#include "phishrev/params.hpp"

namespace phishrev {

/// Bad configuration or missing inputs (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParamSource { best_config, grid_search };

struct RunConfig {
  std::string dataset_path;
  std::string label_column = "status";
  std::string meta_column = "meta_present";
  std::string snapshot_dir;  // non-empty: meta flags come from <dir>/<id>.html
  std::uint64_t seed = kDefaultSeed;
  double test_fraction = 0.2;
  std::size_t folds = 5;
  ParamSource param_source = ParamSource::best_config;
  std::string rules_path;  // empty: built-in revision rules
  std::string output_dir = "phishrev_out";
  std::vector<ClassifierKind> classifiers{kAllKinds.begin(), kAllKinds.end()};
  std::map<ClassifierKind, ModelParams> best;
  std::map<ClassifierKind, HyperGrid> grids;

  RunConfig();
  CsvSchema schema() const;
};

/// Applies one `key = value` setting. Keys: dataset, label_column,
/// meta_column, snapshot_dir, seed, test_fraction, folds, params
/// (best-config|grid-search), rules, out, classifiers (all|comma list),
/// best.<kind>.<param>, grid.<kind>.<param> (comma list).
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Flat key-value text; blank lines and `#` comments ignored.
void apply_config_text(RunConfig& config, std::string_view text);
void apply_config_file(RunConfig& config, const std::string& path);

/// Canonical rendering of every effective setting (parses back to the same config).
std::string config_to_text(const RunConfig& config);

}  // namespace phishrev
