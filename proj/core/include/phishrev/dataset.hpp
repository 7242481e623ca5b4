#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace phishrev {

/// Number of lexical URL features in the benchmark layout.
inline constexpr std::size_t kFeatureCount = 87;

enum class Label : std::uint8_t { legitimate = 0, phishing = 1 };

inline int label_value(Label l) { return static_cast<int>(l); }
std::string_view label_name(Label l);

using InstanceId = std::size_t;
using IdList = std::vector<InstanceId>;

/// One URL instance. Records produced by load_dataset are indexed by id,
/// i.e. records[i].id == i.
struct FeatureRecord {
  InstanceId id = 0;
  std::vector<double> features;
  Label label = Label::legitimate;
  std::optional<bool> meta_present;
};

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Column mapping for CSV ingestion. Every column that is not the label, the
/// meta column, or explicitly ignored is a feature column.
struct CsvSchema {
  std::string label_column = "status";
  /// Used when present in the header. Values {0,1}.
  std::string meta_column = "meta_present";
  bool require_meta = false;
  std::vector<std::string> ignored_columns = {"url"};
  std::size_t feature_count = kFeatureCount;
};

std::vector<FeatureRecord> load_dataset(const std::string& path, const CsvSchema& schema = {});
std::vector<FeatureRecord> parse_dataset(std::string_view csv, const CsvSchema& schema = {});

/// Looks up records[id], verifying the id-indexing invariant.
const FeatureRecord& record_at(std::span<const FeatureRecord> records, InstanceId id);

// ---------------------------------------------------------------------------
// Standardisation

struct ScalerStats {
  std::vector<double> means;
  std::vector<double> std_devs;

  std::size_t dimension() const { return means.size(); }
  /// z-scores one feature vector.
  std::vector<double> apply(std::span<const double> features) const;
};

/// Population mean/std per column over train_ids. Constant columns get
/// std 1.0 so the transform reduces to centering.
ScalerStats fit_scaler(std::span<const FeatureRecord> records, std::span<const InstanceId> train_ids);
std::vector<FeatureRecord> transform(std::span<const FeatureRecord> records, const ScalerStats& stats);

// ---------------------------------------------------------------------------
// Splitting

inline constexpr std::uint64_t kDefaultSeed = 42;

struct SplitPlan {
  IdList train_ids;  // sorted
  IdList test_ids;   // sorted
  std::vector<IdList> folds;  // each sorted; partition of train_ids
  std::uint64_t seed = kDefaultSeed;
};

/// Stratified train/test split plus stratified CV folds over the training part.
SplitPlan make_split(std::span<const FeatureRecord> records, double test_fraction,
                     std::size_t n_folds, std::uint64_t seed);

/// CSV with header `id,split,fold`; fold is -1 for test rows.
std::string split_manifest_csv(const SplitPlan& plan);
SplitPlan parse_split_manifest(std::string_view csv, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Meta evidence

/// True iff the document has a <meta name=description|keywords|keyword|author>
/// with non-blank content. Never throws; malformed markup degrades to false.
bool extract_meta_presence(std::string_view html);

/// Reads `<dir>/<id>.html` for every record; a missing snapshot counts as no
/// meta. Returns id -> flag for every record.
std::map<InstanceId, bool> meta_from_snapshot_dir(const std::string& dir,
                                                  std::span<const FeatureRecord> records);

}  // namespace phishrev
