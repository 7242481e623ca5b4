#include <cmath>

#include "phishrev/dataset.hpp"

namespace phishrev {

ScalerStats fit_scaler(std::span<const FeatureRecord> records, std::span<const InstanceId> train_ids) {
  if (train_ids.empty()) throw DatasetError("fit_scaler: empty training set");
  const std::size_t dim = record_at(records, train_ids.front()).features.size();

  // Welford's streaming update, one pass over the rows.
  std::vector<double> mean(dim, 0.0);
  std::vector<double> m2(dim, 0.0);
  std::size_t n = 0;
  for (auto id : train_ids) {
    const auto& f = record_at(records, id).features;
    if (f.size() != dim) throw DatasetError("fit_scaler: inconsistent feature width");
    ++n;
    for (std::size_t j = 0; j < dim; ++j) {
      const double delta = f[j] - mean[j];
      mean[j] += delta / static_cast<double>(n);
      m2[j] += delta * (f[j] - mean[j]);
    }
  }

  ScalerStats stats;
  stats.means = std::move(mean);
  stats.std_devs.resize(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    const double sd = std::sqrt(m2[j] / static_cast<double>(n));
    stats.std_devs[j] = sd > 0.0 ? sd : 1.0;
  }
  return stats;
}

std::vector<double> ScalerStats::apply(std::span<const double> features) const {
  if (features.size() != means.size())
    throw DatasetError("scaler dimension mismatch: got " + std::to_string(features.size()) +
                       ", expected " + std::to_string(means.size()));
  std::vector<double> out(features.size());
  for (std::size_t j = 0; j < features.size(); ++j) out[j] = (features[j] - means[j]) / std_devs[j];
  return out;
}

std::vector<FeatureRecord> transform(std::span<const FeatureRecord> records, const ScalerStats& stats) {
  std::vector<FeatureRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    FeatureRecord scaled = r;
    scaled.features = stats.apply(r.features);
    out.push_back(std::move(scaled));
  }
  return out;
}

}  // namespace phishrev
