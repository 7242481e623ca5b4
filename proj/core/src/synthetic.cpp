#include "phishrev/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "phishrev/random.hpp"
#include "phishrev/text.hpp"

namespace phishrev::synthetic {

namespace {

double normal(Rng& rng) {
  const double u1 = 1.0 - uniform_unit(rng);
  const double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// three decimals keeps the CSV short and exactly reproducible
double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

}  // namespace

std::vector<FeatureRecord> make_fixture(const FixtureOptions& options) {
  Rng rng(options.seed);
  std::vector<FeatureRecord> out;
  out.reserve(options.size);
  for (std::size_t i = 0; i < options.size; ++i) {
    FeatureRecord r;
    r.id = i;
    r.label = (i % 2 == 0) ? Label::legitimate : Label::phishing;
    const double sign = r.label == Label::phishing ? 1.0 : -1.0;
    r.features.resize(options.feature_count);
    for (std::size_t f = 0; f < options.feature_count; ++f) {
      if (f == 0) {
        r.features[f] = 1.0;
        continue;
      }
      const bool informative = f % 3 == 1;
      const double shift = informative ? sign * options.separation / 2.0 : 0.0;
      r.features[f] = round3(shift + normal(rng) + static_cast<double>(f % 5));
    }
    const double rate = r.label == Label::phishing ? options.meta_rate_phishing : options.meta_rate_legitimate;
    r.meta_present = uniform_unit(rng) < rate;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<FeatureRecord> make_separable(std::size_t size, std::size_t feature_count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<FeatureRecord> out;
  out.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    FeatureRecord r;
    r.id = i;
    r.label = (i % 2 == 0) ? Label::legitimate : Label::phishing;
    r.features.resize(feature_count);
    for (auto& v : r.features) v = round3(normal(rng));
    r.features[0] = round3((r.label == Label::phishing ? 4.0 : -4.0) + 0.5 * normal(rng));
    r.meta_present = false;
    out.push_back(std::move(r));
  }
  return out;
}

std::string to_csv(const std::vector<FeatureRecord>& records, bool with_meta) {
  std::ostringstream out;
  const std::size_t d = records.empty() ? 0 : records.front().features.size();
  out << "url";
  for (std::size_t f = 0; f < d; ++f) out << ",f" << f + 1;
  if (with_meta) out << ",meta_present";
  out << ",status\n";
  for (const auto& r : records) {
    out << "http://site" << r.id << ".example/";
    for (double v : r.features) out << ',' << text::format_double(v);
    if (with_meta) out << ',' << (r.meta_present.value_or(false) ? 1 : 0);
    out << ',' << label_name(r.label) << '\n';
  }
  return out.str();
}

}  // namespace phishrev::synthetic
