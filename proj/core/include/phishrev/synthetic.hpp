#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phishrev/dataset.hpp"

namespace phishrev::synthetic {

struct FixtureOptions {
  std::size_t size = 200;  // split evenly between the classes
  std::size_t feature_count = kFeatureCount;
  double meta_rate_legitimate = 0.505;
  double meta_rate_phishing = 0.0995;
  double separation = 0.6;  // mean shift of informative columns, in noise units
  std::uint64_t seed = 7;
};

/// Balanced two-class records. Column 0 is constant, a third of the remaining
/// columns are informative, the rest are pure noise. Every record carries a
/// meta flag drawn at the class rate.
std::vector<FeatureRecord> make_fixture(const FixtureOptions& options = {});

/// Two well separated clouds (first column decides the class).
std::vector<FeatureRecord> make_separable(std::size_t size, std::size_t feature_count, std::uint64_t seed);

/// CSV with a leading url column, f1..fN, meta_present and status columns.
std::string to_csv(const std::vector<FeatureRecord>& records, bool with_meta = true);

}  // namespace phishrev::synthetic
