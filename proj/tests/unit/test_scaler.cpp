#include <gtest/gtest.h>

#include <cmath>

#include "phishrev/dataset.hpp"
#include "test_support.hpp"

using namespace phishrev;

namespace {

std::vector<FeatureRecord> from_rows(const std::vector<std::vector<double>>& rows) {
  std::vector<FeatureRecord> r(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    r[i].id = i;
    r[i].features = rows[i];
  }
  return r;
}

IdList all_ids(std::size_t n) {
  IdList ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  return ids;
}

}  // namespace

TEST(Scaler, ConstantColumnGetsUnitStd) {
  const auto r = from_rows({{5.0}, {5.0}, {5.0}});
  const auto s = fit_scaler(r, all_ids(3));
  EXPECT_EQ(s.means[0], 5.0);
  EXPECT_EQ(s.std_devs[0], 1.0);
  EXPECT_EQ(s.apply(std::vector<double>{5.0})[0], 0.0);
}

TEST(Scaler, TwoPointSymmetry) {
  const auto r = from_rows({{0.0}, {1.0}, {0.0}, {1.0}});
  const auto s = fit_scaler(r, all_ids(4));
  EXPECT_DOUBLE_EQ(s.means[0], 0.5);
  EXPECT_DOUBLE_EQ(s.std_devs[0], 0.5);
}

TEST(Scaler, MatchesTwoPassOracle) {
  Rng rng(17);
  std::vector<std::vector<double>> rows(100, std::vector<double>(87));
  for (auto& row : rows)
    for (auto& v : row) v = (uniform_unit(rng) - 0.3) * 20.0;
  const auto r = from_rows(rows);
  const auto s = fit_scaler(r, all_ids(100));
  for (std::size_t c = 0; c < 87; ++c) {
    double mean = 0;
    for (const auto& row : rows) mean += row[c];
    mean /= 100.0;
    double var = 0;
    for (const auto& row : rows) var += (row[c] - mean) * (row[c] - mean);
    var /= 100.0;
    EXPECT_NEAR(s.means[c], mean, 1e-12);
    EXPECT_NEAR(s.std_devs[c], std::sqrt(var), 1e-12);
  }
}

TEST(Scaler, UsesTrainingRowsOnly) {
  const auto r = from_rows({{1.0}, {3.0}, {1000.0}});
  const auto s = fit_scaler(r, IdList{0, 1});
  EXPECT_EQ(s.means[0], 2.0);
  EXPECT_EQ(s.std_devs[0], 1.0);
}

TEST(Scaler, TransformArithmetic) {
  ScalerStats s{{5.0}, {2.0}};
  EXPECT_EQ(s.apply(std::vector<double>{7.0})[0], 1.0);
  ScalerStats id{{0.0, 0.0}, {1.0, 1.0}};
  const std::vector<double> x{3.25, -8.5};
  EXPECT_EQ(id.apply(x), x);
  EXPECT_THROW(s.apply(x), DatasetError);
  EXPECT_THROW(transform(from_rows({{1.0, 2.0}}), s), DatasetError);
}

TEST(Scaler, EmptyTrainingSet) { EXPECT_THROW(fit_scaler(from_rows({{1.0}}), IdList{}), DatasetError); }

TEST(Scaler, PropertyZScoreBounds) {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + uniform_index(rng, 200);
    const std::size_t d = 1 + uniform_index(rng, 12);
    const double offset = (uniform_unit(rng) - 0.5) * 1e4;
    const double spread = std::pow(10.0, 4.0 * uniform_unit(rng) - 2.0);
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    for (auto& row : rows)
      for (auto& v : row) v = offset + spread * uniform_unit(rng);
    rows[0][0] = rows[1][0] + spread;  // column 0 never degenerate
    const auto r = from_rows(rows);
    const auto z = transform(r, fit_scaler(r, all_ids(n)));
    for (std::size_t c = 0; c < d; ++c) {
      double mean = 0, sq = 0;
      for (const auto& x : z) mean += x.features[c];
      mean /= static_cast<double>(n);
      for (const auto& x : z) sq += (x.features[c] - mean) * (x.features[c] - mean);
      const double sd = std::sqrt(sq / static_cast<double>(n));
      ASSERT_LT(std::abs(mean), 1e-9);
      ASSERT_LT(std::abs(sd - 1.0), 1e-9) << "n=" << n << " c=" << c;
    }
  }
}
