#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "phishrev/dataset.hpp"
#include "test_support.hpp"

using namespace phishrev;

namespace {

std::vector<FeatureRecord> labelled(std::size_t n0, std::size_t n1, Rng* rng = nullptr) {
  std::vector<FeatureRecord> r(n0 + n1);
  std::vector<Label> labels(n0, Label::legitimate);
  labels.insert(labels.end(), n1, Label::phishing);
  if (rng) shuffle(std::span<Label>(labels), *rng);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i].id = i;
    r[i].label = labels[i];
    r[i].features = {static_cast<double>(i)};
  }
  return r;
}

void check_plan(const std::vector<FeatureRecord>& r, const SplitPlan& p, double frac, std::size_t k) {
  std::set<InstanceId> train(p.train_ids.begin(), p.train_ids.end());
  std::set<InstanceId> test(p.test_ids.begin(), p.test_ids.end());
  ASSERT_EQ(train.size(), p.train_ids.size());
  ASSERT_EQ(test.size(), p.test_ids.size());
  ASSERT_TRUE(std::is_sorted(p.train_ids.begin(), p.train_ids.end()));
  ASSERT_TRUE(std::is_sorted(p.test_ids.begin(), p.test_ids.end()));
  for (auto id : train) ASSERT_FALSE(test.count(id));
  ASSERT_EQ(train.size() + test.size(), r.size());

  ASSERT_EQ(p.folds.size(), k);
  std::set<InstanceId> fold_union;
  std::size_t fold_total = 0;
  for (const auto& f : p.folds) {
    fold_total += f.size();
    fold_union.insert(f.begin(), f.end());
  }
  ASSERT_EQ(fold_total, fold_union.size());
  ASSERT_EQ(fold_union, train);

  const double n = static_cast<double>(r.size());
  ASSERT_EQ(p.test_ids.size(), static_cast<std::size_t>(std::llround(frac * n)));
  std::array<double, 2> n_c{}, t_c{};
  for (const auto& x : r) n_c[label_value(x.label)] += 1;
  for (auto id : p.test_ids) t_c[label_value(r[id].label)] += 1;
  const double t = static_cast<double>(p.test_ids.size());
  for (int c = 0; c < 2; ++c) ASSERT_LE(std::abs(t_c[c] - t * n_c[c] / n), 1.0) << "class " << c;
}

}  // namespace

TEST(Split, BenchmarkSizedSplit) {
  const auto r = labelled(5715, 5715);
  const auto p = make_split(r, 0.2, 5, 42);
  EXPECT_EQ(p.test_ids.size(), 2286u);
  EXPECT_EQ(p.train_ids.size(), 9144u);
  std::size_t phishing = 0;
  for (auto id : p.test_ids) phishing += r[id].label == Label::phishing;
  EXPECT_EQ(phishing, 1143u);
  EXPECT_EQ(p.test_ids.size() - phishing, 1143u);
  check_plan(r, p, 0.2, 5);
}

TEST(Split, SameSeedSamePlan) {
  const auto r = labelled(60, 40);
  const auto a = make_split(r, 0.2, 5, 42);
  const auto b = make_split(r, 0.2, 5, 42);
  EXPECT_EQ(a.train_ids, b.train_ids);
  EXPECT_EQ(a.test_ids, b.test_ids);
  EXPECT_EQ(a.folds, b.folds);
  const auto c = make_split(r, 0.2, 5, 43);
  EXPECT_NE(a.test_ids, c.test_ids);
}

TEST(Split, Errors) {
  const auto r = labelled(3, 1);
  EXPECT_THROW(make_split(r, 0.2, 5, 1), DatasetError);
  EXPECT_THROW(make_split(labelled(10, 10), 0.0, 5, 1), DatasetError);
  EXPECT_THROW(make_split(labelled(10, 10), 1.0, 5, 1), DatasetError);
  EXPECT_THROW(make_split(labelled(10, 10), 0.2, 1, 1), DatasetError);
}

TEST(Split, FoldsAreStratified) {
  const auto r = labelled(500, 500);
  const auto p = make_split(r, 0.2, 5, 42);
  for (const auto& f : p.folds) {
    std::size_t ph = 0;
    for (auto id : f) ph += r[id].label == Label::phishing;
    EXPECT_LE(std::abs(static_cast<long>(ph) - static_cast<long>(f.size() - ph)), 1);
  }
}

TEST(Split, PropertyRandomShapes) {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n0 = 5 + uniform_index(rng, 300);
    const std::size_t n1 = 5 + uniform_index(rng, 300);
    const double frac = 0.05 + 0.6 * uniform_unit(rng);
    const std::size_t k = 2 + uniform_index(rng, 5);
    const auto r = labelled(n0, n1, &rng);
    const auto p = make_split(r, frac, k, rng());
    check_plan(r, p, frac, k);
    if (::testing::Test::HasFatalFailure()) return;
  }
}

TEST(Split, ManifestRoundTrip) {
  const auto r = labelled(37, 23);
  const auto p = make_split(r, 0.25, 4, 9);
  const auto csv = split_manifest_csv(p);
  EXPECT_EQ(csv.substr(0, 14), "id,split,fold\n");
  const auto q = parse_split_manifest(csv, 9);
  EXPECT_EQ(q.train_ids, p.train_ids);
  EXPECT_EQ(q.test_ids, p.test_ids);
  EXPECT_EQ(q.folds, p.folds);
  EXPECT_EQ(split_manifest_csv(q), csv);
  EXPECT_THROW(parse_split_manifest("nope\n", 9), DatasetError);
  EXPECT_THROW(parse_split_manifest("id,split,fold\n1,train\n", 9), DatasetError);
}
