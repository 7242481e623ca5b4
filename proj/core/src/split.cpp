#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "phishrev/dataset.hpp"
#include "phishrev/random.hpp"
#include "phishrev/text.hpp"

namespace phishrev {

SplitPlan make_split(std::span<const FeatureRecord> records, double test_fraction,
                     std::size_t n_folds, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw DatasetError("make_split: test_fraction must lie in (0, 1)");
  if (n_folds < 2) throw DatasetError("make_split: need at least 2 folds");
  if (records.size() < n_folds)
    throw DatasetError("make_split: " + std::to_string(records.size()) +
                       " records is fewer than " + std::to_string(n_folds) + " folds");

  std::array<IdList, 2> by_class;
  for (const auto& r : records) by_class[label_value(r.label)].push_back(r.id);

  // Largest-remainder allocation of the test quota across classes.
  const auto n_test = static_cast<std::size_t>(
      std::llround(test_fraction * static_cast<double>(records.size())));
  std::array<std::size_t, 2> quota{};
  std::array<double, 2> remainder{};
  std::size_t assigned = 0;
  for (int c = 0; c < 2; ++c) {
    const double exact = test_fraction * static_cast<double>(by_class[c].size());
    quota[c] = static_cast<std::size_t>(std::floor(exact));
    remainder[c] = exact - std::floor(exact);
    assigned += quota[c];
  }
  while (assigned < n_test) {
    const int c = remainder[1] > remainder[0] ? 1 : 0;
    if (quota[c] >= by_class[c].size()) break;
    ++quota[c];
    remainder[c] = -1.0;
    ++assigned;
  }

  Rng rng(seed);
  SplitPlan plan;
  plan.seed = seed;
  plan.folds.resize(n_folds);
  std::size_t fold_cursor = 0;
  for (int c = 0; c < 2; ++c) {
    auto& ids = by_class[c];
    shuffle(std::span<InstanceId>(ids), rng);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i < quota[c]) {
        plan.test_ids.push_back(ids[i]);
      } else {
        plan.train_ids.push_back(ids[i]);
        plan.folds[fold_cursor++ % n_folds].push_back(ids[i]);
      }
    }
  }
  if (plan.train_ids.size() < n_folds)
    throw DatasetError("make_split: training portion smaller than the fold count");

  std::sort(plan.train_ids.begin(), plan.train_ids.end());
  std::sort(plan.test_ids.begin(), plan.test_ids.end());
  for (auto& f : plan.folds) std::sort(f.begin(), f.end());
  return plan;
}

std::string split_manifest_csv(const SplitPlan& plan) {
  std::vector<std::pair<InstanceId, int>> rows;
  for (std::size_t f = 0; f < plan.folds.size(); ++f)
    for (auto id : plan.folds[f]) rows.emplace_back(id, static_cast<int>(f));
  for (auto id : plan.test_ids) rows.emplace_back(id, -1);
  std::sort(rows.begin(), rows.end());

  std::ostringstream out;
  out << "id,split,fold\n";
  for (auto [id, fold] : rows) out << id << ',' << (fold < 0 ? "test" : "train") << ',' << fold << '\n';
  return out.str();
}

SplitPlan parse_split_manifest(std::string_view csv, std::uint64_t seed) {
  SplitPlan plan;
  plan.seed = seed;
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line) || text::trim(line) != "id,split,fold")
    throw DatasetError("split manifest: bad header");
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (text::trim(line).empty()) continue;
    const auto cells = text::split(text::trim(line), ',');
    auto id = cells.size() == 3 ? text::parse_int(cells[0]) : std::nullopt;
    auto fold = cells.size() == 3 ? text::parse_int(cells[2]) : std::nullopt;
    if (!id || *id < 0 || !fold || (cells[1] != "train" && cells[1] != "test"))
      throw DatasetError("split manifest: malformed row " + std::to_string(row));
    if (cells[1] == "test") {
      plan.test_ids.push_back(static_cast<InstanceId>(*id));
    } else {
      if (*fold < 0) throw DatasetError("split manifest: train row without fold");
      if (plan.folds.size() <= static_cast<std::size_t>(*fold)) plan.folds.resize(*fold + 1);
      plan.folds[*fold].push_back(static_cast<InstanceId>(*id));
      plan.train_ids.push_back(static_cast<InstanceId>(*id));
    }
  }
  std::sort(plan.train_ids.begin(), plan.train_ids.end());
  std::sort(plan.test_ids.begin(), plan.test_ids.end());
  for (auto& f : plan.folds) std::sort(f.begin(), f.end());
  return plan;
}

}  // namespace phishrev
