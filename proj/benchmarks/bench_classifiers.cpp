#include <benchmark/benchmark.h>

#include "phishrev/classifiers.hpp"
#include "phishrev/synthetic.hpp"

using namespace phishrev;

namespace {

const std::vector<FeatureRecord>& records() {
  static const auto r = [] {
    synthetic::FixtureOptions o;
    o.size = 1000;
    o.feature_count = 30;
    return synthetic::make_fixture(o);
  }();
  return r;
}

const SplitPlan& plan() {
  static const auto p = make_split(records(), 0.2, 5, kDefaultSeed);
  return p;
}

void BM_Fit(benchmark::State& state) {
  const auto kind = kAllKinds[static_cast<std::size_t>(state.range(0))];
  state.SetLabel(std::string(kind_symbol(kind)));
  for (auto _ : state) benchmark::DoNotOptimize(train(best_config(kind), records(), plan().train_ids));
}
BENCHMARK(BM_Fit)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_Predict(benchmark::State& state) {
  const auto kind = kAllKinds[static_cast<std::size_t>(state.range(0))];
  state.SetLabel(std::string(kind_symbol(kind)));
  const auto model = train(best_config(kind), records(), plan().train_ids);
  for (auto _ : state) benchmark::DoNotOptimize(accuracy(model, records(), plan().test_ids));
}
BENCHMARK(BM_Predict)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace
