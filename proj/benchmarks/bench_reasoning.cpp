#include <benchmark/benchmark.h>

#include "phishrev/kb.hpp"
#include "phishrev/revision.hpp"

using namespace phishrev;

namespace {

struct Beliefs {
  std::vector<InitialBelief> beliefs;
  kb::MetaFlags meta;
};

Beliefs make_beliefs(std::size_t n) {
  Rng rng(11);
  Beliefs b;
  for (std::size_t id = 0; id < n; ++id) {
    b.meta[id] = uniform_unit(rng) < 0.3;
    for (auto k : kAllKinds)
      b.beliefs.push_back({k, id, uniform_unit(rng) < 0.5 ? Label::phishing : Label::legitimate});
  }
  return b;
}

void BM_Encode(benchmark::State& state) {
  const auto b = make_beliefs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kb::encode(b.beliefs, b.meta));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Encode)->RangeMultiplier(10)->Range(100, 10000)->Complexity(benchmark::oN);

void BM_GroundAndSolve(benchmark::State& state) {
  const auto b = make_beliefs(static_cast<std::size_t>(state.range(0)));
  const auto facts = kb::encode(b.beliefs, b.meta).sorted();
  for (auto _ : state) {
    const auto gp = nmr::ground(revision_program(), facts);
    benchmark::DoNotOptimize(nmr::solve(gp));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GroundAndSolve)->RangeMultiplier(10)->Range(100, 10000)->Complexity(benchmark::oN);

void BM_ApplyRevision(benchmark::State& state) {
  const auto b = make_beliefs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(apply_revision(b.beliefs, b.meta));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ApplyRevision)->RangeMultiplier(10)->Range(100, 10000)->Complexity(benchmark::oN);

}  // namespace
