//
// Copyright 2026 The TEM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <memory>
#include <vector>

#include "benchmark/benchmark.h"
#include "tem/candidate_index.h"
#include "tem/madlib.h"
#include "tem/noise.h"
#include "tem/random_source.h"
#include "tem/synthetic.h"
#include "tem/tem.h"

namespace tem {
namespace {

const MetricSpace& Clustered(size_t words) {
  static auto* cache = new std::vector<std::pair<size_t, MetricSpace>>();
  for (const auto& [n, space] : *cache) {
    if (n == words) return space;
  }
  cache->emplace_back(words, MakeClusteredSpace(words, 50, words / 100, 5.0, 0.3, 1));
  return cache->back().second;
}

void BM_SampleGumbel(benchmark::State& state) {
  RandomSource rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(SampleGumbel(rng, 2.0));
}
BENCHMARK(BM_SampleGumbel);

void BM_SampleExpBallNoise(benchmark::State& state) {
  RandomSource rng(1);
  const size_t dim = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(SampleExpBallNoise(rng, dim, 1.0));
}
BENCHMARK(BM_SampleExpBallNoise)->Arg(2)->Arg(50)->Arg(300);

void BM_TemPrivatizeIndexed(benchmark::State& state) {
  const size_t words = state.range(0);
  const MetricSpace& space = Clustered(words);
  auto index = std::make_shared<const TruncationIndex>(*TruncationIndex::Build(space, 2.8));
  const TemMechanism mech = *TemMechanism::Create(space, *PrivacyParams::Create(1.0, 2.8), index);
  RandomSource rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(*mech.Privatize(rng.UniformIndex(words), rng));
  }
  state.SetItemsProcessed(state.iterations());
  state.counters["mean_list"] = static_cast<double>(index->total_members()) / words;
}
BENCHMARK(BM_TemPrivatizeIndexed)->Arg(10000)->Arg(30000)->Unit(benchmark::kNanosecond);

void BM_TemPrivatizeScan(benchmark::State& state) {
  const size_t words = state.range(0);
  const MetricSpace& space = Clustered(words);
  const TemMechanism mech =
      *TemMechanism::CreateWithoutIndex(space, *PrivacyParams::Create(1.0, 2.8));
  RandomSource rng(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(*mech.Privatize(rng.UniformIndex(words), rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TemPrivatizeScan)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_MadlibPrivatize(benchmark::State& state) {
  const size_t words = state.range(0);
  const MetricSpace& space = Clustered(words);
  RandomSource rng(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(*MadlibPrivatizeWord(space, rng.UniformIndex(words), 1.0, rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_MadlibPrivatize)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_TemExactDistribution(benchmark::State& state) {
  const size_t words = state.range(0);
  const MetricSpace& space = Clustered(words);
  const CandidateSet set = *RangeQuery(space, 0, 2.8);
  const PrivacyParams params = *PrivacyParams::Create(1.0, 2.8);
  for (auto _ : state) benchmark::DoNotOptimize(*TemExactDistribution(set.view(), params));
}
BENCHMARK(BM_TemExactDistribution)->Arg(10000);

}  // namespace
}  // namespace tem
