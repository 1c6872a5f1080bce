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

#include "benchmark/benchmark.h"
#include "tem/candidate_index.h"
#include "tem/synthetic.h"

namespace tem {
namespace {

void BM_RangeQuery(benchmark::State& state) {
  const MetricSpace space = MakeClusteredSpace(state.range(0), 50, 100, 5.0, 0.3, 5);
  WordId w = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(*RangeQuery(space, w, 2.8));
    w = (w + 1) % space.size();
  }
}
BENCHMARK(BM_RangeQuery)->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);

void BM_BuildIndex(benchmark::State& state) {
  const MetricSpace space = MakeClusteredSpace(state.range(0), 50, state.range(0) / 100, 5.0, 0.3, 6);
  const ScanStrategy strategy = state.range(1) ? ScanStrategy::kBlocked : ScanStrategy::kBruteForce;
  for (auto _ : state) {
    benchmark::DoNotOptimize(*TruncationIndex::Build(space, 2.8, {strategy, 1}));
  }
  state.SetLabel(state.range(1) ? "blocked" : "brute_force");
}
BENCHMARK(BM_BuildIndex)
    ->Args({4000, 0})
    ->Args({4000, 1})
    ->Args({16000, 1})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace tem
