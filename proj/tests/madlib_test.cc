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

#include "tem/madlib.h"

#include <cmath>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "tem/distribution.h"
#include "tem/synthetic.h"
#include "testing/status_matchers.h"

namespace tem {
namespace {

using ::tem::testing::StatusIs;

// In 1-D the noise is Laplace with scale 1/epsilon; at epsilon = 1 on the toy
// line {0, 1, 5} the Voronoi cells are (-inf, 0.5], (0.5, 3), [3, inf).
constexpr double kToyFromA[] = {0.6967346701436832881981002, 0.2783717956723847403122286,
                                0.02489353418393197148967121};
constexpr double kToyFromB[] = {0.3032653298563167118018998, 0.6290670285253769422511005,
                                0.06766764161830634594699975};

std::vector<size_t> Counts(const MetricSpace& space, WordId w, double eps,
                           size_t draws, uint64_t seed) {
  std::vector<size_t> counts(space.size(), 0);
  RandomSource rng(seed);
  for (size_t i = 0; i < draws; ++i) ++counts[*MadlibPrivatizeWord(space, w, eps, rng)];
  return counts;
}

TEST(MadlibTest, ToyMatchesLaplaceCells) {
  MetricSpace toy = MakeToySpace();
  constexpr size_t kDraws = 100000;
  const auto from_a = Counts(toy, 0, 1.0, kDraws, 1);
  const auto from_b = Counts(toy, 1, 1.0, kDraws, 2);
  for (WordId y = 0; y < 3; ++y) {
    EXPECT_NEAR(static_cast<double>(from_a[y]) / kDraws, kToyFromA[y], 0.01);
    EXPECT_NEAR(static_cast<double>(from_b[y]) / kDraws, kToyFromB[y], 0.01);
  }
  std::vector<double> logs;
  for (double p : kToyFromA) logs.push_back(std::log(p));
  EXPECT_LT(TotalVariation(Distribution(logs), from_a), 0.01);
}

TEST(MadlibTest, HugeEpsilonReturnsInput) {
  MetricSpace space = MakeGaussianSpace(50, 10, 3);
  for (WordId w = 0; w < space.size(); w += 10) {
    const auto counts = Counts(space, w, 1e6, 1000, w);
    EXPECT_GE(counts[w], 999u);
  }
}

TEST(MadlibTest, SmallEpsilonSpreadsMass) {
  MetricSpace toy = MakeToySpace();
  const auto counts = Counts(toy, 0, 0.01, 20000, 4);
  EXPECT_GT(counts[2], 5000u);
}

TEST(MadlibTest, DeterministicUnderSeed) {
  MetricSpace space = MakeGaussianSpace(30, 4, 1);
  EXPECT_EQ(Counts(space, 3, 1.0, 500, 9), Counts(space, 3, 1.0, 500, 9));
}

TEST(MadlibTest, Errors) {
  MetricSpace toy = MakeToySpace();
  RandomSource rng(0);
  EXPECT_THAT(MadlibPrivatizeWord(toy, 3, 1.0, rng), StatusIs(absl::StatusCode::kOutOfRange));
  EXPECT_THAT(MadlibPrivatizeWord(toy, 0, 0.0, rng), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(MadlibMechanism::Create(toy, -1.0), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(MadlibTest, MechanismWrapsFunction) {
  MetricSpace toy = MakeToySpace();
  ASSERT_OK_AND_ASSIGN(MadlibMechanism mech, MadlibMechanism::Create(toy, 1.0));
  EXPECT_EQ(mech.name(), "madlib");
  RandomSource r1(5), r2(5);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(*mech.Privatize(1, r1), *MadlibPrivatizeWord(toy, 1, 1.0, r2));
  }
}

}  // namespace
}  // namespace tem
