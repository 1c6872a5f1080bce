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

#include "tem/candidate_index.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "tem/random_source.h"
#include "tem/synthetic.h"
#include "testing/status_matchers.h"

namespace tem {
namespace {

template <typename T>
std::vector<T> ToVector(std::span<const T> s) {
  return {s.begin(), s.end()};
}

using ::tem::testing::StatusIs;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

constexpr WordId kA = 0, kB = 1, kC = 2;

TEST(RangeQueryTest, ToyGammaTwo) {
  MetricSpace toy = MakeToySpace();
  ASSERT_OK_AND_ASSIGN(CandidateSet set, RangeQuery(toy, kA, 2.0));
  EXPECT_THAT(set.members, ElementsAre(Candidate{kA, 0.0}, Candidate{kB, 1.0}));
  EXPECT_EQ(set.complement_count, 1u);
  EXPECT_EQ(set.input, kA);
  EXPECT_EQ(set.gamma, 2.0);
}

TEST(RangeQueryTest, ToyGammaZeroAndLarge) {
  MetricSpace toy = MakeToySpace();
  ASSERT_OK_AND_ASSIGN(CandidateSet zero, RangeQuery(toy, kA, 0.0));
  EXPECT_THAT(zero.members, ElementsAre(Candidate{kA, 0.0}));
  EXPECT_EQ(zero.complement_count, 2u);
  ASSERT_OK_AND_ASSIGN(CandidateSet all, RangeQuery(toy, kA, 10.0));
  EXPECT_EQ(all.members.size(), 3u);
  EXPECT_EQ(all.complement_count, 0u);
}

TEST(RangeQueryTest, IncludesDistanceExactlyGamma) {
  MetricSpace toy = MakeToySpace();
  ASSERT_OK_AND_ASSIGN(CandidateSet set, RangeQuery(toy, kB, 4.0));
  EXPECT_THAT(set.members, ElementsAre(Candidate{kB, 0.0}, Candidate{kA, 1.0},
                                       Candidate{kC, 4.0}));
}

TEST(RangeQueryTest, InfiniteGammaTakesEverything) {
  MetricSpace toy = MakeToySpace();
  ASSERT_OK_AND_ASSIGN(CandidateSet set,
                       RangeQuery(toy, kC, std::numeric_limits<double>::infinity()));
  EXPECT_EQ(set.members.size(), 3u);
}

TEST(RangeQueryTest, Errors) {
  MetricSpace toy = MakeToySpace();
  EXPECT_THAT(RangeQuery(toy, 3, 1.0), StatusIs(absl::StatusCode::kOutOfRange, HasSubstr("out of range")));
  EXPECT_THAT(RangeQuery(toy, 0, -0.5), StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("gamma")));
  EXPECT_THAT(RangeQuery(toy, 0, NAN), StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("gamma")));
}

TEST(RangeQueryTest, TiesOrderedById) {
  ASSERT_OK_AND_ASSIGN(MetricSpace s, MakeSpaceFromPoints(1, {0.0, 1.0, -1.0, 0.0}));
  ASSERT_OK_AND_ASSIGN(CandidateSet set, RangeQuery(s, 0, 1.0));
  EXPECT_THAT(set.members, ElementsAre(Candidate{0, 0.0}, Candidate{3, 0.0},
                                       Candidate{1, 1.0}, Candidate{2, 1.0}));
}

TEST(RangeQueryTest, ContainsInputAndIsMonotoneInGamma) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    MetricSpace space = MakeGaussianSpace(30, 3, seed);
    RandomSource rng(seed + 100);
    for (int t = 0; t < 20; ++t) {
      const WordId w = rng.UniformIndex(space.size());
      const double g1 = 3.0 * rng.UniformOpen();
      const double g2 = g1 + 2.0 * rng.UniformOpen();
      ASSERT_OK_AND_ASSIGN(CandidateSet small, RangeQuery(space, w, g1));
      ASSERT_OK_AND_ASSIGN(CandidateSet large, RangeQuery(space, w, g2));
      EXPECT_OK(ValidateCandidates(small.view(), space.size()));
      EXPECT_OK(ValidateCandidates(large.view(), space.size()));
      for (const Candidate& c : small.members) {
        EXPECT_NE(std::find(large.members.begin(), large.members.end(), c),
                  large.members.end());
      }
    }
  }
}

TEST(NearestNeighborTest, ToyExamples) {
  MetricSpace toy = MakeToySpace();
  const std::vector<double> near_b{0.9}, at_c{5.0}, midpoint{0.5};
  EXPECT_EQ(*NearestNeighbor(toy, near_b), kB);
  EXPECT_EQ(*NearestNeighbor(toy, at_c), kC);
  EXPECT_EQ(*NearestNeighbor(toy, midpoint), kA);
}

TEST(NearestNeighborTest, Errors) {
  MetricSpace toy = MakeToySpace();
  const std::vector<double> two_d{0.0, 1.0}, inf{INFINITY};
  EXPECT_THAT(NearestNeighbor(toy, two_d), StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("dimension")));
  EXPECT_THAT(NearestNeighbor(toy, inf), StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("non-finite")));
}

TEST(NearestNeighborTest, EmbeddingOfWordMapsBack) {
  MetricSpace space = MakeGaussianSpace(200, 4, 7);
  for (WordId w = 0; w < space.size(); ++w) {
    EXPECT_EQ(*NearestNeighbor(space, space.embeddings().row(w)), w);
  }
}

TEST(BuildIndexTest, ToyMatchesRangeQueries) {
  MetricSpace toy = MakeToySpace();
  ASSERT_OK_AND_ASSIGN(TruncationIndex index, TruncationIndex::Build(toy, 2.0));
  ASSERT_EQ(index.size(), 3u);
  for (WordId w = 0; w < 3; ++w) {
    EXPECT_EQ(index.ExtractCandidateSet(w), *RangeQuery(toy, w, 2.0));
  }
  EXPECT_EQ(index.candidates(kC).members.size(), 1u);
  EXPECT_EQ(index.candidates(kC).complement_count, 2u);
}

TEST(BuildIndexTest, GammaZeroGivesSingletons) {
  MetricSpace space = MakeGaussianSpace(25, 3, 1);
  ASSERT_OK_AND_ASSIGN(TruncationIndex index, TruncationIndex::Build(space, 0.0));
  for (WordId w = 0; w < space.size(); ++w) {
    EXPECT_THAT(ToVector(index.candidates(w).members), ElementsAre(Candidate{w, 0.0}));
    EXPECT_EQ(index.candidates(w).complement_count, space.size() - 1);
  }
}

TEST(BuildIndexTest, CoincidentPointsAreAllCandidates) {
  ASSERT_OK_AND_ASSIGN(MetricSpace s, MakeSpaceFromPoints(2, std::vector<double>(10, 1.5)));
  for (double gamma : {0.0, 1.0}) {
    ASSERT_OK_AND_ASSIGN(TruncationIndex index, TruncationIndex::Build(s, gamma));
    for (WordId w = 0; w < s.size(); ++w) {
      EXPECT_EQ(index.candidates(w).members.size(), 5u);
      EXPECT_EQ(index.candidates(w).complement_count, 0u);
    }
  }
}

TEST(BuildIndexTest, RejectsNegativeGamma) {
  EXPECT_THAT(TruncationIndex::Build(MakeToySpace(), -1.0),
              StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("gamma")));
}

void ExpectMatchesRangeQueries(const MetricSpace& space, double gamma,
                               ScanStrategy strategy, unsigned threads) {
  ASSERT_OK_AND_ASSIGN(TruncationIndex index,
                       TruncationIndex::Build(space, gamma, {strategy, threads}));
  ASSERT_EQ(index.size(), space.size());
  for (WordId w = 0; w < space.size(); ++w) {
    ASSERT_OK_AND_ASSIGN(CandidateSet expected, RangeQuery(space, w, gamma));
    ASSERT_EQ(index.ExtractCandidateSet(w), expected) << "word " << w << " gamma " << gamma;
  }
}

TEST(BuildIndexTest, BothStrategiesAgreeWithRangeQueryExhaustively) {
  for (uint64_t seed = 0; seed < 3; ++seed) {
    MetricSpace space = MakeGaussianSpace(1000, 6, seed, 1.0);
    const double median = 3.4;  // roughly the median distance for 6-d N(0, 1)
    for (double gamma : {0.0, 0.5, 1.5, median}) {
      ExpectMatchesRangeQueries(space, gamma, ScanStrategy::kBlocked, 2);
      ExpectMatchesRangeQueries(space, gamma, ScanStrategy::kBruteForce, 2);
    }
  }
}

TEST(BuildIndexTest, BlockedScanKeepsExactBoundaryTies) {
  // Integer lattice: many pairs sit at distance exactly 1, sqrt(2), 2.
  std::vector<double> pts;
  for (int x = 0; x < 30; ++x) {
    for (int y = 0; y < 30; ++y) {
      pts.push_back(x * 1000.0);  // large offset stresses the float filter
      pts.push_back(y);
      pts.push_back(0.25 * (x % 4));
    }
  }
  ASSERT_OK_AND_ASSIGN(MetricSpace space, MakeSpaceFromPoints(3, pts));
  for (double gamma : {1.0, std::sqrt(2.0), 2.0, 1000.0}) {
    ExpectMatchesRangeQueries(space, gamma, ScanStrategy::kBlocked, 1);
  }
}

TEST(BuildIndexTest, BlockedScanOnClusteredDataAcrossTiles) {
  MetricSpace space = MakeClusteredSpace(1500, 12, 40, 5.0, 0.4, 3);
  for (double gamma : {0.8, 1.6, 2.4}) {
    ExpectMatchesRangeQueries(space, gamma, ScanStrategy::kBlocked, 3);
  }
}

TEST(BuildIndexTest, ThreadCountDoesNotChangeIndex) {
  MetricSpace space = MakeClusteredSpace(2000, 8, 50, 4.0, 0.5, 11);
  ASSERT_OK_AND_ASSIGN(TruncationIndex one, TruncationIndex::Build(space, 1.2, {ScanStrategy::kAuto, 1}));
  ASSERT_OK_AND_ASSIGN(TruncationIndex four, TruncationIndex::Build(space, 1.2, {ScanStrategy::kAuto, 4}));
  EXPECT_EQ(one, four);
}

TEST(BuildIndexTest, FromCandidateSetsValidatesStructure) {
  MetricSpace toy = MakeToySpace();
  std::vector<CandidateSet> sets;
  for (WordId w = 0; w < 3; ++w) sets.push_back(*RangeQuery(toy, w, 2.0));
  ASSERT_OK_AND_ASSIGN(TruncationIndex ok, TruncationIndex::FromCandidateSets(
                                                 2.0, toy.kind(), toy.fingerprint(), sets));
  EXPECT_EQ(ok, *TruncationIndex::Build(toy, 2.0));

  auto bad = sets;
  bad[0].complement_count = 5;
  EXPECT_THAT(TruncationIndex::FromCandidateSets(2.0, toy.kind(), toy.fingerprint(), bad),
              StatusIs(absl::StatusCode::kFailedPrecondition, HasSubstr("add up")));
  bad = sets;
  std::swap(bad[0].members[0], bad[0].members[1]);
  EXPECT_THAT(TruncationIndex::FromCandidateSets(2.0, toy.kind(), toy.fingerprint(), bad),
              StatusIs(absl::StatusCode::kFailedPrecondition, HasSubstr("sorted")));
  bad = sets;
  bad[2].members[0].distance = 3.0;
  EXPECT_THAT(TruncationIndex::FromCandidateSets(2.0, toy.kind(), toy.fingerprint(), bad),
              StatusIs(absl::StatusCode::kFailedPrecondition, HasSubstr("outside")));
  bad = sets;
  bad[1].input = 0;
  EXPECT_THAT(TruncationIndex::FromCandidateSets(2.0, toy.kind(), toy.fingerprint(), bad),
              StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("position 1")));
}

TEST(BuildIndexTest, LookupChecksRange) {
  ASSERT_OK_AND_ASSIGN(TruncationIndex index, TruncationIndex::Build(MakeToySpace(), 2.0));
  EXPECT_OK(index.Lookup(2));
  EXPECT_THAT(index.Lookup(3), StatusIs(absl::StatusCode::kOutOfRange, HasSubstr("out of range")));
}

}  // namespace
}  // namespace tem
