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

#include "tem/tem.h"

#include <cmath>
#include <memory>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "tem/dp_verifier.h"
#include "tem/synthetic.h"
#include "testing/status_matchers.h"

namespace tem {
namespace {

using ::tem::testing::StatusIs;
using ::testing::HasSubstr;

constexpr WordId kA = 0, kB = 1, kC = 2;

// Softmax of (0, -1, -2), evaluated at 21 digits.
constexpr double kToyProbsFromA[] = {0.665240955774821889529, 0.244728471054797652473,
                                     0.0900305731703804580};
// Input c, gamma 2, epsilon 2: weights (e^-2, e^-2, 1).
constexpr double kToyCProbC = 0.786986042161598498979;
constexpr double kToyCProbOther = 0.106506978919200750511;

PrivacyParams Params(double epsilon, double gamma) {
  return *PrivacyParams::Create(epsilon, gamma);
}

std::vector<size_t> SampleCounts(const CandidateView& set, const PrivacyParams& p,
                                 size_t vocab, size_t draws, uint64_t seed) {
  std::vector<size_t> counts(vocab, 0);
  RandomSource rng(seed);
  for (size_t i = 0; i < draws; ++i) ++counts[*TemPrivatizeWord(set, p, rng)];
  return counts;
}

TEST(BottomScoreTest, MatchesFormula) {
  const PrivacyParams p = Params(2.0, 3.0);
  EXPECT_DOUBLE_EQ(BottomScore(p, 1), -3.0);
  EXPECT_DOUBLE_EQ(BottomScore(p, 10), -3.0 + std::log(10.0));
}

TEST(TemExactTest, ToyInputA) {
  MetricSpace toy = MakeToySpace();
  ASSERT_OK_AND_ASSIGN(CandidateSet set, RangeQuery(toy, kA, 2.0));
  ASSERT_OK_AND_ASSIGN(Distribution d, TemExactDistribution(set.view(), Params(2.0, 2.0)));
  ASSERT_EQ(d.size(), 3u);
  for (WordId y = 0; y < 3; ++y) EXPECT_NEAR(d.prob(y), kToyProbsFromA[y], 1e-15);
}

TEST(TemExactTest, ToyInputC) {
  MetricSpace toy = MakeToySpace();
  ASSERT_OK_AND_ASSIGN(CandidateSet set, RangeQuery(toy, kC, 2.0));
  ASSERT_OK_AND_ASSIGN(Distribution d, TemExactDistribution(set.view(), Params(2.0, 2.0)));
  EXPECT_NEAR(d.prob(kC), kToyCProbC, 1e-15);
  EXPECT_NEAR(d.prob(kA), kToyCProbOther, 1e-15);
  EXPECT_NEAR(d.prob(kB), kToyCProbOther, 1e-15);
}

TEST(TemExactTest, GammaZeroIsUniform) {
  MetricSpace space = MakeGaussianSpace(17, 3, 4);
  for (double eps : {0.1, 1.0, 50.0}) {
    ASSERT_OK_AND_ASSIGN(CandidateSet set, RangeQuery(space, 5, 0.0));
    ASSERT_OK_AND_ASSIGN(Distribution d, TemExactDistribution(set.view(), Params(eps, 0.0)));
    for (WordId y = 0; y < space.size(); ++y) EXPECT_NEAR(d.prob(y), 1.0 / 17, 1e-15);
  }
}

TEST(TemExactTest, EmptyComplementIsPlainSoftmax) {
  MetricSpace toy = MakeToySpace();
  ASSERT_OK_AND_ASSIGN(CandidateSet set, RangeQuery(toy, kA, 5.0));
  ASSERT_EQ(set.complement_count, 0u);
  ASSERT_OK_AND_ASSIGN(Distribution d, TemExactDistribution(set.view(), Params(2.0, 5.0)));
  const double z = 1.0 + std::exp(-1.0) + std::exp(-5.0);
  EXPECT_NEAR(d.prob(kA), 1.0 / z, 1e-15);
  EXPECT_NEAR(d.prob(kB), std::exp(-1.0) / z, 1e-15);
  EXPECT_NEAR(d.prob(kC), std::exp(-5.0) / z, 1e-15);
}

TEST(TemExactTest, NormalizedOnRandomInstances) {
  RandomSource rng(3);
  for (int t = 0; t < 40; ++t) {
    MetricSpace space = MakeGaussianSpace(2 + rng.UniformIndex(60), 1 + rng.UniformIndex(6), t);
    const double gamma = 4.0 * rng.UniformOpen();
    const double eps = 0.05 + 10.0 * rng.UniformOpen();
    const WordId w = rng.UniformIndex(space.size());
    ASSERT_OK_AND_ASSIGN(CandidateSet set, RangeQuery(space, w, gamma));
    ASSERT_OK_AND_ASSIGN(Distribution d, TemExactDistribution(set.view(), Params(eps, gamma)));
    double sum = 0.0;
    for (double p : d.probs()) sum += p;
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(TemExactTest, ExtremeEpsilonStaysFinite) {
  MetricSpace toy = MakeToySpace();
  ASSERT_OK_AND_ASSIGN(CandidateSet set, RangeQuery(toy, kA, 2.0));
  ASSERT_OK_AND_ASSIGN(Distribution d, TemExactDistribution(set.view(), Params(1e6, 2.0)));
  EXPECT_OK(d.CheckNormalized());
  EXPECT_NEAR(d.prob(kA), 1.0, 1e-15);
  EXPECT_TRUE(std::isfinite(d.log_prob(kC)));
}

TEST(TemExactTest, InputProbabilityNondecreasingInEpsilon) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    MetricSpace space = MakeGaussianSpace(25, 3, seed);
    for (WordId w = 0; w < space.size(); w += 6) {
      ASSERT_OK_AND_ASSIGN(CandidateSet set, RangeQuery(space, w, 1.5));
      double prev = 0.0;
      for (double eps : {0.01, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
        ASSERT_OK_AND_ASSIGN(Distribution d, TemExactDistribution(set.view(), Params(eps, 1.5)));
        EXPECT_GE(d.prob(w), prev - 1e-15);
        prev = d.prob(w);
      }
    }
  }
}

TEST(TemExactTest, TwoStageMatchesFlat) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    MetricSpace space = MakeGaussianSpace(40, 4, seed);
    for (WordId w = 0; w < space.size(); w += 7) {
      ASSERT_OK_AND_ASSIGN(CandidateSet set, RangeQuery(space, w, 2.0));
      ASSERT_OK_AND_ASSIGN(Distribution flat, TemExactDistribution(set.view(), Params(1.3, 2.0)));
      ASSERT_OK_AND_ASSIGN(Distribution two, TemTwoStageDistribution(set.view(), Params(1.3, 2.0)));
      EXPECT_LE(MaxAbsDifference(flat, two), 1e-12);
    }
  }
}

TEST(TemExactTest, RejectsOversizedVocabulary) {
  const std::vector<Candidate> members{{0, 0.0}};
  const CandidateView big{0, 1.0, members, kMaxExactOracleVocab};
  EXPECT_THAT(TemExactDistribution(big, Params(1.0, 1.0)),
              StatusIs(absl::StatusCode::kResourceExhausted, HasSubstr("limited")));
  // The sampling path has no size limit.
  RandomSource rng(1);
  EXPECT_OK(TemPrivatizeWord(big, Params(1.0, 1.0), rng));
}

TEST(TemPrivatizeTest, GammaMismatchRejected) {
  MetricSpace toy = MakeToySpace();
  ASSERT_OK_AND_ASSIGN(CandidateSet set, RangeQuery(toy, kA, 2.0));
  RandomSource rng(1);
  EXPECT_THAT(TemPrivatizeWord(set.view(), Params(2.0, 3.0), rng),
              StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("built for gamma")));
  EXPECT_THAT(TemExactDistribution(set.view(), Params(2.0, 3.0)),
              StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("built for gamma")));
}

TEST(TemPrivatizeTest, EmpiricalMatchesOracleOnToy) {
  MetricSpace toy = MakeToySpace();
  const PrivacyParams p = Params(2.0, 2.0);
  for (WordId w = 0; w < 3; ++w) {
    ASSERT_OK_AND_ASSIGN(CandidateSet set, RangeQuery(toy, w, 2.0));
    ASSERT_OK_AND_ASSIGN(Distribution exact, TemExactDistribution(set.view(), p));
    const auto counts = SampleCounts(set.view(), p, 3, 100000, 100 + w);
    EXPECT_LT(TotalVariation(exact, counts), 0.01) << "input " << w;
    for (WordId y = 0; y < 3; ++y) {
      EXPECT_NEAR(counts[y] / 1e5, exact.prob(y), 0.01);
    }
  }
}

TEST(TemPrivatizeTest, EmpiricalDetectsWrongBottomWeight) {
  MetricSpace toy = MakeToySpace();
  const PrivacyParams p = Params(2.0, 2.0);
  ASSERT_OK_AND_ASSIGN(CandidateSet set, RangeQuery(toy, kA, 2.0));
  ASSERT_OK_AND_ASSIGN(Distribution broken,
                       MakeTemOracle(toy, p, TemOracleMutation::kDoubleBottomWeight)(kA));
  const auto counts = SampleCounts(set.view(), p, 3, 100000, 7);
  EXPECT_GT(TotalVariation(broken, counts), 0.05);
}

TEST(TemPrivatizeTest, EmpiricalMatchesOracleWithLargeComplement) {
  MetricSpace space = MakeGaussianSpace(50, 2, 9);
  const PrivacyParams p = Params(1.0, 0.8);
  for (WordId w : {0u, 17u, 49u}) {
    ASSERT_OK_AND_ASSIGN(CandidateSet set, RangeQuery(space, w, 0.8));
    ASSERT_GT(set.complement_count, 10u);
    ASSERT_OK_AND_ASSIGN(Distribution exact, TemExactDistribution(set.view(), p));
    const auto counts = SampleCounts(set.view(), p, 50, 100000, 200 + w);
    EXPECT_LT(TotalVariation(exact, counts), 0.01) << "input " << w;
  }
}

TEST(TemPrivatizeTest, HugeEpsilonReturnsInput) {
  MetricSpace toy = MakeToySpace();
  const PrivacyParams p = Params(1e6, 2.0);
  for (WordId w = 0; w < 3; ++w) {
    ASSERT_OK_AND_ASSIGN(CandidateSet set, RangeQuery(toy, w, 2.0));
    const auto counts = SampleCounts(set.view(), p, 3, 10000, w);
    EXPECT_GE(counts[w], 9990u);
  }
}

TEST(TemPrivatizeTest, EmptyComplementNeverLeavesSupport) {
  ASSERT_OK_AND_ASSIGN(MetricSpace s, MakeSpaceFromPoints(1, {0.0, 0.5, 1.0}));
  ASSERT_OK_AND_ASSIGN(CandidateSet set, RangeQuery(s, 0, 1.0));
  ASSERT_EQ(set.complement_count, 0u);
  ASSERT_OK_AND_ASSIGN(Distribution exact, TemExactDistribution(set.view(), Params(1.0, 1.0)));
  const auto counts = SampleCounts(set.view(), Params(1.0, 1.0), 3, 100000, 3);
  EXPECT_LT(TotalVariation(exact, counts), 0.01);
}

TEST(TemPrivatizeTest, SameSeedSameOutputs) {
  MetricSpace space = MakeGaussianSpace(30, 3, 1);
  ASSERT_OK_AND_ASSIGN(CandidateSet set, RangeQuery(space, 4, 1.0));
  EXPECT_EQ(SampleCounts(set.view(), Params(1.0, 1.0), 30, 500, 77),
            SampleCounts(set.view(), Params(1.0, 1.0), 30, 500, 77));
}

TEST(SampleComplementTest, UniformOverComplementOnly) {
  MetricSpace space = MakeGaussianSpace(12, 2, 2);
  ASSERT_OK_AND_ASSIGN(CandidateSet set, RangeQuery(space, 3, 1.0));
  ASSERT_GT(set.complement_count, 1u);
  std::vector<bool> member(12, false);
  for (const Candidate& c : set.members) member[c.id] = true;
  std::vector<size_t> counts(12, 0);
  RandomSource rng(5);
  constexpr size_t kDraws = 120000;
  for (size_t i = 0; i < kDraws; ++i) ++counts[SampleComplement(set.view(), rng)];
  const double expected = static_cast<double>(kDraws) / set.complement_count;
  for (WordId y = 0; y < 12; ++y) {
    if (member[y]) {
      EXPECT_EQ(counts[y], 0u);
    } else {
      EXPECT_NEAR(counts[y], expected, 0.05 * expected);
    }
  }
}

TEST(SampleComplementTest, CoversExtremeIds) {
  // Members {1, 2}; complement {0, 3}.
  const std::vector<Candidate> members{{1, 0.0}, {2, 0.1}};
  const CandidateView set{1, 1.0, members, 2};
  RandomSource rng(6);
  std::vector<size_t> counts(4, 0);
  for (int i = 0; i < 10000; ++i) ++counts[SampleComplement(set, rng)];
  EXPECT_EQ(counts[1] + counts[2], 0u);
  EXPECT_GT(counts[0], 4500u);
  EXPECT_GT(counts[3], 4500u);
}

TEST(TemMechanismTest, IndexedAndUnindexedAgree) {
  MetricSpace space = MakeGaussianSpace(40, 3, 8);
  const PrivacyParams p = Params(1.5, 1.2);
  ASSERT_OK_AND_ASSIGN(TruncationIndex built, TruncationIndex::Build(space, 1.2));
  auto index = std::make_shared<const TruncationIndex>(std::move(built));
  ASSERT_OK_AND_ASSIGN(TemMechanism with, TemMechanism::Create(space, p, index));
  ASSERT_OK_AND_ASSIGN(TemMechanism without, TemMechanism::CreateWithoutIndex(space, p));
  EXPECT_TRUE(with.has_index());
  EXPECT_FALSE(without.has_index());
  for (WordId w = 0; w < space.size(); ++w) {
    ASSERT_OK_AND_ASSIGN(Distribution d1, with.ExactDistribution(w));
    ASSERT_OK_AND_ASSIGN(Distribution d2, without.ExactDistribution(w));
    EXPECT_LE(MaxAbsDifference(d1, d2), 1e-12);
    RandomSource r1 = RandomSource::ForSubstream(3, w);
    RandomSource r2 = RandomSource::ForSubstream(3, w);
    for (int k = 0; k < 20; ++k) EXPECT_EQ(*with.Privatize(w, r1), *without.Privatize(w, r2));
  }
  RandomSource rng(0);
  EXPECT_THAT(with.Privatize(40, rng), StatusIs(absl::StatusCode::kOutOfRange));
  EXPECT_THAT(without.Privatize(40, rng), StatusIs(absl::StatusCode::kOutOfRange));
}

TEST(TemMechanismTest, CreateRejectsMismatchedIndex) {
  MetricSpace toy = MakeToySpace();
  auto index = std::make_shared<const TruncationIndex>(*TruncationIndex::Build(toy, 2.0));
  EXPECT_THAT(TemMechanism::Create(toy, Params(1.0, 3.0), index),
              StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("gamma")));
  EXPECT_THAT(TemMechanism::Create(toy, Params(1.0, 2.0), nullptr),
              StatusIs(absl::StatusCode::kInvalidArgument));
  MetricSpace other = MakeGaussianSpace(3, 1, 0);
  EXPECT_THAT(TemMechanism::Create(other, Params(1.0, 2.0), index),
              StatusIs(absl::StatusCode::kFailedPrecondition, HasSubstr("fingerprint")));
}

}  // namespace
}  // namespace tem
