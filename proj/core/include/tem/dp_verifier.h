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

// Executable checks of the privacy and utility guarantees on small instances.
//
// Exact checks enumerate every input pair and output in log space and pass
// when the largest violation is at most a fixed tolerance (1e-9 by default).
// Sampled checks can only certify a violation; when none is found the verdict
// is "no violation certified", which is evidence rather than proof.

#ifndef TEM_DP_VERIFIER_H_
#define TEM_DP_VERIFIER_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "tem/candidate_index.h"
#include "tem/distribution.h"
#include "tem/embedding_store.h"
#include "tem/privacy_params.h"
#include "tem/random_source.h"

namespace tem {

inline constexpr double kExactTolerance = 1e-9;
inline constexpr double kEquivalenceTolerance = 1e-12;
inline constexpr size_t kMaxSensitivityVocab = 200;
inline constexpr size_t kMaxExactDpVocab = 1000;
inline constexpr size_t kMinMonteCarloTrials = 10000;

// Meaning of the three ids depends on the check; see each report.
struct WordTriple {
  WordId first = 0;
  WordId second = 0;
  WordId third = 0;
};

// Membership of word i in the truncation sets of w and w'.
enum class SensitivityCase : int {
  kInsideBoth = 1,    // d(i, w) <= gamma and d(i, w') <= gamma
  kInsideFirst = 2,   // d(i, w) <= gamma <  d(i, w')
  kInsideSecond = 3,  // d(i, w) >  gamma >= d(i, w')
  kOutsideBoth = 4,   // d(i, w) >  gamma and d(i, w') > gamma
};

SensitivityCase ClassifySensitivityCase(double d_iw, double d_iw2, double gamma);

struct SensitivityReport {
  double gamma = 0.0;
  double tolerance = kExactTolerance;
  size_t triples_checked = 0;
  // max over (i, w, w') of |f(i, w) - f(i, w')| - d(w, w'), where
  // f(i, w) = -min(d(i, w), gamma).
  double max_violation = 0.0;
  WordTriple worst;  // (i, w, w')
  SensitivityCase worst_case = SensitivityCase::kInsideBoth;
  std::array<size_t, 4> case_counts{};
  bool passed = false;
};

// Exhaustive over all ordered (i, w, w'); |W| <= kMaxSensitivityVocab.
// gamma may be +infinity (untruncated scores).
absl::StatusOr<SensitivityReport> CheckSensitivityLemma(
    const MetricSpace& space, double gamma, double tolerance = kExactTolerance);

using DistributionOracle = std::function<absl::StatusOr<Distribution>(WordId)>;

enum class TemOracleMutation {
  kNone,
  // Doubles the aggregated weight of the words beyond gamma, then renormalizes.
  kDoubleBottomWeight,
};

// Exact TEM output law per input, using on-the-fly range queries.
DistributionOracle MakeTemOracle(const MetricSpace& space,
                                 const PrivacyParams& params,
                                 TemOracleMutation mutation = TemOracleMutation::kNone);

struct DpCheckReport {
  double epsilon = 0.0;
  double tolerance = kExactTolerance;
  size_t pairs_checked = 0;
  size_t triples_checked = 0;
  // max over (w, w', y) of ln P_w(y) - ln P_w'(y) - epsilon * d(w, w').
  double max_log_ratio_violation = 0.0;
  WordTriple worst;  // (w, w', y)
  bool passed = false;
};

// Exhaustive over (w, w', y); |W| <= kMaxExactDpVocab. Errors if any oracle
// distribution is not normalized.
absl::StatusOr<DpCheckReport> CheckMetricDpExact(const DistributionOracle& oracle,
                                                 const MetricSpace& space,
                                                 double epsilon,
                                                 double tolerance = kExactTolerance);

// Probability of leaving gamma in the worst case where only the input lies
// within gamma: (|W|-1) e^{-eps*gamma/2} / (1 + (|W|-1) e^{-eps*gamma/2}).
double WorstCaseOutsideMass(double epsilon, double gamma, size_t vocab_size);

struct UtilityReport {
  double epsilon = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double tolerance = kExactTolerance;
  std::vector<double> mass_within_gamma;
  double min_mass = 0.0;
  WordId min_input = 0;
  double analytic_outside_mass = 0.0;
  bool analytic_passed = false;
  bool passed = false;
};

// Calibrates gamma, then sums the exact TEM output mass within gamma for
// every input.
absl::StatusOr<UtilityReport> CheckUtilityBound(const MetricSpace& space,
                                                double epsilon, double beta,
                                                double tolerance = kExactTolerance);

using WordSampler = std::function<absl::StatusOr<WordId>(WordId, RandomSource&)>;

WordSampler MakeMadlibSampler(const MetricSpace& space, double epsilon);
WordSampler MakeTemSampler(const MetricSpace& space, const PrivacyParams& params);
// Always returns its input; not private for any epsilon.
WordSampler MakeIdentitySampler();

struct MonteCarloOptions {
  size_t trials = 100000;
  // Family-wise error rate over all |W|^2 Wilson intervals (Bonferroni).
  double alpha = 0.01;
  uint64_t seed = 0;
};

inline constexpr char kNoViolationCertified[] = "no violation certified";
inline constexpr char kViolationCertified[] = "violation certified";

struct MonteCarloReport {
  double epsilon = 0.0;
  MonteCarloOptions options;
  double z = 0.0;
  // counts[w][y]: times input w produced y.
  std::vector<std::vector<size_t>> counts;
  // max over (w, w', y) of ln lower_w(y) - ln upper_w'(y) - epsilon * d(w, w').
  double max_certified_gap = 0.0;
  WordTriple worst;  // (w, w', y)
  bool violation_certified = false;
  std::string verdict;
};

absl::StatusOr<MonteCarloReport> CheckMetricDpMonteCarlo(
    const WordSampler& sampler, const MetricSpace& space, double epsilon,
    const MonteCarloOptions& options = {});

// Two-sided Wilson score interval for k successes in n trials.
struct Interval {
  double lower;
  double upper;
};
Interval WilsonInterval(size_t successes, size_t trials, double z);

struct EquivalenceReport {
  size_t words_checked = 0;
  double max_abs_difference = 0.0;
  WordId worst_word = 0;
  size_t samples_compared = 0;
  size_t sample_mismatches = 0;
  bool passed = false;
};

// Compares the range-query path with the prebuilt-index path: exact
// distributions per word, and sampled outputs under identical seeds.
absl::StatusOr<EquivalenceReport> CheckAlgEquivalence(
    const MetricSpace& space, const PrivacyParams& params,
    const TruncationIndex& index, uint64_t seed, size_t samples_per_word = 64,
    double tolerance = kEquivalenceTolerance);
absl::StatusOr<EquivalenceReport> CheckAlgEquivalence(
    const MetricSpace& space, const PrivacyParams& params, uint64_t seed,
    size_t samples_per_word = 64, double tolerance = kEquivalenceTolerance);

struct BottomEquivalenceReport {
  size_t words_checked = 0;
  double max_abs_difference = 0.0;
  WordId worst_word = 0;
  bool passed = false;
};

// Flat softmax (each outside word weighted e^{-eps*gamma/2}) against the
// two-stage bottom-then-uniform law, for every input.
absl::StatusOr<BottomEquivalenceReport> CheckBottomEquivalence(
    const MetricSpace& space, const PrivacyParams& params,
    double tolerance = kEquivalenceTolerance);

struct KsReport {
  size_t dim = 0;
  double epsilon = 0.0;
  size_t samples = 0;
  double statistic = 0.0;
  double p_value = 0.0;
  double alpha = 0.0;
  double mean_radius = 0.0;
  bool passed = false;
};

// Kolmogorov-Smirnov test of |z| for z from SampleExpBallNoise against
// Gamma(shape dim, rate epsilon).
absl::StatusOr<KsReport> CheckExpBallRadius(size_t dim, double epsilon,
                                            size_t samples, double alpha,
                                            uint64_t seed);

// Asymptotic Kolmogorov survival function Q(lambda) = P(K > lambda).
double KolmogorovSurvival(double lambda);

}  // namespace tem

#endif  // TEM_DP_VERIFIER_H_
