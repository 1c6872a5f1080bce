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

#include "tem/dp_verifier.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "absl/strings/str_cat.h"
#include "tem/status_macros.h"
#include "tem/tem.h"

namespace tem {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> DistanceMatrix(const MetricSpace& space) {
  const size_t n = space.size();
  std::vector<double> d(n * n);
  for (WordId a = 0; a < n; ++a) {
    for (WordId b = 0; b < n; ++b) d[a * n + b] = space.DistanceUnchecked(a, b);
  }
  return d;
}

// ln p - ln q, treating p = 0 as never violating and q = 0 < p as +inf.
double LogRatio(double log_p, double log_q) {
  if (log_p == kNegInf) return kNegInf;
  if (log_q == kNegInf) return kInf;
  return log_p - log_q;
}

absl::StatusOr<Distribution> MutatedTemDistribution(const MetricSpace& space,
                                                    const PrivacyParams& params,
                                                    WordId input) {
  TEM_ASSIGN_OR_RETURN(CandidateSet set, RangeQuery(space, input, params.gamma));
  TEM_ASSIGN_OR_RETURN(Distribution exact, TemExactDistribution(set.view(), params));
  if (set.complement_count == 0) return exact;
  // Scale the outside mass by two and renormalize: outside words get
  // 2p / (1 + p_out), members p / (1 + p_out).
  std::vector<bool> inside(space.size(), false);
  for (const Candidate& c : set.members) inside[c.id] = true;
  double outside_mass = 0.0;
  for (WordId y = 0; y < space.size(); ++y) {
    if (!inside[y]) outside_mass += exact.prob(y);
  }
  const double log_norm = std::log1p(outside_mass);
  std::vector<double> lp(exact.log_probs().begin(), exact.log_probs().end());
  for (WordId y = 0; y < space.size(); ++y) {
    lp[y] += (inside[y] ? 0.0 : std::log(2.0)) - log_norm;
  }
  return Distribution(std::move(lp));
}

}  // namespace

SensitivityCase ClassifySensitivityCase(double d_iw, double d_iw2, double gamma) {
  const bool in_first = d_iw <= gamma;
  const bool in_second = d_iw2 <= gamma;
  if (in_first && in_second) return SensitivityCase::kInsideBoth;
  if (in_first) return SensitivityCase::kInsideFirst;
  if (in_second) return SensitivityCase::kInsideSecond;
  return SensitivityCase::kOutsideBoth;
}

absl::StatusOr<SensitivityReport> CheckSensitivityLemma(const MetricSpace& space,
                                                        double gamma,
                                                        double tolerance) {
  if (std::isnan(gamma) || gamma < 0.0) {
    return absl::InvalidArgumentError(absl::StrCat("Gamma must be >= 0, got ", gamma));
  }
  const size_t n = space.size();
  if (n > kMaxSensitivityVocab) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "Sensitivity check is exhaustive over |W|^3 triples and limited to |W| <= ",
        kMaxSensitivityVocab, "; got ", n, ". Subsample the vocabulary."));
  }
  const std::vector<double> d = DistanceMatrix(space);
  SensitivityReport report;
  report.gamma = gamma;
  report.tolerance = tolerance;
  report.max_violation = kNegInf;
  for (WordId i = 0; i < n; ++i) {
    for (WordId w = 0; w < n; ++w) {
      const double d_iw = d[i * n + w];
      const double f_w = -std::min(d_iw, gamma);
      for (WordId w2 = 0; w2 < n; ++w2) {
        const double d_iw2 = d[i * n + w2];
        const double f_w2 = -std::min(d_iw2, gamma);
        const SensitivityCase c = ClassifySensitivityCase(d_iw, d_iw2, gamma);
        ++report.case_counts[static_cast<int>(c) - 1];
        const double violation = std::abs(f_w - f_w2) - d[w * n + w2];
        if (violation > report.max_violation) {
          report.max_violation = violation;
          report.worst = {i, w, w2};
          report.worst_case = c;
        }
        ++report.triples_checked;
      }
    }
  }
  report.passed = report.max_violation <= tolerance;
  return report;
}

DistributionOracle MakeTemOracle(const MetricSpace& space,
                                 const PrivacyParams& params,
                                 TemOracleMutation mutation) {
  return [space, params, mutation](WordId input) -> absl::StatusOr<Distribution> {
    if (mutation == TemOracleMutation::kDoubleBottomWeight) {
      return MutatedTemDistribution(space, params, input);
    }
    TEM_ASSIGN_OR_RETURN(CandidateSet set, RangeQuery(space, input, params.gamma));
    return TemExactDistribution(set.view(), params);
  };
}

absl::StatusOr<DpCheckReport> CheckMetricDpExact(const DistributionOracle& oracle,
                                                 const MetricSpace& space,
                                                 double epsilon,
                                                 double tolerance) {
  TEM_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  const size_t n = space.size();
  if (n > kMaxExactDpVocab) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "Exact DP check is limited to |W| <= ", kMaxExactDpVocab, "; got ", n,
        ". Subsample the vocabulary."));
  }
  std::vector<Distribution> laws;
  laws.reserve(n);
  for (WordId w = 0; w < n; ++w) {
    TEM_ASSIGN_OR_RETURN(Distribution p, oracle(w));
    if (p.size() != n) {
      return absl::FailedPreconditionError(absl::StrCat(
          "Oracle distribution for word ", w, " has support size ", p.size()));
    }
    absl::Status normalized = p.CheckNormalized(tolerance);
    if (!normalized.ok()) {
      return absl::FailedPreconditionError(absl::StrCat(
          "Oracle distribution for word ", w, " is not normalized: ",
          normalized.message()));
    }
    laws.push_back(std::move(p));
  }

  DpCheckReport report;
  report.epsilon = epsilon;
  report.tolerance = tolerance;
  report.max_log_ratio_violation = kNegInf;
  for (WordId w = 0; w < n; ++w) {
    const auto lp_w = laws[w].log_probs();
    for (WordId w2 = 0; w2 < n; ++w2) {
      const auto lp_w2 = laws[w2].log_probs();
      const double bound = epsilon * space.DistanceUnchecked(w, w2);
      for (WordId y = 0; y < n; ++y) {
        const double violation = LogRatio(lp_w[y], lp_w2[y]) - bound;
        if (violation > report.max_log_ratio_violation) {
          report.max_log_ratio_violation = violation;
          report.worst = {w, w2, y};
        }
      }
      ++report.pairs_checked;
      report.triples_checked += n;
    }
  }
  report.passed = report.max_log_ratio_violation <= tolerance;
  return report;
}

double WorstCaseOutsideMass(double epsilon, double gamma, size_t vocab_size) {
  if (vocab_size < 2) return 0.0;
  // Logistic of t = ln(|W|-1) - eps*gamma/2, evaluated on the stable side.
  const double t = std::log(static_cast<double>(vocab_size - 1)) - epsilon * gamma / 2.0;
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

absl::StatusOr<UtilityReport> CheckUtilityBound(const MetricSpace& space,
                                                double epsilon, double beta,
                                                double tolerance) {
  TEM_ASSIGN_OR_RETURN(PrivacyParams params,
                       PrivacyParams::Calibrated(epsilon, beta, space.size()));
  UtilityReport report;
  report.epsilon = epsilon;
  report.beta = beta;
  report.gamma = params.gamma;
  report.tolerance = tolerance;
  report.min_mass = std::numeric_limits<double>::infinity();
  report.mass_within_gamma.reserve(space.size());
  for (WordId w = 0; w < space.size(); ++w) {
    TEM_ASSIGN_OR_RETURN(CandidateSet set, RangeQuery(space, w, params.gamma));
    TEM_ASSIGN_OR_RETURN(Distribution p, TemExactDistribution(set.view(), params));
    std::vector<double> inside;
    inside.reserve(set.members.size());
    for (const Candidate& c : set.members) inside.push_back(p.log_prob(c.id));
    const double mass = std::exp(LogSumExp(inside));
    report.mass_within_gamma.push_back(mass);
    if (mass < report.min_mass) {
      report.min_mass = mass;
      report.min_input = w;
    }
  }
  report.analytic_outside_mass = WorstCaseOutsideMass(epsilon, params.gamma, space.size());
  report.analytic_passed = report.analytic_outside_mass <= beta + tolerance;
  report.passed = report.analytic_passed && report.min_mass >= 1.0 - beta - tolerance;
  return report;
}

absl::StatusOr<EquivalenceReport> CheckAlgEquivalence(
    const MetricSpace& space, const PrivacyParams& params,
    const TruncationIndex& index, uint64_t seed, size_t samples_per_word,
    double tolerance) {
  TEM_RETURN_IF_ERROR(index.CheckCompatible(space));
  if (index.gamma() != params.gamma) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Index gamma ", index.gamma(), " differs from params gamma ", params.gamma));
  }
  EquivalenceReport report;
  for (WordId w = 0; w < space.size(); ++w) {
    TEM_ASSIGN_OR_RETURN(CandidateSet scanned, RangeQuery(space, w, params.gamma));
    const CandidateView indexed = index.candidates(w);
    TEM_ASSIGN_OR_RETURN(Distribution direct, TemExactDistribution(scanned.view(), params));
    absl::StatusOr<Distribution> via_index = TemExactDistribution(indexed, params);
    if (!via_index.ok()) {
      // A structurally broken candidate list cannot match the scan.
      report.max_abs_difference = std::numeric_limits<double>::infinity();
      report.worst_word = w;
    } else {
      const double diff = MaxAbsDifference(direct, *via_index);
      if (diff > report.max_abs_difference) {
        report.max_abs_difference = diff;
        report.worst_word = w;
      }
    }
    RandomSource rng_scan = RandomSource::ForSubstream(seed, w);
    RandomSource rng_index = RandomSource::ForSubstream(seed, w);
    for (size_t s = 0; s < samples_per_word; ++s) {
      TEM_ASSIGN_OR_RETURN(WordId a, TemPrivatizeWord(scanned.view(), params, rng_scan));
      absl::StatusOr<WordId> b = TemPrivatizeWord(indexed, params, rng_index);
      ++report.samples_compared;
      if (!b.ok() || *b != a) ++report.sample_mismatches;
    }
    ++report.words_checked;
  }
  report.passed = report.max_abs_difference <= tolerance && report.sample_mismatches == 0;
  return report;
}

absl::StatusOr<EquivalenceReport> CheckAlgEquivalence(const MetricSpace& space,
                                                      const PrivacyParams& params,
                                                      uint64_t seed,
                                                      size_t samples_per_word,
                                                      double tolerance) {
  TEM_ASSIGN_OR_RETURN(TruncationIndex index, TruncationIndex::Build(space, params.gamma));
  return CheckAlgEquivalence(space, params, index, seed, samples_per_word, tolerance);
}

absl::StatusOr<BottomEquivalenceReport> CheckBottomEquivalence(
    const MetricSpace& space, const PrivacyParams& params, double tolerance) {
  BottomEquivalenceReport report;
  for (WordId w = 0; w < space.size(); ++w) {
    TEM_ASSIGN_OR_RETURN(CandidateSet set, RangeQuery(space, w, params.gamma));
    TEM_ASSIGN_OR_RETURN(Distribution flat, TemExactDistribution(set.view(), params));
    TEM_ASSIGN_OR_RETURN(Distribution staged, TemTwoStageDistribution(set.view(), params));
    const double diff = MaxAbsDifference(flat, staged);
    if (diff > report.max_abs_difference) {
      report.max_abs_difference = diff;
      report.worst_word = w;
    }
    ++report.words_checked;
  }
  report.passed = report.max_abs_difference <= tolerance;
  return report;
}

}  // namespace tem
