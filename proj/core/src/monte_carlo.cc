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

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "absl/strings/str_cat.h"
#include "tem/dp_verifier.h"
#include "tem/madlib.h"
#include "tem/noise.h"
#include "tem/status_macros.h"
#include "tem/tem.h"

namespace tem {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double SafeLog(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

}  // namespace

WordSampler MakeMadlibSampler(const MetricSpace& space, double epsilon) {
  return [space, epsilon](WordId w, RandomSource& rng) {
    return MadlibPrivatizeWord(space, w, epsilon, rng);
  };
}

WordSampler MakeTemSampler(const MetricSpace& space, const PrivacyParams& params) {
  return [space, params](WordId w, RandomSource& rng) -> absl::StatusOr<WordId> {
    TEM_ASSIGN_OR_RETURN(CandidateSet set, RangeQuery(space, w, params.gamma));
    return TemPrivatizeWord(set.view(), params, rng);
  };
}

WordSampler MakeIdentitySampler() {
  return [](WordId w, RandomSource&) -> absl::StatusOr<WordId> { return w; };
}

Interval WilsonInterval(size_t successes, size_t trials, double z) {
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

absl::StatusOr<MonteCarloReport> CheckMetricDpMonteCarlo(
    const WordSampler& sampler, const MetricSpace& space, double epsilon,
    const MonteCarloOptions& options) {
  TEM_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  if (options.trials < kMinMonteCarloTrials) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Monte Carlo check needs at least ", kMinMonteCarloTrials,
        " trials per input, got ", options.trials));
  }
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Alpha must lie in (0, 1), got ", options.alpha));
  }
  const size_t n = space.size();
  if (n > kMaxExactDpVocab) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "Monte Carlo check is limited to |W| <= ", kMaxExactDpVocab));
  }

  MonteCarloReport report;
  report.epsilon = epsilon;
  report.options = options;
  report.counts.assign(n, std::vector<size_t>(n, 0));
  for (WordId w = 0; w < n; ++w) {
    RandomSource rng = RandomSource::ForSubstream(options.seed, w);
    for (size_t t = 0; t < options.trials; ++t) {
      TEM_ASSIGN_OR_RETURN(WordId y, sampler(w, rng));
      if (y >= n) {
        return absl::OutOfRangeError(absl::StrCat("Sampler returned id ", y));
      }
      ++report.counts[w][y];
    }
  }

  const double intervals = static_cast<double>(n) * static_cast<double>(n);
  report.z = boost::math::quantile(boost::math::complement(
      boost::math::normal_distribution<double>(), options.alpha / (2.0 * intervals)));

  std::vector<double> log_lower(n * n);
  std::vector<double> log_upper(n * n);
  for (WordId w = 0; w < n; ++w) {
    for (WordId y = 0; y < n; ++y) {
      const Interval ci = WilsonInterval(report.counts[w][y], options.trials, report.z);
      log_lower[w * n + y] = SafeLog(ci.lower);
      log_upper[w * n + y] = SafeLog(ci.upper);
    }
  }
  report.max_certified_gap = kNegInf;
  for (WordId w = 0; w < n; ++w) {
    for (WordId w2 = 0; w2 < n; ++w2) {
      if (w == w2) continue;
      const double bound = epsilon * space.DistanceUnchecked(w, w2);
      for (WordId y = 0; y < n; ++y) {
        const double lo = log_lower[w * n + y];
        if (lo == kNegInf) continue;
        // Upper bounds are strictly positive for z > 0.
        const double gap = lo - log_upper[w2 * n + y] - bound;
        if (gap > report.max_certified_gap) {
          report.max_certified_gap = gap;
          report.worst = {w, w2, y};
        }
      }
    }
  }
  report.violation_certified = report.max_certified_gap > 0.0;
  report.verdict = report.violation_certified ? kViolationCertified : kNoViolationCertified;
  return report;
}

double KolmogorovSurvival(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

absl::StatusOr<KsReport> CheckExpBallRadius(size_t dim, double epsilon,
                                            size_t samples, double alpha,
                                            uint64_t seed) {
  TEM_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  if (dim == 0 || samples == 0) {
    return absl::InvalidArgumentError("Dimension and sample count must be positive.");
  }
  RandomSource rng(seed);
  std::vector<double> radii(samples);
  double total = 0.0;
  for (double& r : radii) {
    const std::vector<double> z = SampleExpBallNoise(rng, dim, epsilon);
    double sq = 0.0;
    for (double v : z) sq += v * v;
    r = std::sqrt(sq);
    total += r;
  }
  std::sort(radii.begin(), radii.end());
  const double shape = static_cast<double>(dim);
  const double n = static_cast<double>(samples);
  double d = 0.0;
  for (size_t i = 0; i < samples; ++i) {
    const double cdf = boost::math::gamma_p(shape, epsilon * radii[i]);
    d = std::max({d, (i + 1) / n - cdf, cdf - i / n});
  }
  KsReport report;
  report.dim = dim;
  report.epsilon = epsilon;
  report.samples = samples;
  report.statistic = d;
  const double root_n = std::sqrt(n);
  report.p_value = KolmogorovSurvival((root_n + 0.12 + 0.11 / root_n) * d);
  report.alpha = alpha;
  report.mean_radius = total / n;
  report.passed = report.p_value >= alpha;
  return report;
}

}  // namespace tem
