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

#include "tem/distribution.h"

#include <algorithm>
#include <limits>

#include "absl/strings/str_cat.h"

namespace tem {

double LogSumExp(std::span<const double> xs) {
  double max = -std::numeric_limits<double>::infinity();
  for (double x : xs) max = std::max(max, x);
  if (!std::isfinite(max)) return max;
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - max);
  return max + std::log(sum);
}

std::vector<double> Distribution::probs() const {
  std::vector<double> out(log_probs_.size());
  std::transform(log_probs_.begin(), log_probs_.end(), out.begin(),
                 [](double lp) { return std::exp(lp); });
  return out;
}

absl::Status Distribution::CheckNormalized(double tolerance) const {
  if (log_probs_.empty()) {
    return absl::FailedPreconditionError("Distribution has empty support.");
  }
  double total = 0.0;
  for (size_t i = 0; i < log_probs_.size(); ++i) {
    const double lp = log_probs_[i];
    if (std::isnan(lp) || lp > tolerance) {
      return absl::FailedPreconditionError(
          absl::StrCat("Invalid log-probability ", lp, " for word ", i));
    }
    total += std::exp(lp);
  }
  if (std::abs(total - 1.0) > tolerance) {
    return absl::FailedPreconditionError(
        absl::StrCat("Distribution sums to ", total, ", not 1"));
  }
  return absl::OkStatus();
}

double MaxAbsDifference(const Distribution& p, const Distribution& q) {
  double worst = 0.0;
  for (WordId y = 0; y < p.size(); ++y) {
    worst = std::max(worst, std::abs(p.prob(y) - q.prob(y)));
  }
  return worst;
}

double TotalVariation(const Distribution& p, std::span<const size_t> counts) {
  size_t total = 0;
  for (size_t c : counts) total += c;
  if (total == 0) return 1.0;
  double l1 = 0.0;
  for (WordId y = 0; y < p.size(); ++y) {
    l1 += std::abs(p.prob(y) - static_cast<double>(counts[y]) / total);
  }
  return 0.5 * l1;
}

}  // namespace tem
