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

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "absl/strings/str_cat.h"
#include "tem/noise.h"
#include "tem/status_macros.h"

namespace tem {
namespace {

absl::Status CheckSelectionInputs(const CandidateView& set,
                                  const PrivacyParams& params) {
  TEM_RETURN_IF_ERROR(ValidateEpsilon(params.epsilon));
  if (set.gamma != params.gamma) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Candidate set was built for gamma ", set.gamma,
        " but the mechanism uses gamma ", params.gamma));
  }
  if (set.members.empty()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "Candidate set for word ", set.input, " is empty"));
  }
  return absl::OkStatus();
}

absl::Status CheckOracleInputs(const CandidateView& set,
                               const PrivacyParams& params) {
  TEM_RETURN_IF_ERROR(CheckSelectionInputs(set, params));
  if (set.vocab_size() > kMaxExactOracleVocab) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "Exact distribution limited to |W| <= ", kMaxExactOracleVocab,
        ", got ", set.vocab_size()));
  }
  return ValidateCandidates(set, set.vocab_size());
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

double BottomScore(const PrivacyParams& params, size_t complement_count) {
  return -params.gamma +
         2.0 * std::log(static_cast<double>(complement_count)) / params.epsilon;
}

WordId SampleComplement(const CandidateView& set, RandomSource& rng) {
  thread_local std::vector<WordId> sorted;
  sorted.clear();
  for (const Candidate& c : set.members) sorted.push_back(c.id);
  std::sort(sorted.begin(), sorted.end());
  // The k-th id (0-based) missing from `sorted`: the first position j with
  // sorted[j] - j > k has exactly j members below the answer.
  const uint64_t k = rng.UniformIndex(set.complement_count);
  size_t lo = 0;
  size_t hi = sorted.size();
  while (lo < hi) {
    const size_t mid = lo + (hi - lo) / 2;
    if (sorted[mid] - mid > k) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return static_cast<WordId>(k + lo);
}

absl::StatusOr<WordId> TemPrivatizeWord(const CandidateView& set,
                                        const PrivacyParams& params,
                                        RandomSource& rng) {
  TEM_RETURN_IF_ERROR(CheckSelectionInputs(set, params));
  const double scale = params.gumbel_scale();
  double best = kNegInf;
  WordId best_id = std::numeric_limits<WordId>::max();
  for (const Candidate& c : set.members) {
    const double noisy = -c.distance + SampleGumbel(rng, scale);
    if (noisy > best || (noisy == best && c.id < best_id)) {
      best = noisy;
      best_id = c.id;
    }
  }
  if (set.complement_count > 0) {
    const double noisy =
        BottomScore(params, set.complement_count) + SampleGumbel(rng, scale);
    if (noisy > best) return SampleComplement(set, rng);
  }
  return best_id;
}

absl::StatusOr<Distribution> TemExactDistribution(const CandidateView& set,
                                                  const PrivacyParams& params) {
  TEM_RETURN_IF_ERROR(CheckOracleInputs(set, params));
  const double half = params.epsilon / 2.0;
  const size_t n = set.vocab_size();
  const double outside = -half * params.gamma;

  std::vector<double> log_weights(n, set.complement_count > 0 ? outside : kNegInf);
  std::vector<double> terms;
  terms.reserve(set.members.size() + 1);
  for (const Candidate& c : set.members) {
    log_weights[c.id] = -half * c.distance;
    terms.push_back(log_weights[c.id]);
  }
  if (set.complement_count > 0) {
    terms.push_back(std::log(static_cast<double>(set.complement_count)) + outside);
  }
  const double log_z = LogSumExp(terms);
  for (double& lw : log_weights) lw -= log_z;
  return Distribution(std::move(log_weights));
}

absl::StatusOr<Distribution> TemTwoStageDistribution(const CandidateView& set,
                                                     const PrivacyParams& params) {
  TEM_RETURN_IF_ERROR(CheckOracleInputs(set, params));
  const double half = params.epsilon / 2.0;
  const size_t n = set.vocab_size();

  std::vector<double> terms;
  terms.reserve(set.members.size() + 1);
  for (const Candidate& c : set.members) terms.push_back(half * -c.distance);
  double log_bottom_each = kNegInf;
  if (set.complement_count > 0) {
    terms.push_back(half * BottomScore(params, set.complement_count));
  }
  const double log_z = LogSumExp(terms);
  if (set.complement_count > 0) {
    log_bottom_each = terms.back() - log_z -
                      std::log(static_cast<double>(set.complement_count));
  }
  std::vector<double> log_probs(n, log_bottom_each);
  for (size_t k = 0; k < set.members.size(); ++k) {
    log_probs[set.members[k].id] = terms[k] - log_z;
  }
  return Distribution(std::move(log_probs));
}

absl::StatusOr<TemMechanism> TemMechanism::Create(
    MetricSpace space, PrivacyParams params,
    std::shared_ptr<const TruncationIndex> index) {
  TEM_RETURN_IF_ERROR(ValidateEpsilon(params.epsilon));
  if (index == nullptr) {
    return absl::InvalidArgumentError("TemMechanism::Create requires an index.");
  }
  TEM_RETURN_IF_ERROR(index->CheckCompatible(space));
  if (index->gamma() != params.gamma) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Index was built for gamma ", index->gamma(), " but params use gamma ",
        params.gamma));
  }
  return TemMechanism(std::move(space), params, std::move(index));
}

absl::StatusOr<TemMechanism> TemMechanism::CreateWithoutIndex(
    MetricSpace space, PrivacyParams params) {
  TEM_ASSIGN_OR_RETURN(params, PrivacyParams::Create(params.epsilon, params.gamma,
                                                     params.beta));
  return TemMechanism(std::move(space), params, nullptr);
}

absl::StatusOr<WordId> TemMechanism::Privatize(WordId input,
                                               RandomSource& rng) const {
  if (index_ != nullptr) {
    if (input >= index_->size()) {
      return absl::OutOfRangeError(absl::StrCat("Word id ", input, " out of range"));
    }
    return TemPrivatizeWord(index_->candidates(input), params_, rng);
  }
  TEM_ASSIGN_OR_RETURN(CandidateSet set, RangeQuery(space_, input, params_.gamma));
  return TemPrivatizeWord(set.view(), params_, rng);
}

absl::StatusOr<Distribution> TemMechanism::ExactDistribution(WordId input) const {
  if (index_ != nullptr) {
    TEM_ASSIGN_OR_RETURN(CandidateView view, index_->Lookup(input));
    return TemExactDistribution(view, params_);
  }
  TEM_ASSIGN_OR_RETURN(CandidateSet set, RangeQuery(space_, input, params_.gamma));
  return TemExactDistribution(set.view(), params_);
}

}  // namespace tem
