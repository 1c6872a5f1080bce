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

// Truncated exponential mechanism over a metric space of words.
//
// For an input w, every word within gamma of w is scored by its negated
// distance. The remaining |W \ L_w| words are collapsed into one "bottom"
// element scored -gamma + 2 ln|W \ L_w| / epsilon. Gumbel(0, 2 / epsilon) noise
// is added to every score and the argmax is released; if bottom wins, a
// uniform word outside L_w is released instead. This is an exponential
// mechanism in which each word outside L_w has weight exp(-epsilon*gamma/2).

#ifndef TEM_TEM_H_
#define TEM_TEM_H_

#include <cstddef>
#include <memory>

#include "absl/status/statusor.h"
#include "tem/candidate_index.h"
#include "tem/distribution.h"
#include "tem/mechanism.h"
#include "tem/privacy_params.h"
#include "tem/random_source.h"

namespace tem {

// Exact oracles refuse larger vocabularies; sampling has no such limit.
inline constexpr size_t kMaxExactOracleVocab = 10000;

// Score of the bottom element; requires complement_count >= 1.
double BottomScore(const PrivacyParams& params, size_t complement_count);

// Gumbel-max selection over the candidate set plus bottom (omitted when the
// complement is empty). Noise is drawn for members in order, then for bottom.
// Ties on the noisy score go to the smaller word id; bottom loses ties.
absl::StatusOr<WordId> TemPrivatizeWord(const CandidateView& set,
                                        const PrivacyParams& params,
                                        RandomSource& rng);

// Uniform word from W \ L_w without materializing the complement.
// Requires complement_count >= 1.
WordId SampleComplement(const CandidateView& set, RandomSource& rng);

// Closed-form output law: members weighted exp(-epsilon * d / 2), each
// complement word weighted exp(-epsilon * gamma / 2), normalized in log space.
absl::StatusOr<Distribution> TemExactDistribution(const CandidateView& set,
                                                  const PrivacyParams& params);

// The same law computed the way the sampler runs: a softmax over members and
// the bottom element, with bottom's mass split uniformly over the complement.
absl::StatusOr<Distribution> TemTwoStageDistribution(const CandidateView& set,
                                                     const PrivacyParams& params);

class TemMechanism final : public WordMechanism {
 public:
  // Looks candidates up in a prebuilt index, which must match `space` and
  // params.gamma.
  static absl::StatusOr<TemMechanism> Create(
      MetricSpace space, PrivacyParams params,
      std::shared_ptr<const TruncationIndex> index);

  // Runs an exact range query for every call instead of using an index.
  static absl::StatusOr<TemMechanism> CreateWithoutIndex(MetricSpace space,
                                                         PrivacyParams params);

  std::string_view name() const override { return "tem"; }
  const MetricSpace& space() const override { return space_; }
  const PrivacyParams& params() const { return params_; }
  bool has_index() const { return index_ != nullptr; }

  absl::StatusOr<WordId> Privatize(WordId input, RandomSource& rng) const override;
  absl::StatusOr<Distribution> ExactDistribution(WordId input) const;

 private:
  TemMechanism(MetricSpace space, PrivacyParams params,
               std::shared_ptr<const TruncationIndex> index)
      : space_(std::move(space)), params_(params), index_(std::move(index)) {}

  MetricSpace space_;
  PrivacyParams params_;
  std::shared_ptr<const TruncationIndex> index_;
};

}  // namespace tem

#endif  // TEM_TEM_H_
