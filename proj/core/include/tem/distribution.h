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

#ifndef TEM_DISTRIBUTION_H_
#define TEM_DISTRIBUTION_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "tem/embedding_store.h"

namespace tem {

// log(sum(exp(x))), shifted by the maximum. Returns -inf for an empty span or
// when every entry is -inf.
double LogSumExp(std::span<const double> xs);

// Output law of a mechanism over the whole vocabulary, stored as natural-log
// probabilities so that ratio checks never divide.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(std::vector<double> log_probs)
      : log_probs_(std::move(log_probs)) {}

  size_t size() const { return log_probs_.size(); }
  double log_prob(WordId id) const { return log_probs_[id]; }
  double prob(WordId id) const { return std::exp(log_probs_[id]); }
  std::span<const double> log_probs() const { return log_probs_; }
  std::vector<double> probs() const;

  // Errors unless every probability is in [0, 1] and they sum to 1 within
  // `tolerance`.
  absl::Status CheckNormalized(double tolerance = 1e-9) const;

 private:
  std::vector<double> log_probs_;
};

// max_y |P(y) - Q(y)|; the sizes must match.
double MaxAbsDifference(const Distribution& p, const Distribution& q);

// Half the L1 distance between a distribution and empirical counts.
double TotalVariation(const Distribution& p, std::span<const size_t> counts);

}  // namespace tem

#endif  // TEM_DISTRIBUTION_H_
