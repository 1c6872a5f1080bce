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

// Laplacian baseline: perturb the embedding with noise of density
// proportional to exp(-epsilon * |z|) and release the nearest word.

#ifndef TEM_MADLIB_H_
#define TEM_MADLIB_H_

#include "absl/status/statusor.h"
#include "tem/embedding_store.h"
#include "tem/mechanism.h"
#include "tem/random_source.h"

namespace tem {

absl::StatusOr<WordId> MadlibPrivatizeWord(const MetricSpace& space,
                                           WordId input, double epsilon,
                                           RandomSource& rng);

class MadlibMechanism final : public WordMechanism {
 public:
  static absl::StatusOr<MadlibMechanism> Create(MetricSpace space,
                                                double epsilon);

  std::string_view name() const override { return "madlib"; }
  const MetricSpace& space() const override { return space_; }
  double epsilon() const { return epsilon_; }

  absl::StatusOr<WordId> Privatize(WordId input, RandomSource& rng) const override {
    return MadlibPrivatizeWord(space_, input, epsilon_, rng);
  }

 private:
  MadlibMechanism(MetricSpace space, double epsilon)
      : space_(std::move(space)), epsilon_(epsilon) {}

  MetricSpace space_;
  double epsilon_;
};

}  // namespace tem

#endif  // TEM_MADLIB_H_
