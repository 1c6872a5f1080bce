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

#include "tem/madlib.h"

#include <vector>

#include "absl/strings/str_cat.h"
#include "tem/candidate_index.h"
#include "tem/noise.h"
#include "tem/privacy_params.h"
#include "tem/status_macros.h"

namespace tem {

absl::StatusOr<WordId> MadlibPrivatizeWord(const MetricSpace& space,
                                           WordId input, double epsilon,
                                           RandomSource& rng) {
  TEM_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  if (!space.contains(input)) {
    return absl::OutOfRangeError(absl::StrCat(
        "Word id ", input, " out of range for |W| = ", space.size()));
  }
  std::vector<double> point = SampleExpBallNoise(rng, space.dim(), epsilon);
  const auto row = space.embeddings().row(input);
  for (size_t k = 0; k < point.size(); ++k) point[k] += row[k];
  return NearestNeighbor(space, point);
}

absl::StatusOr<MadlibMechanism> MadlibMechanism::Create(MetricSpace space,
                                                        double epsilon) {
  TEM_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  return MadlibMechanism(std::move(space), epsilon);
}

}  // namespace tem
