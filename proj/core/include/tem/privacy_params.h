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

#ifndef TEM_PRIVACY_PARAMS_H_
#define TEM_PRIVACY_PARAMS_H_

#include <cstddef>
#include <optional>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace tem {

absl::Status ValidateEpsilon(double epsilon);
absl::Status ValidateBeta(double beta);

// Smallest truncation threshold for which the mechanism stays within gamma of
// its input with probability at least 1 - beta on a vocabulary of the given
// size: (2 / epsilon) * ln((1 - beta) * (|W| - 1) / beta), clamped at 0.
absl::StatusOr<double> CalibrateGamma(double epsilon, double beta,
                                      size_t vocab_size);

struct PrivacyParams {
  double epsilon = 1.0;
  double gamma = 0.0;
  // Utility failure probability, set when gamma came from CalibrateGamma.
  std::optional<double> beta;

  static absl::StatusOr<PrivacyParams> Create(
      double epsilon, double gamma, std::optional<double> beta = std::nullopt);
  static absl::StatusOr<PrivacyParams> Calibrated(double epsilon, double beta,
                                                  size_t vocab_size);

  // Scale of the Gumbel noise added to every score.
  double gumbel_scale() const { return 2.0 / epsilon; }
};

}  // namespace tem

#endif  // TEM_PRIVACY_PARAMS_H_
