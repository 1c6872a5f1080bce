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

#include "tem/privacy_params.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "tem/status_macros.h"

namespace tem {

absl::Status ValidateEpsilon(double epsilon) {
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("Epsilon must be finite and positive, got ", epsilon));
  }
  return absl::OkStatus();
}

absl::Status ValidateBeta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Beta must lie in (0, 1), got ", beta));
  }
  return absl::OkStatus();
}

absl::StatusOr<double> CalibrateGamma(double epsilon, double beta,
                                      size_t vocab_size) {
  TEM_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  TEM_RETURN_IF_ERROR(ValidateBeta(beta));
  if (vocab_size < 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Calibration needs a vocabulary of at least 2 words, got ", vocab_size));
  }
  const double others = static_cast<double>(vocab_size - 1);
  const double gamma = (2.0 / epsilon) * std::log((1.0 - beta) * others / beta);
  return std::max(0.0, gamma);
}

absl::StatusOr<PrivacyParams> PrivacyParams::Create(double epsilon, double gamma,
                                                    std::optional<double> beta) {
  TEM_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  if (std::isnan(gamma) || gamma < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("Gamma must be >= 0, got ", gamma));
  }
  if (beta.has_value()) TEM_RETURN_IF_ERROR(ValidateBeta(*beta));
  return PrivacyParams{epsilon, gamma, beta};
}

absl::StatusOr<PrivacyParams> PrivacyParams::Calibrated(double epsilon,
                                                        double beta,
                                                        size_t vocab_size) {
  TEM_ASSIGN_OR_RETURN(double gamma, CalibrateGamma(epsilon, beta, vocab_size));
  return PrivacyParams{epsilon, gamma, beta};
}

}  // namespace tem
