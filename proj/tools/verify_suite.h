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

#ifndef TEM_TOOLS_VERIFY_SUITE_H_
#define TEM_TOOLS_VERIFY_SUITE_H_

#include <cstddef>
#include <cstdint>
#include <optional>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "tem/embedding_store.h"

namespace tem::cli {

inline constexpr double kDefaultVerifyBeta = 0.001;

struct VerifyOptions {
  double epsilon = 1.0;
  // At most one of gamma and beta; neither means beta = kDefaultVerifyBeta.
  std::optional<double> gamma;
  std::optional<double> beta;
  size_t trials = 20000;
  double alpha = 0.01;
  uint64_t seed = 0;
  // Runs the exact check against a TEM oracle whose beyond-gamma weight is
  // doubled. The suite is expected to fail.
  bool break_bottom_weight = false;
};

struct VerifyResult {
  nlohmann::json report;
  bool passed = false;
};

// Twelve points in the plane with several pairs closer than ln(2), so a
// doubled beyond-gamma weight is detectable at epsilon = 1.
MetricSpace BuiltinVerifySpace();

// Runs every check at the primary gamma (given, or calibrated from beta) and
// at 0, the median pairwise distance, and the diameter. Errors only on
// invalid input or a vocabulary too large for exhaustive checks.
absl::StatusOr<VerifyResult> RunVerifySuite(const MetricSpace& space,
                                            const VerifyOptions& options);

}  // namespace tem::cli

#endif  // TEM_TOOLS_VERIFY_SUITE_H_
