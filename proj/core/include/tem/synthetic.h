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

// Generated metric spaces for tests, benchmarks, and the CLI's built-in
// verification instance.

#ifndef TEM_SYNTHETIC_H_
#define TEM_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "tem/embedding_store.h"

namespace tem {

// Words are named w0, w1, ... unless `names` is given.
absl::StatusOr<MetricSpace> MakeSpaceFromPoints(size_t dim,
                                                std::vector<double> values,
                                                std::vector<std::string> names = {});

// Three words on a line: a at 0, b at 1, c at 5.
MetricSpace MakeToySpace();

// Isotropic Gaussian points with standard deviation `scale`.
MetricSpace MakeGaussianSpace(size_t words, size_t dim, uint64_t seed,
                              double scale = 1.0);

// `words` points spread round-robin over `clusters` Gaussian centers (std
// `center_scale`), each point offset by Gaussian noise of std `spread`.
MetricSpace MakeClusteredSpace(size_t words, size_t dim, size_t clusters,
                               double center_scale, double spread,
                               uint64_t seed);

// Largest pairwise distance (exact, quadratic).
double Diameter(const MetricSpace& space);

// Median over unordered pairs of distinct words (exact, quadratic).
double MedianPairwiseDistance(const MetricSpace& space);

}  // namespace tem

#endif  // TEM_SYNTHETIC_H_
