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

#include "tem/synthetic.h"

#include <algorithm>
#include <utility>

#include "absl/strings/str_cat.h"
#include "tem/random_source.h"
#include "tem/status_macros.h"

namespace tem {

absl::StatusOr<MetricSpace> MakeSpaceFromPoints(size_t dim,
                                                std::vector<double> values,
                                                std::vector<std::string> names) {
  TEM_ASSIGN_OR_RETURN(EmbeddingMatrix matrix,
                       EmbeddingMatrix::Create(dim, std::move(values)));
  if (names.empty()) {
    names.reserve(matrix.rows());
    for (size_t i = 0; i < matrix.rows(); ++i) names.push_back(absl::StrCat("w", i));
  }
  TEM_ASSIGN_OR_RETURN(Vocabulary vocab, Vocabulary::Create(std::move(names)));
  return MetricSpace::Create(std::move(vocab), std::move(matrix));
}

MetricSpace MakeToySpace() {
  return *MakeSpaceFromPoints(1, {0.0, 1.0, 5.0}, {"a", "b", "c"});
}

MetricSpace MakeGaussianSpace(size_t words, size_t dim, uint64_t seed,
                              double scale) {
  RandomSource rng(seed);
  std::vector<double> values(words * dim);
  for (double& v : values) v = scale * rng.StandardNormal();
  return *MakeSpaceFromPoints(dim, std::move(values));
}

MetricSpace MakeClusteredSpace(size_t words, size_t dim, size_t clusters,
                               double center_scale, double spread,
                               uint64_t seed) {
  RandomSource rng(seed);
  clusters = std::max<size_t>(1, clusters);
  std::vector<double> centers(clusters * dim);
  for (double& v : centers) v = center_scale * rng.StandardNormal();
  std::vector<double> values(words * dim);
  for (size_t i = 0; i < words; ++i) {
    const double* c = &centers[(i % clusters) * dim];
    for (size_t k = 0; k < dim; ++k) {
      values[i * dim + k] = c[k] + spread * rng.StandardNormal();
    }
  }
  return *MakeSpaceFromPoints(dim, std::move(values));
}

double Diameter(const MetricSpace& space) {
  double best = 0.0;
  for (WordId a = 0; a < space.size(); ++a) {
    for (WordId b = a + 1; b < space.size(); ++b) {
      best = std::max(best, space.DistanceUnchecked(a, b));
    }
  }
  return best;
}

double MedianPairwiseDistance(const MetricSpace& space) {
  std::vector<double> d;
  for (WordId a = 0; a < space.size(); ++a) {
    for (WordId b = a + 1; b < space.size(); ++b) d.push_back(space.DistanceUnchecked(a, b));
  }
  if (d.empty()) return 0.0;
  auto mid = d.begin() + d.size() / 2;
  std::nth_element(d.begin(), mid, d.end());
  return *mid;
}

}  // namespace tem
