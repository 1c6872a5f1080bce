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

#include "tem/noise.h"

#include <cmath>

namespace tem {

double GumbelFromUniform(double u, double scale) {
  return -scale * std::log(-std::log(u));
}

double SampleGumbel(RandomSource& rng, double scale) {
  return GumbelFromUniform(rng.UniformOpen(), scale);
}

double SampleExpBallRadius(RandomSource& rng, size_t dim, double epsilon) {
  return rng.Gamma(static_cast<double>(dim), epsilon);
}

std::vector<double> SampleUnitDirection(RandomSource& rng, size_t dim) {
  std::vector<double> v(dim);
  double norm_sq = 0.0;
  // A zero vector has probability zero but would leave no direction.
  while (norm_sq == 0.0) {
    for (double& x : v) {
      x = rng.StandardNormal();
      norm_sq += x * x;
    }
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& x : v) x *= inv;
  return v;
}

std::vector<double> SampleExpBallNoise(RandomSource& rng, size_t dim,
                                       double epsilon) {
  std::vector<double> v = SampleUnitDirection(rng, dim);
  const double r = SampleExpBallRadius(rng, dim, epsilon);
  for (double& x : v) x *= r;
  return v;
}

}  // namespace tem
