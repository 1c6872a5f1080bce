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

#ifndef TEM_NOISE_H_
#define TEM_NOISE_H_

#include <cstddef>
#include <vector>

#include "tem/random_source.h"

namespace tem {

// Gumbel(0, scale) quantile at u in (0, 1): -scale * ln(-ln u).
double GumbelFromUniform(double u, double scale);

// One Gumbel(location 0, scale) draw. scale must be > 0.
double SampleGumbel(RandomSource& rng, double scale);

// Radius of the multivariate noise with density proportional to
// exp(-epsilon * |z|) in `dim` dimensions, i.e. Gamma(shape dim, rate epsilon).
double SampleExpBallRadius(RandomSource& rng, size_t dim, double epsilon);

// Uniform direction on the unit sphere in R^dim (normalized Gaussian draw).
std::vector<double> SampleUnitDirection(RandomSource& rng, size_t dim);

// Noise vector with density proportional to exp(-epsilon * |z|): a uniform
// direction scaled by a Gamma(dim, epsilon) radius. The direction is drawn
// first, then the radius.
std::vector<double> SampleExpBallNoise(RandomSource& rng, size_t dim,
                                       double epsilon);

}  // namespace tem

#endif  // TEM_NOISE_H_
