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

#ifndef TEM_RANDOM_SOURCE_H_
#define TEM_RANDOM_SOURCE_H_

#include <cstdint>
#include <random>

namespace tem {

// Seeded pseudo-random stream. Identical seeds give identical draw sequences.
// Not thread-safe; give each thread its own stream (see ForSubstream).
class RandomSource {
 public:
  explicit RandomSource(uint64_t seed);

  // Independent stream derived from (seed, stream) so parallel work can be
  // reproduced regardless of scheduling.
  static RandomSource ForSubstream(uint64_t seed, uint64_t stream);

  uint64_t seed() const { return seed_; }

  uint64_t NextU64() { return engine_(); }

  // Uniform on the open interval (0, 1) with 53 bits of resolution.
  double UniformOpen() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
  }

  // Uniform on [0, n) without modulo bias. n must be > 0.
  uint64_t UniformIndex(uint64_t n);

  double StandardNormal();

  // Gamma with the given shape and rate (mean shape / rate).
  double Gamma(double shape, double rate);

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

uint64_t SplitMix64(uint64_t x);

}  // namespace tem

#endif  // TEM_RANDOM_SOURCE_H_
