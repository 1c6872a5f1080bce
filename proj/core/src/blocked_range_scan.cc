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

// Tiled all-pairs range scan for the Euclidean metric.
//
// Squared distances are first estimated as |x|^2 + |y|^2 - 2<x, y> with a
// single-precision matrix product, then every pair that survives a
// conservative threshold is recomputed with MetricSpace::DistanceUnchecked.
// The threshold absorbs the float rounding of the inputs (relative u = 2^-24
// per coordinate) and of the dot product (at most n*u*|x||y|), so no pair with
// exact distance <= gamma can be filtered out.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "tem/candidate_index.h"
#include "tem/parallel.h"

namespace tem::internal {
namespace {

using RowMatrixF =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr size_t kTile = 512;
constexpr double kUnitRoundoff = 0x1p-24;

struct Hit {
  WordId row;
  WordId col;
  double distance;
};

}  // namespace

std::vector<std::vector<Candidate>> BlockedRangeScan(const MetricSpace& space,
                                                     double gamma,
                                                     unsigned threads) {
  const size_t n = space.size();
  const size_t dim = space.dim();
  const auto values = space.embeddings().values();

  RowMatrixF x(n, dim);
  std::vector<double> sq(n);
  std::vector<double> norm(n);
  for (size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (size_t k = 0; k < dim; ++k) {
      const float v = static_cast<float>(values[i * dim + k]);
      x(i, k) = v;
      s += static_cast<double>(v) * v;
    }
    sq[i] = s;
    norm[i] = std::sqrt(s);
  }

  const size_t tiles = (n + kTile - 1) / kTile;
  std::vector<double> tile_norm(tiles, 0.0);
  for (size_t i = 0; i < n; ++i) {
    tile_norm[i / kTile] = std::max(tile_norm[i / kTile], norm[i]);
  }

  const double dot_slack = 4.0 * static_cast<double>(dim + 2) * kUnitRoundoff;
  std::vector<std::vector<Hit>> hits(tiles);

  // Tile I pairs with tiles J >= I; tile 0 carries the most work and is
  // claimed first.
  ParallelFor(tiles, threads, [&](size_t ti) {
    const size_t r0 = ti * kTile;
    const size_t rn = std::min(kTile, n - r0);
    RowMatrixF block(rn, kTile);
    std::vector<Hit>& out = hits[ti];
    for (size_t tj = ti; tj < tiles; ++tj) {
      const size_t c0 = tj * kTile;
      const size_t cn = std::min(kTile, n - c0);
      block.leftCols(cn).noalias() =
          x.middleRows(r0, rn) * x.middleRows(c0, cn).transpose();

      const double r = std::max(tile_norm[ti], tile_norm[tj]) * (1.0 + 4.0 * kUnitRoundoff);
      const double reach = gamma + 4.0 * kUnitRoundoff * r;
      const double threshold = reach * reach + dot_slack * r * r;

      for (size_t a = 0; a < rn; ++a) {
        const size_t i = r0 + a;
        const float* dots = block.row(a).data();
        const double sq_i = sq[i];
        const size_t b0 = (tj == ti) ? a + 1 : 0;
        for (size_t b = b0; b < cn; ++b) {
          const double approx = sq_i + sq[c0 + b] - 2.0 * static_cast<double>(dots[b]);
          if (approx <= threshold) {
            const WordId j = static_cast<WordId>(c0 + b);
            const double d = space.DistanceUnchecked(static_cast<WordId>(i), j);
            if (d <= gamma) out.push_back({static_cast<WordId>(i), j, d});
          }
        }
      }
    }
  });

  std::vector<size_t> counts(n, 0);
  for (const auto& tile_hits : hits) {
    for (const Hit& h : tile_hits) {
      ++counts[h.row];
      ++counts[h.col];
    }
  }
  std::vector<std::vector<Candidate>> rows(n);
  for (size_t i = 0; i < n; ++i) rows[i].reserve(counts[i] + 1);
  for (auto& tile_hits : hits) {
    for (const Hit& h : tile_hits) {
      rows[h.row].push_back({h.col, h.distance});
      rows[h.col].push_back({h.row, h.distance});
    }
    std::vector<Hit>().swap(tile_hits);
  }
  return rows;
}

}  // namespace tem::internal
