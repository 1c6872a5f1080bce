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

#include "tem/candidate_index.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"
#include "tem/parallel.h"
#include "tem/status_macros.h"

namespace tem {
namespace {

// Large enough that the tiled float filter beats one scan per word.
constexpr size_t kBlockedScanMinWords = 1024;

bool CandidateLess(const Candidate& a, const Candidate& b) {
  if (a.distance != b.distance) return a.distance < b.distance;
  return a.id < b.id;
}

absl::Status ValidateGamma(double gamma) {
  if (std::isnan(gamma) || gamma < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("Truncation threshold gamma must be >= 0, got ", gamma));
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status ValidateCandidates(const CandidateView& set, size_t vocab_size) {
  if (set.members.size() + set.complement_count != vocab_size) {
    return absl::FailedPreconditionError(absl::StrCat(
        "Candidate set for word ", set.input, " has ", set.members.size(),
        " members and complement ", set.complement_count,
        ", which does not add up to |W| = ", vocab_size));
  }
  bool has_input = false;
  std::vector<WordId> ids;
  ids.reserve(set.members.size());
  for (size_t k = 0; k < set.members.size(); ++k) {
    const Candidate& c = set.members[k];
    if (c.id >= vocab_size) {
      return absl::FailedPreconditionError(
          absl::StrCat("Candidate id ", c.id, " out of range"));
    }
    if (!(c.distance >= 0.0) || c.distance > set.gamma) {
      return absl::FailedPreconditionError(absl::StrCat(
          "Candidate ", c.id, " has distance ", c.distance,
          " outside [0, gamma = ", set.gamma, "]"));
    }
    if (k > 0 && !CandidateLess(set.members[k - 1], c)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "Candidates for word ", set.input, " are not sorted by (distance, id)"));
    }
    if (c.id == set.input) has_input = true;
    ids.push_back(c.id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    return absl::FailedPreconditionError(
        absl::StrCat("Duplicate candidate ids for word ", set.input));
  }
  if (!has_input) {
    return absl::FailedPreconditionError(absl::StrCat(
        "Candidate set for word ", set.input, " does not contain the input"));
  }
  return absl::OkStatus();
}

absl::StatusOr<CandidateSet> RangeQuery(const MetricSpace& space, WordId input,
                                        double gamma) {
  TEM_RETURN_IF_ERROR(ValidateGamma(gamma));
  if (!space.contains(input)) {
    return absl::OutOfRangeError(absl::StrCat(
        "Word id ", input, " out of range for |W| = ", space.size()));
  }
  CandidateSet out;
  out.input = input;
  out.gamma = gamma;
  const WordId n = static_cast<WordId>(space.size());
  for (WordId i = 0; i < n; ++i) {
    const double d = space.DistanceUnchecked(input, i);
    if (d <= gamma) out.members.push_back({i, d});
  }
  std::sort(out.members.begin(), out.members.end(), CandidateLess);
  out.complement_count = space.size() - out.members.size();
  return out;
}

absl::StatusOr<WordId> NearestNeighbor(const MetricSpace& space,
                                       std::span<const double> point) {
  if (point.size() != space.dim()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Point has dimension ", point.size(), ", expected ", space.dim()));
  }
  for (double v : point) {
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError("Point has a non-finite coordinate.");
    }
  }
  const EmbeddingMatrix& m = space.embeddings();
  const size_t dim = m.dim();
  const double* row = m.values().data();
  WordId best = 0;
  double best_sq = std::numeric_limits<double>::infinity();
  const WordId n = static_cast<WordId>(space.size());
  for (WordId i = 0; i < n; ++i, row += dim) {
    double sq = 0.0;
    for (size_t k = 0; k < dim; ++k) {
      const double diff = row[k] - point[k];
      sq += diff * diff;
    }
    if (sq < best_sq) {
      best_sq = sq;
      best = i;
    }
  }
  return best;
}

absl::StatusOr<TruncationIndex> TruncationIndex::Build(
    const MetricSpace& space, double gamma, const BuildOptions& options) {
  TEM_RETURN_IF_ERROR(ValidateGamma(gamma));
  const size_t n = space.size();
  ScanStrategy strategy = options.strategy;
  if (strategy == ScanStrategy::kAuto) {
    strategy = (space.kind() == MetricKind::kEuclidean &&
                n >= kBlockedScanMinWords && std::isfinite(gamma))
                   ? ScanStrategy::kBlocked
                   : ScanStrategy::kBruteForce;
  }
  if (strategy == ScanStrategy::kBlocked &&
      (space.kind() != MetricKind::kEuclidean || !std::isfinite(gamma))) {
    strategy = ScanStrategy::kBruteForce;
  }

  std::vector<std::vector<Candidate>> rows;
  if (strategy == ScanStrategy::kBlocked) {
    rows = internal::BlockedRangeScan(space, gamma, options.threads);
    ParallelFor(n, options.threads, [&](size_t i) {
      rows[i].push_back({static_cast<WordId>(i), space.DistanceUnchecked(i, i)});
      std::sort(rows[i].begin(), rows[i].end(), CandidateLess);
    });
  } else {
    rows.resize(n);
    ParallelFor(n, options.threads, [&](size_t i) {
      // Cannot fail: gamma and id are validated.
      rows[i] = std::move(RangeQuery(space, static_cast<WordId>(i), gamma)->members);
    });
  }

  TruncationIndex index;
  index.gamma_ = gamma;
  index.kind_ = space.kind();
  index.fingerprint_ = space.fingerprint();
  index.offsets_.resize(n + 1);
  index.offsets_[0] = 0;
  for (size_t i = 0; i < n; ++i) index.offsets_[i + 1] = index.offsets_[i] + rows[i].size();
  index.members_.reserve(index.offsets_[n]);
  for (auto& row : rows) {
    index.members_.insert(index.members_.end(), row.begin(), row.end());
    std::vector<Candidate>().swap(row);
  }
  return index;
}

absl::StatusOr<TruncationIndex> TruncationIndex::FromCandidateSets(
    double gamma, MetricKind kind, const Fingerprint& fingerprint,
    std::vector<CandidateSet> sets) {
  TEM_RETURN_IF_ERROR(ValidateGamma(gamma));
  if (sets.empty()) {
    return absl::InvalidArgumentError("An index needs at least one candidate set.");
  }
  TruncationIndex index;
  index.gamma_ = gamma;
  index.kind_ = kind;
  index.fingerprint_ = fingerprint;
  index.offsets_.assign(1, 0);
  for (size_t i = 0; i < sets.size(); ++i) {
    const CandidateSet& s = sets[i];
    if (s.input != i) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Candidate set at position ", i, " has input ", s.input));
    }
    if (s.gamma != gamma) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Candidate set ", i, " has gamma ", s.gamma, ", index has ", gamma));
    }
    TEM_RETURN_IF_ERROR(ValidateCandidates(s.view(), sets.size()));
    index.members_.insert(index.members_.end(), s.members.begin(), s.members.end());
    index.offsets_.push_back(index.members_.size());
  }
  return index;
}

absl::StatusOr<CandidateView> TruncationIndex::Lookup(WordId input) const {
  if (input >= size()) {
    return absl::OutOfRangeError(absl::StrCat(
        "Word id ", input, " out of range for index over ", size(), " words"));
  }
  return candidates(input);
}

CandidateSet TruncationIndex::ExtractCandidateSet(WordId input) const {
  CandidateView v = candidates(input);
  return {v.input, v.gamma, {v.members.begin(), v.members.end()}, v.complement_count};
}

absl::Status TruncationIndex::CheckCompatible(const MetricSpace& space) const {
  if (kind_ != space.kind()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "Index metric ", std::string(MetricKindName(kind_)),
        " does not match space metric ", std::string(MetricKindName(space.kind()))));
  }
  if (fingerprint_ != space.fingerprint() || size() != space.size()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "Index vocabulary fingerprint ", FingerprintToHex(fingerprint_),
        " does not match embeddings fingerprint ",
        FingerprintToHex(space.fingerprint())));
  }
  return absl::OkStatus();
}

}  // namespace tem
