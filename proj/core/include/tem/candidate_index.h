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

#ifndef TEM_CANDIDATE_INDEX_H_
#define TEM_CANDIDATE_INDEX_H_

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "tem/embedding_store.h"

namespace tem {

struct Candidate {
  WordId id;
  double distance;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Non-owning view of the words within `gamma` of `input`. Members are sorted
// by (distance, id); `complement_count` is the number of vocabulary words not
// in `members`.
struct CandidateView {
  WordId input;
  double gamma;
  std::span<const Candidate> members;
  size_t complement_count;

  size_t vocab_size() const { return members.size() + complement_count; }
};

struct CandidateSet {
  WordId input = 0;
  double gamma = 0.0;
  std::vector<Candidate> members;
  size_t complement_count = 0;

  CandidateView view() const {
    return {input, gamma, members, complement_count};
  }

  friend bool operator==(const CandidateSet&, const CandidateSet&) = default;
};

// Checks the CandidateSet invariants against a vocabulary of `vocab_size`
// words: ordering, no duplicates, distances within gamma, input present, and
// the complement count.
absl::Status ValidateCandidates(const CandidateView& set, size_t vocab_size);

// Exact scan over the whole vocabulary. Words at distance exactly gamma are
// included. gamma may be +infinity.
absl::StatusOr<CandidateSet> RangeQuery(const MetricSpace& space, WordId input,
                                        double gamma);

// Id of the word whose embedding is closest to `point`; ties go to the
// smallest id.
absl::StatusOr<WordId> NearestNeighbor(const MetricSpace& space,
                                       std::span<const double> point);

enum class ScanStrategy {
  // Picks kBlocked for large Euclidean vocabularies.
  kAuto,
  // One RangeQuery per word.
  kBruteForce,
  // Tiled float filter followed by an exact double-precision recheck.
  kBlocked,
};

struct BuildOptions {
  ScanStrategy strategy = ScanStrategy::kAuto;
  // 0 selects std::thread::hardware_concurrency().
  unsigned threads = 1;
};

// Per-word candidate lists for a fixed gamma, stored contiguously so that a
// lookup is a pair of array reads.
class TruncationIndex {
 public:
  static absl::StatusOr<TruncationIndex> Build(const MetricSpace& space,
                                               double gamma,
                                               const BuildOptions& options = {});

  // Assembles an index from explicit candidate sets (set i must have input i).
  // Only structural invariants are checked; the sets are not compared against
  // any space.
  static absl::StatusOr<TruncationIndex> FromCandidateSets(
      double gamma, MetricKind kind, const Fingerprint& fingerprint,
      std::vector<CandidateSet> sets);

  size_t size() const { return offsets_.size() - 1; }
  double gamma() const { return gamma_; }
  MetricKind kind() const { return kind_; }
  const Fingerprint& fingerprint() const { return fingerprint_; }
  size_t total_members() const { return members_.size(); }

  // O(1). `input` must be < size().
  CandidateView candidates(WordId input) const {
    const size_t begin = offsets_[input];
    const size_t end = offsets_[input + 1];
    const size_t count = end - begin;
    return {input, gamma_,
            std::span<const Candidate>(members_.data() + begin, count),
            size() - count};
  }
  absl::StatusOr<CandidateView> Lookup(WordId input) const;

  CandidateSet ExtractCandidateSet(WordId input) const;

  // Errors unless gamma, metric, and fingerprint match `space`.
  absl::Status CheckCompatible(const MetricSpace& space) const;

  // Binary layout (little-endian): "TEMIDX1", 32-byte fingerprint, gamma f64,
  // |W| u64, then per word a u32 member count followed by (u32 id, f64
  // distance) pairs.
  absl::Status Save(std::ostream& out) const;
  absl::Status SaveFile(const std::string& path) const;

  // Parses and structurally validates an index without a reference space.
  static absl::StatusOr<TruncationIndex> Load(std::istream& in);
  // Parses, then rejects the index unless it was built from `space`.
  static absl::StatusOr<TruncationIndex> Load(std::istream& in,
                                              const MetricSpace& space);
  static absl::StatusOr<TruncationIndex> LoadFile(const std::string& path,
                                                  const MetricSpace& space);

  friend bool operator==(const TruncationIndex&, const TruncationIndex&) = default;

 private:
  TruncationIndex() = default;

  double gamma_ = 0.0;
  MetricKind kind_ = MetricKind::kEuclidean;
  Fingerprint fingerprint_{};
  std::vector<size_t> offsets_{0};
  std::vector<Candidate> members_;
};

namespace internal {

// All pairs (i, j), i != j, with d(i, j) <= gamma, appended to per-row lists.
// Euclidean only. Exposed for testing the blocked scan directly.
std::vector<std::vector<Candidate>> BlockedRangeScan(const MetricSpace& space,
                                                     double gamma,
                                                     unsigned threads);

}  // namespace internal

}  // namespace tem

#endif  // TEM_CANDIDATE_INDEX_H_
