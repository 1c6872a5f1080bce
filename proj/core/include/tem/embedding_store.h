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

// The finite word domain, its embedding vectors, and the distance metric used
// by every mechanism in this library.

#ifndef TEM_EMBEDDING_STORE_H_
#define TEM_EMBEDDING_STORE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace tem {

// Dense 0-based identifier of a word in a Vocabulary.
using WordId = uint32_t;

// SHA-256 over the embedding dimension and the ordered word list.
using Fingerprint = std::array<uint8_t, 32>;

std::string FingerprintToHex(const Fingerprint& fingerprint);

// Bidirectional word <-> id map. Ids are dense and follow insertion order.
class Vocabulary {
 public:
  // Fails on an empty list or on duplicate words.
  static absl::StatusOr<Vocabulary> Create(std::vector<std::string> words);

  size_t size() const { return words_.size(); }
  const std::string& word(WordId id) const { return words_[id]; }
  const std::vector<std::string>& words() const { return words_; }

  std::optional<WordId> Find(std::string_view word) const;
  absl::StatusOr<WordId> Lookup(std::string_view word) const;

  // One word per line, in id order.
  void Write(std::ostream& out) const;
  static absl::StatusOr<Vocabulary> Read(std::istream& in);

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.words_ == b.words_;
  }

 private:
  Vocabulary() = default;

  std::vector<std::string> words_;
  absl::flat_hash_map<std::string, WordId> index_;
};

// Row-major |W| x dim matrix; row i is the embedding of word i.
class EmbeddingMatrix {
 public:
  // Fails if dim is zero, values.size() is not a multiple of dim, the matrix
  // has no rows, or any entry is NaN or infinite.
  static absl::StatusOr<EmbeddingMatrix> Create(size_t dim,
                                                std::vector<double> values);

  size_t dim() const { return dim_; }
  size_t rows() const { return values_.size() / dim_; }
  std::span<const double> row(WordId id) const {
    return {values_.data() + static_cast<size_t>(id) * dim_, dim_};
  }
  std::span<const double> values() const { return values_; }

  friend bool operator==(const EmbeddingMatrix& a,
                         const EmbeddingMatrix& b) = default;

 private:
  EmbeddingMatrix(size_t dim, std::vector<double> values)
      : dim_(dim), values_(std::move(values)) {}

  size_t dim_;
  std::vector<double> values_;
};

Fingerprint ComputeFingerprint(const Vocabulary& vocab, size_t dim);

enum class MetricKind : uint8_t {
  kEuclidean = 0,
};

std::string_view MetricKindName(MetricKind kind);

// A vocabulary together with its embedding and a metric over the embedded
// points. Immutable and cheap to copy; copies share the underlying storage.
class MetricSpace {
 public:
  static absl::StatusOr<MetricSpace> Create(
      std::shared_ptr<const Vocabulary> vocab,
      std::shared_ptr<const EmbeddingMatrix> embeddings,
      MetricKind kind = MetricKind::kEuclidean);
  static absl::StatusOr<MetricSpace> Create(
      Vocabulary vocab, EmbeddingMatrix embeddings,
      MetricKind kind = MetricKind::kEuclidean);

  size_t size() const { return embeddings_->rows(); }
  size_t dim() const { return embeddings_->dim(); }
  MetricKind kind() const { return kind_; }
  const Vocabulary& vocabulary() const { return *vocab_; }
  const EmbeddingMatrix& embeddings() const { return *embeddings_; }
  const Fingerprint& fingerprint() const { return fingerprint_; }

  absl::StatusOr<double> Distance(WordId a, WordId b) const;

  // No bounds checks. Computed in double precision; bitwise symmetric.
  double DistanceUnchecked(WordId a, WordId b) const {
    return PointDistance(embeddings_->row(a), embeddings_->row(b));
  }

  double PointDistance(std::span<const double> x,
                       std::span<const double> y) const;

  bool contains(WordId id) const { return id < size(); }

 private:
  MetricSpace(std::shared_ptr<const Vocabulary> vocab,
              std::shared_ptr<const EmbeddingMatrix> embeddings,
              MetricKind kind);

  std::shared_ptr<const Vocabulary> vocab_;
  std::shared_ptr<const EmbeddingMatrix> embeddings_;
  MetricKind kind_;
  Fingerprint fingerprint_;
};

struct LoadOptions {
  // Rejects the file unless every row has exactly this many components.
  std::optional<size_t> expected_dim;
  // Skips a word2vec-style "count dim" first line.
  bool skip_header = false;
  // Lowercases words (ASCII) before insertion.
  bool lowercase = false;
};

struct LoadedEmbeddings {
  Vocabulary vocabulary;
  EmbeddingMatrix embeddings;
  // One message per duplicate word that was skipped.
  std::vector<std::string> warnings;
};

// Parses GloVe text format: `word f1 f2 ... fn` per nonempty line. The first
// occurrence of a duplicate word wins.
absl::StatusOr<LoadedEmbeddings> LoadEmbeddings(std::istream& in,
                                                const LoadOptions& options = {});
absl::StatusOr<LoadedEmbeddings> LoadEmbeddingsFile(
    const std::string& path, const LoadOptions& options = {});

// Writes GloVe text format using shortest round-trip float formatting.
void WriteEmbeddings(std::ostream& out, const Vocabulary& vocab,
                     const EmbeddingMatrix& embeddings);

std::string AsciiLower(std::string_view s);

}  // namespace tem

#endif  // TEM_EMBEDDING_STORE_H_
