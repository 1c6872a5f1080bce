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

#include "tem/embedding_store.h"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "tem/status_macros.h"

namespace tem {
namespace {

void AppendU64(std::string& buf, uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

// Splits on runs of spaces/tabs without allocating.
std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && IsSpace(line[i])) ++i;
    size_t start = i;
    while (i < line.size() && !IsSpace(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

}  // namespace

std::string FingerprintToHex(const Fingerprint& fingerprint) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (uint8_t b : fingerprint) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0xf]);
  }
  return out;
}

std::string AsciiLower(std::string_view s) {
  return absl::AsciiStrToLower(absl::string_view(s.data(), s.size()));
}

absl::StatusOr<Vocabulary> Vocabulary::Create(std::vector<std::string> words) {
  if (words.empty()) {
    return absl::InvalidArgumentError("Vocabulary must contain at least one word.");
  }
  if (words.size() > std::numeric_limits<WordId>::max()) {
    return absl::InvalidArgumentError("Vocabulary is too large for 32-bit ids.");
  }
  Vocabulary vocab;
  vocab.index_.reserve(words.size());
  for (size_t i = 0; i < words.size(); ++i) {
    auto [it, inserted] = vocab.index_.emplace(words[i], static_cast<WordId>(i));
    if (!inserted) {
      return absl::InvalidArgumentError(
          absl::StrCat("Duplicate word in vocabulary: '", words[i], "'"));
    }
  }
  vocab.words_ = std::move(words);
  return vocab;
}

std::optional<WordId> Vocabulary::Find(std::string_view word) const {
  auto it = index_.find(absl::string_view(word.data(), word.size()));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

absl::StatusOr<WordId> Vocabulary::Lookup(std::string_view word) const {
  if (auto id = Find(word)) return *id;
  return absl::NotFoundError(
      absl::StrCat("Word not in vocabulary: '", std::string(word), "'"));
}

void Vocabulary::Write(std::ostream& out) const {
  for (const auto& w : words_) out << w << '\n';
}

absl::StatusOr<Vocabulary> Vocabulary::Read(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    words.push_back(std::move(line));
  }
  return Create(std::move(words));
}

absl::StatusOr<EmbeddingMatrix> EmbeddingMatrix::Create(
    size_t dim, std::vector<double> values) {
  if (dim == 0) {
    return absl::InvalidArgumentError("Embedding dimension must be positive.");
  }
  if (values.empty() || values.size() % dim != 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Embedding value count ", values.size(),
        " is not a positive multiple of dimension ", dim));
  }
  for (size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Non-finite embedding value at row ", i / dim, ", column ", i % dim));
    }
  }
  return EmbeddingMatrix(dim, std::move(values));
}

Fingerprint ComputeFingerprint(const Vocabulary& vocab, size_t dim) {
  std::string buf;
  AppendU64(buf, dim);
  AppendU64(buf, vocab.size());
  for (const auto& w : vocab.words()) {
    AppendU64(buf, w.size());
    buf.append(w);
  }
  Fingerprint out{};
  unsigned int len = 0;
  EVP_Digest(buf.data(), buf.size(), out.data(), &len, EVP_sha256(), nullptr);
  return out;
}

std::string_view MetricKindName(MetricKind kind) {
  switch (kind) {
    case MetricKind::kEuclidean:
      return "euclidean";
  }
  return "unknown";
}

MetricSpace::MetricSpace(std::shared_ptr<const Vocabulary> vocab,
                         std::shared_ptr<const EmbeddingMatrix> embeddings,
                         MetricKind kind)
    : vocab_(std::move(vocab)),
      embeddings_(std::move(embeddings)),
      kind_(kind),
      fingerprint_(ComputeFingerprint(*vocab_, embeddings_->dim())) {}

absl::StatusOr<MetricSpace> MetricSpace::Create(
    std::shared_ptr<const Vocabulary> vocab,
    std::shared_ptr<const EmbeddingMatrix> embeddings, MetricKind kind) {
  if (vocab == nullptr || embeddings == nullptr) {
    return absl::InvalidArgumentError("MetricSpace requires a vocabulary and embeddings.");
  }
  if (vocab->size() != embeddings->rows()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Vocabulary has ", vocab->size(), " words but the embedding matrix has ",
        embeddings->rows(), " rows"));
  }
  return MetricSpace(std::move(vocab), std::move(embeddings), kind);
}

absl::StatusOr<MetricSpace> MetricSpace::Create(Vocabulary vocab,
                                                EmbeddingMatrix embeddings,
                                                MetricKind kind) {
  return Create(std::make_shared<const Vocabulary>(std::move(vocab)),
                std::make_shared<const EmbeddingMatrix>(std::move(embeddings)),
                kind);
}

absl::StatusOr<double> MetricSpace::Distance(WordId a, WordId b) const {
  if (!contains(a) || !contains(b)) {
    return absl::OutOfRangeError(absl::StrCat(
        "Word id out of range: (", a, ", ", b, ") with |W| = ", size()));
  }
  return DistanceUnchecked(a, b);
}

double MetricSpace::PointDistance(std::span<const double> x,
                                  std::span<const double> y) const {
  double sum = 0.0;
  for (size_t k = 0; k < x.size(); ++k) {
    const double diff = x[k] - y[k];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

absl::StatusOr<LoadedEmbeddings> LoadEmbeddings(std::istream& in,
                                                const LoadOptions& options) {
  std::vector<std::string> words;
  std::vector<double> values;
  std::vector<std::string> warnings;
  absl::flat_hash_map<std::string, size_t> seen;
  size_t dim = options.expected_dim.value_or(0);
  if (options.expected_dim.has_value() && dim == 0) {
    return absl::InvalidArgumentError("Expected dimension must be positive.");
  }

  std::string line;
  size_t line_no = 0;
  bool header_pending = options.skip_header;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = SplitFields(line);
    if (fields.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const size_t row_dim = fields.size() - 1;
    if (row_dim == 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("Line ", line_no, ": word '", std::string(fields[0]),
                       "' has no vector"));
    }
    if (dim == 0) {
      dim = row_dim;
    } else if (row_dim != dim) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Line ", line_no, ": dimension ", row_dim,
          options.expected_dim.has_value()
              ? " does not match expected dimension "
              : " is inconsistent with dimension ",
          dim));
    }
    std::string word = options.lowercase ? AsciiLower(fields[0])
                                         : std::string(fields[0]);
    if (auto it = seen.find(word); it != seen.end()) {
      warnings.push_back(absl::StrCat("Line ", line_no, ": duplicate word '",
                                      word, "' ignored (first seen on line ",
                                      it->second, ")"));
      continue;
    }
    const size_t first_value = values.size();
    values.resize(first_value + dim);
    for (size_t k = 0; k < dim; ++k) {
      std::string_view f = fields[k + 1];
      double v = 0.0;
      // from_chars rejects a leading '+', which some dumps emit.
      if (!f.empty() && f.front() == '+') f.remove_prefix(1);
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(v)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "Line ", line_no, ": cannot parse component ", k + 1, " ('",
            std::string(fields[k + 1]), "') as a finite number"));
      }
      values[first_value + k] = v;
    }
    seen.emplace(word, line_no);
    words.push_back(std::move(word));
  }
  if (words.empty()) {
    return absl::InvalidArgumentError("Embedding input contains no vectors.");
  }
  TEM_ASSIGN_OR_RETURN(Vocabulary vocab, Vocabulary::Create(std::move(words)));
  TEM_ASSIGN_OR_RETURN(EmbeddingMatrix matrix,
                       EmbeddingMatrix::Create(dim, std::move(values)));
  return LoadedEmbeddings{std::move(vocab), std::move(matrix), std::move(warnings)};
}

absl::StatusOr<LoadedEmbeddings> LoadEmbeddingsFile(const std::string& path,
                                                    const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("Cannot open embeddings file: ", path));
  }
  return LoadEmbeddings(in, options);
}

void WriteEmbeddings(std::ostream& out, const Vocabulary& vocab,
                     const EmbeddingMatrix& embeddings) {
  char buf[64];
  for (WordId id = 0; id < vocab.size(); ++id) {
    out << vocab.word(id);
    for (double v : embeddings.row(id)) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      out << ' ' << std::string_view(buf, ptr - buf);
    }
    out << '\n';
  }
}

}  // namespace tem
