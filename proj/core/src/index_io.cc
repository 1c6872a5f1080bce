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

#include <bit>
#include <cmath>
#include <limits>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string_view>

#include "absl/strings/str_cat.h"
#include "tem/candidate_index.h"
#include "tem/status_macros.h"

namespace tem {
namespace {

constexpr std::string_view kMagic = "TEMIDX1";
constexpr std::string_view kMagicPrefix = "TEMIDX";

template <typename T>
void PutLe(std::ostream& out, T v) {
  char buf[sizeof(T)];
  for (size_t i = 0; i < sizeof(T); ++i) {
    buf[i] = static_cast<char>((static_cast<uint64_t>(v) >> (8 * i)) & 0xff);
  }
  out.write(buf, sizeof(T));
}

void PutF64(std::ostream& out, double v) { PutLe(out, std::bit_cast<uint64_t>(v)); }

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  absl::Status Bytes(char* dst, size_t n, std::string_view what) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<size_t>(in_.gcount()) != n) {
      return absl::DataLossError(
          absl::StrCat("Truncated index stream while reading ", std::string(what)));
    }
    return absl::OkStatus();
  }

  template <typename T>
  absl::StatusOr<T> Le(std::string_view what) {
    unsigned char buf[sizeof(T)];
    TEM_RETURN_IF_ERROR(Bytes(reinterpret_cast<char*>(buf), sizeof(T), what));
    uint64_t v = 0;
    for (size_t i = 0; i < sizeof(T); ++i) v |= static_cast<uint64_t>(buf[i]) << (8 * i);
    return static_cast<T>(v);
  }

  absl::StatusOr<double> F64(std::string_view what) {
    TEM_ASSIGN_OR_RETURN(uint64_t bits, Le<uint64_t>(what));
    return std::bit_cast<double>(bits);
  }

  bool AtEnd() { return in_.peek() == std::char_traits<char>::eof(); }

 private:
  std::istream& in_;
};

}  // namespace

absl::Status TruncationIndex::Save(std::ostream& out) const {
  out.write(kMagic.data(), kMagic.size());
  out.write(reinterpret_cast<const char*>(fingerprint_.data()), fingerprint_.size());
  PutF64(out, gamma_);
  PutLe<uint64_t>(out, size());
  for (size_t w = 0; w < size(); ++w) {
    const CandidateView v = candidates(static_cast<WordId>(w));
    PutLe<uint32_t>(out, static_cast<uint32_t>(v.members.size()));
    for (const Candidate& c : v.members) {
      PutLe<uint32_t>(out, c.id);
      PutF64(out, c.distance);
    }
  }
  if (!out) return absl::DataLossError("Failed writing index stream.");
  return absl::OkStatus();
}

absl::Status TruncationIndex::SaveFile(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(absl::StrCat("Cannot open for writing: ", path));
  }
  TEM_RETURN_IF_ERROR(Save(out));
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("Failed writing ", path));
  return absl::OkStatus();
}

absl::StatusOr<TruncationIndex> TruncationIndex::Load(std::istream& in) {
  Reader reader(in);
  char magic[kMagic.size()];
  TEM_RETURN_IF_ERROR(reader.Bytes(magic, sizeof(magic), "magic"));
  const std::string_view got(magic, sizeof(magic));
  if (got != kMagic) {
    if (got.substr(0, kMagicPrefix.size()) == kMagicPrefix) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Unsupported index format version '",
          std::string(got.substr(kMagicPrefix.size())), "'"));
    }
    return absl::InvalidArgumentError("Not a TEM index (bad magic).");
  }

  TruncationIndex index;
  TEM_RETURN_IF_ERROR(reader.Bytes(reinterpret_cast<char*>(index.fingerprint_.data()),
                                   index.fingerprint_.size(), "fingerprint"));
  TEM_ASSIGN_OR_RETURN(index.gamma_, reader.F64("gamma"));
  if (std::isnan(index.gamma_) || index.gamma_ < 0.0) {
    return absl::InvalidArgumentError("Index has an invalid gamma.");
  }
  TEM_ASSIGN_OR_RETURN(uint64_t n, reader.Le<uint64_t>("vocabulary size"));
  if (n == 0 || n > std::numeric_limits<WordId>::max()) {
    return absl::InvalidArgumentError(absl::StrCat("Index has invalid |W| = ", n));
  }
  index.offsets_.assign(1, 0);
  for (uint64_t w = 0; w < n; ++w) {
    TEM_ASSIGN_OR_RETURN(uint32_t count, reader.Le<uint32_t>("member count"));
    for (uint32_t k = 0; k < count; ++k) {
      TEM_ASSIGN_OR_RETURN(uint32_t id, reader.Le<uint32_t>("candidate id"));
      TEM_ASSIGN_OR_RETURN(double d, reader.F64("candidate distance"));
      index.members_.push_back({id, d});
    }
    index.offsets_.push_back(index.members_.size());
  }
  if (!reader.AtEnd()) {
    return absl::InvalidArgumentError("Trailing bytes after index payload.");
  }
  for (uint64_t w = 0; w < n; ++w) {
    TEM_RETURN_IF_ERROR(ValidateCandidates(index.candidates(static_cast<WordId>(w)), n));
  }
  return index;
}

absl::StatusOr<TruncationIndex> TruncationIndex::Load(std::istream& in,
                                                      const MetricSpace& space) {
  TEM_ASSIGN_OR_RETURN(TruncationIndex index, Load(in));
  TEM_RETURN_IF_ERROR(index.CheckCompatible(space));
  return index;
}

absl::StatusOr<TruncationIndex> TruncationIndex::LoadFile(const std::string& path,
                                                          const MetricSpace& space) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("Cannot open index file: ", path));
  return Load(in, space);
}

}  // namespace tem
