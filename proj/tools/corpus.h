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

#ifndef TEM_TOOLS_CORPUS_H_
#define TEM_TOOLS_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "tem/document.h"
#include "tem/mechanism.h"

namespace tem::cli {

// Descriptive counts over a privatized corpus. The unchanged-token rate is not
// a privacy measure: mechanisms with different output supports are not
// comparable through it.
struct CorpusStats {
  size_t documents = 0;
  size_t tokens_total = 0;
  size_t tokens_in_vocab = 0;
  size_t tokens_unchanged = 0;
  size_t tokens_dropped = 0;
  size_t tokens_passed_through = 0;
  double total_output_distance = 0.0;

  double mean_output_distance() const;
  // Fraction of in-vocabulary tokens returned unchanged.
  double unchanged_rate() const;
  void Merge(const CorpusStats& other);
};

nlohmann::json ToJson(const CorpusStats& stats);

struct CorpusOptions {
  OovPolicy oov = OovPolicy::kError;
  bool lowercase = false;
  uint64_t seed = 0;
  unsigned threads = 1;
};

struct PrivatizedCorpus {
  std::vector<std::string> lines;
  CorpusStats stats;
};

// Line i is privatized with RandomSource::ForSubstream(seed, i), so the result
// does not depend on the thread count.
absl::StatusOr<PrivatizedCorpus> PrivatizeCorpus(std::span<const std::string> lines,
                                                 const WordMechanism& mechanism,
                                                 const CorpusOptions& options);

struct SplitText {
  std::vector<std::string> lines;
  bool trailing_newline = false;
};

// Splits on '\n'. A final newline does not start another line.
SplitText SplitLines(std::string_view text);
std::string JoinLines(std::span<const std::string> lines, bool trailing_newline);

}  // namespace tem::cli

#endif  // TEM_TOOLS_CORPUS_H_
