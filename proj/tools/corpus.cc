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

#include "corpus.h"

#include <optional>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "tem/parallel.h"

namespace tem::cli {

double CorpusStats::mean_output_distance() const {
  const size_t privatized = tokens_in_vocab;
  return privatized == 0 ? 0.0 : total_output_distance / static_cast<double>(privatized);
}

double CorpusStats::unchanged_rate() const {
  return tokens_in_vocab == 0
             ? 0.0
             : static_cast<double>(tokens_unchanged) / static_cast<double>(tokens_in_vocab);
}

void CorpusStats::Merge(const CorpusStats& other) {
  documents += other.documents;
  tokens_total += other.tokens_total;
  tokens_in_vocab += other.tokens_in_vocab;
  tokens_unchanged += other.tokens_unchanged;
  tokens_dropped += other.tokens_dropped;
  tokens_passed_through += other.tokens_passed_through;
  total_output_distance += other.total_output_distance;
}

nlohmann::json ToJson(const CorpusStats& stats) {
  return {
      {"documents", stats.documents},
      {"tokens_total", stats.tokens_total},
      {"tokens_in_vocab", stats.tokens_in_vocab},
      {"tokens_unchanged", stats.tokens_unchanged},
      {"tokens_dropped", stats.tokens_dropped},
      {"tokens_passed_through", stats.tokens_passed_through},
      {"unchanged_rate", stats.unchanged_rate()},
      {"mean_output_distance", stats.mean_output_distance()},
  };
}

absl::StatusOr<PrivatizedCorpus> PrivatizeCorpus(std::span<const std::string> lines,
                                                 const WordMechanism& mechanism,
                                                 const CorpusOptions& options) {
  const MetricSpace& space = mechanism.space();
  const size_t n = lines.size();
  PrivatizedCorpus corpus;
  corpus.lines.resize(n);
  std::vector<CorpusStats> per_line(n);
  std::vector<absl::Status> errors(n);

  ParallelFor(n, options.threads, [&](size_t i) {
    std::vector<std::string> tokens = Tokenize(lines[i]);
    if (options.lowercase) {
      for (std::string& t : tokens) absl::AsciiStrToLower(&t);
    }
    RandomSource rng = RandomSource::ForSubstream(options.seed, i);
    absl::StatusOr<PrivatizedDocument> doc =
        PrivatizeDocument(tokens, space.vocabulary(), mechanism, options.oov, rng);
    if (!doc.ok()) {
      errors[i] = absl::Status(doc.status().code(),
                               absl::StrCat("line ", i + 1, ": ", doc.status().message()));
      return;
    }
    CorpusStats& s = per_line[i];
    s.documents = 1;
    s.tokens_total = tokens.size();
    for (const TokenRecord& r : doc->records) {
      switch (r.action) {
        case TokenAction::kPrivatized:
          ++s.tokens_in_vocab;
          s.tokens_unchanged += *r.input == *r.output;
          s.total_output_distance += space.DistanceUnchecked(*r.input, *r.output);
          break;
        case TokenAction::kDropped:
          ++s.tokens_dropped;
          break;
        case TokenAction::kPassedThrough:
          ++s.tokens_passed_through;
          break;
      }
    }
    corpus.lines[i] = absl::StrJoin(doc->tokens, " ");
  });

  for (size_t i = 0; i < n; ++i) {
    if (!errors[i].ok()) return errors[i];
    corpus.stats.Merge(per_line[i]);
  }
  return corpus;
}

SplitText SplitLines(std::string_view text) {
  SplitText out;
  if (text.empty()) return out;
  size_t start = 0;
  while (true) {
    const size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      out.lines.emplace_back(text.substr(start));
      break;
    }
    out.lines.emplace_back(text.substr(start, nl - start));
    start = nl + 1;
    if (start == text.size()) {
      out.trailing_newline = true;
      break;
    }
  }
  return out;
}

std::string JoinLines(std::span<const std::string> lines, bool trailing_newline) {
  std::string out = absl::StrJoin(lines, "\n");
  if (trailing_newline && !lines.empty()) out.push_back('\n');
  return out;
}

}  // namespace tem::cli
