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

#include "tem/document.h"

#include "absl/strings/str_cat.h"
#include "tem/status_macros.h"

namespace tem {

absl::StatusOr<OovPolicy> ParseOovPolicy(std::string_view name) {
  if (name == "error") return OovPolicy::kError;
  if (name == "drop") return OovPolicy::kDrop;
  if (name == "passthrough") return OovPolicy::kPassthrough;
  return absl::InvalidArgumentError(absl::StrCat(
      "Unknown OOV policy '", std::string(name), "' (expected error, drop, or passthrough)"));
}

std::string_view OovPolicyName(OovPolicy policy) {
  switch (policy) {
    case OovPolicy::kError:
      return "error";
    case OovPolicy::kDrop:
      return "drop";
    case OovPolicy::kPassthrough:
      return "passthrough";
  }
  return "unknown";
}

std::string_view TokenActionName(TokenAction action) {
  switch (action) {
    case TokenAction::kPrivatized:
      return "privatized";
    case TokenAction::kDropped:
      return "dropped";
    case TokenAction::kPassedThrough:
      return "passthrough";
  }
  return "unknown";
}

absl::StatusOr<PrivatizedDocument> PrivatizeDocument(
    std::span<const std::string> words, const Vocabulary& vocab,
    const WordMechanism& mechanism, OovPolicy policy, RandomSource& rng) {
  PrivatizedDocument doc;
  doc.tokens.reserve(words.size());
  doc.records.reserve(words.size());
  for (size_t t = 0; t < words.size(); ++t) {
    const std::string& word = words[t];
    std::optional<WordId> id = vocab.Find(word);
    if (!id.has_value()) {
      switch (policy) {
        case OovPolicy::kError:
          return absl::NotFoundError(absl::StrCat(
              "Out-of-vocabulary token '", word, "' at position ", t));
        case OovPolicy::kDrop:
          doc.records.push_back({TokenAction::kDropped, std::nullopt, std::nullopt});
          continue;
        case OovPolicy::kPassthrough:
          doc.tokens.push_back(word);
          doc.records.push_back(
              {TokenAction::kPassedThrough, std::nullopt, std::nullopt});
          continue;
      }
    }
    TEM_ASSIGN_OR_RETURN(WordId out, mechanism.Privatize(*id, rng));
    doc.tokens.push_back(vocab.word(out));
    doc.records.push_back({TokenAction::kPrivatized, *id, out});
  }
  return doc;
}

std::vector<std::string> Tokenize(std::string_view line) {
  std::vector<std::string> out;
  size_t i = 0;
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
  };
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace tem
