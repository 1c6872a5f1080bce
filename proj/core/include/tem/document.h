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

#ifndef TEM_DOCUMENT_H_
#define TEM_DOCUMENT_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "tem/embedding_store.h"
#include "tem/mechanism.h"
#include "tem/random_source.h"

namespace tem {

// What to do with tokens that are not in the vocabulary.
enum class OovPolicy { kError, kDrop, kPassthrough };

absl::StatusOr<OovPolicy> ParseOovPolicy(std::string_view name);
std::string_view OovPolicyName(OovPolicy policy);

enum class TokenAction { kPrivatized, kDropped, kPassedThrough };

std::string_view TokenActionName(TokenAction action);

struct TokenRecord {
  TokenAction action;
  // Set for privatized tokens only.
  std::optional<WordId> input;
  std::optional<WordId> output;
};

struct PrivatizedDocument {
  std::vector<std::string> tokens;
  // One record per input token, including dropped ones.
  std::vector<TokenRecord> records;
};

// Replaces every in-vocabulary token independently with the mechanism's
// output. Repeated occurrences of a word are privatized independently; no
// composed guarantee over a document is implied.
absl::StatusOr<PrivatizedDocument> PrivatizeDocument(
    std::span<const std::string> words, const Vocabulary& vocab,
    const WordMechanism& mechanism, OovPolicy policy, RandomSource& rng);

// Splits on ASCII whitespace.
std::vector<std::string> Tokenize(std::string_view line);

}  // namespace tem

#endif  // TEM_DOCUMENT_H_
