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

#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "tem/madlib.h"
#include "tem/synthetic.h"
#include "tem/tem.h"
#include "testing/status_matchers.h"

namespace tem {
namespace {

using ::tem::testing::StatusIs;
using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::IsEmpty;

TemMechanism ToyTem(double epsilon = 2.0) {
  return *TemMechanism::CreateWithoutIndex(MakeToySpace(),
                                           *PrivacyParams::Create(epsilon, 2.0));
}

TEST(TokenizeTest, SplitsOnWhitespace) {
  EXPECT_THAT(Tokenize("  a b\tc\r\n"), ElementsAre("a", "b", "c"));
  EXPECT_THAT(Tokenize(""), IsEmpty());
  EXPECT_THAT(Tokenize(" \t "), IsEmpty());
}

TEST(OovPolicyTest, ParseAndName) {
  for (OovPolicy p : {OovPolicy::kError, OovPolicy::kDrop, OovPolicy::kPassthrough}) {
    EXPECT_EQ(*ParseOovPolicy(OovPolicyName(p)), p);
  }
  EXPECT_THAT(ParseOovPolicy("ignore"),
              StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("ignore")));
}

TEST(PrivatizeDocumentTest, DeterministicUnderSeed) {
  const TemMechanism tem = ToyTem();
  const std::vector<std::string> words{"a", "b"};
  RandomSource r1(11), r2(11);
  ASSERT_OK_AND_ASSIGN(PrivatizedDocument d1,
                       PrivatizeDocument(words, tem.space().vocabulary(), tem, OovPolicy::kError, r1));
  ASSERT_OK_AND_ASSIGN(PrivatizedDocument d2,
                       PrivatizeDocument(words, tem.space().vocabulary(), tem, OovPolicy::kError, r2));
  EXPECT_EQ(d1.tokens, d2.tokens);
  ASSERT_EQ(d1.records.size(), 2u);
  EXPECT_EQ(d1.records[0].action, TokenAction::kPrivatized);
  EXPECT_EQ(d1.records[0].input, 0u);
  EXPECT_EQ(d1.records[1].input, 1u);
  EXPECT_EQ(tem.space().vocabulary().word(*d1.records[0].output), d1.tokens[0]);
}

TEST(PrivatizeDocumentTest, TokensAreIndependentDraws) {
  // Repeated tokens in one document are privatized separately.
  const TemMechanism tem = ToyTem(0.5);
  const std::vector<std::string> words(200, "a");
  RandomSource rng(3);
  ASSERT_OK_AND_ASSIGN(PrivatizedDocument d,
                       PrivatizeDocument(words, tem.space().vocabulary(), tem, OovPolicy::kError, rng));
  size_t changed = 0;
  for (const std::string& t : d.tokens) changed += t != "a";
  EXPECT_GT(changed, 20u);
  EXPECT_LT(changed, 180u);
}

TEST(PrivatizeDocumentTest, DropPolicy) {
  const TemMechanism tem = ToyTem();
  const std::vector<std::string> words{"zzz"};
  RandomSource rng(0);
  ASSERT_OK_AND_ASSIGN(PrivatizedDocument d,
                       PrivatizeDocument(words, tem.space().vocabulary(), tem, OovPolicy::kDrop, rng));
  EXPECT_THAT(d.tokens, IsEmpty());
  ASSERT_EQ(d.records.size(), 1u);
  EXPECT_EQ(d.records[0].action, TokenAction::kDropped);
  EXPECT_FALSE(d.records[0].input.has_value());
}

TEST(PrivatizeDocumentTest, PassthroughPolicy) {
  const TemMechanism tem = ToyTem();
  const std::vector<std::string> words{"zzz", "a"};
  RandomSource rng(0);
  ASSERT_OK_AND_ASSIGN(PrivatizedDocument d,
                       PrivatizeDocument(words, tem.space().vocabulary(), tem,
                                         OovPolicy::kPassthrough, rng));
  ASSERT_EQ(d.tokens.size(), 2u);
  EXPECT_EQ(d.tokens[0], "zzz");
  EXPECT_EQ(d.records[0].action, TokenAction::kPassedThrough);
  EXPECT_EQ(d.records[1].action, TokenAction::kPrivatized);
}

TEST(PrivatizeDocumentTest, ErrorPolicyNamesToken) {
  const TemMechanism tem = ToyTem();
  const std::vector<std::string> words{"a", "zzz"};
  RandomSource rng(0);
  EXPECT_THAT(PrivatizeDocument(words, tem.space().vocabulary(), tem, OovPolicy::kError, rng),
              StatusIs(absl::StatusCode::kNotFound, HasSubstr("'zzz' at position 1")));
}

TEST(PrivatizeDocumentTest, EmptyDocument) {
  const TemMechanism tem = ToyTem();
  RandomSource rng(0);
  ASSERT_OK_AND_ASSIGN(PrivatizedDocument d,
                       PrivatizeDocument({}, tem.space().vocabulary(), tem, OovPolicy::kError, rng));
  EXPECT_THAT(d.tokens, IsEmpty());
  EXPECT_THAT(d.records, IsEmpty());
}

TEST(PrivatizeDocumentTest, WorksWithMadlib) {
  ASSERT_OK_AND_ASSIGN(MadlibMechanism madlib, MadlibMechanism::Create(MakeToySpace(), 1e6));
  const std::vector<std::string> words{"c", "b", "a"};
  RandomSource rng(1);
  ASSERT_OK_AND_ASSIGN(PrivatizedDocument d,
                       PrivatizeDocument(words, madlib.space().vocabulary(), madlib,
                                         OovPolicy::kError, rng));
  EXPECT_THAT(d.tokens, ElementsAre("c", "b", "a"));
}

}  // namespace
}  // namespace tem
