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

#ifndef TEM_MECHANISM_H_
#define TEM_MECHANISM_H_

#include <string_view>

#include "absl/status/statusor.h"
#include "tem/embedding_store.h"
#include "tem/random_source.h"

namespace tem {

// A randomized word -> word map. Implementations are immutable after
// construction and may be shared across threads; every call draws only from
// the RandomSource it is given.
class WordMechanism {
 public:
  virtual ~WordMechanism() = default;

  virtual std::string_view name() const = 0;
  virtual const MetricSpace& space() const = 0;
  virtual absl::StatusOr<WordId> Privatize(WordId input,
                                           RandomSource& rng) const = 0;
};

}  // namespace tem

#endif  // TEM_MECHANISM_H_
