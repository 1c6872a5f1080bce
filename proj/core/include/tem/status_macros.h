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

#ifndef TEM_STATUS_MACROS_H_
#define TEM_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define TEM_STATUS_CONCAT_INNER_(x, y) x##y
#define TEM_STATUS_CONCAT_(x, y) TEM_STATUS_CONCAT_INNER_(x, y)

// Returns early from the enclosing function if `expr` is not OK.
#define TEM_RETURN_IF_ERROR(expr)                \
  do {                                           \
    const absl::Status tem_status_ = (expr);     \
    if (!tem_status_.ok()) return tem_status_;   \
  } while (0)

// Evaluates a StatusOr expression, returning its status on error and otherwise
// moving the value into `lhs`.
#define TEM_ASSIGN_OR_RETURN(lhs, expr) \
  TEM_ASSIGN_OR_RETURN_IMPL_(TEM_STATUS_CONCAT_(tem_statusor_, __LINE__), lhs, expr)

#define TEM_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, expr) \
  auto statusor = (expr);                               \
  if (!statusor.ok()) return statusor.status();         \
  lhs = std::move(statusor).value()

#endif  // TEM_STATUS_MACROS_H_
