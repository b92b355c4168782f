//
// Copyright 2026 The ri-median Authors
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

#ifndef RI_MEDIAN_STATUS_MACROS_H_
#define RI_MEDIAN_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define RI_STATUS_CONCAT_INNER_(x, y) x##y
#define RI_STATUS_CONCAT_(x, y) RI_STATUS_CONCAT_INNER_(x, y)

#define RETURN_IF_ERROR(expr)                      \
  do {                                             \
    const absl::Status _ri_status = (expr);        \
    if (!_ri_status.ok()) return _ri_status;       \
  } while (0)

#define ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                           \
  if (!statusor.ok()) return statusor.status();      \
  lhs = std::move(statusor).value()

#define ASSIGN_OR_RETURN(lhs, rexpr) \
  ASSIGN_OR_RETURN_IMPL_(            \
      RI_STATUS_CONCAT_(_ri_statusor_, __LINE__), lhs, rexpr)

#endif  // RI_MEDIAN_STATUS_MACROS_H_
