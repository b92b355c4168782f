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

// First stage: an eps1-DP median drawn by the exponential mechanism with the
// rank-distance utility -|Rank(y) - n/2|.

#ifndef RI_MEDIAN_MEDIAN_H_
#define RI_MEDIAN_MEDIAN_H_

#include <cstdint>
#include <optional>

#include "absl/status/statusor.h"
#include "ri_median/core.h"
#include "ri_median/expmech.h"
#include "ri_median/rng.h"

namespace ri_median {

// Sensitivity of the rank-distance utility under record replacement.
inline constexpr double kMedianUtilitySensitivity = 1.0;

// -|Rank(y) - n/2| with the exact (possibly half-integer) n/2.
double MedianUtility(const Dataset& data, int64_t y);

// Partitions {0, ..., data.domain_size()} into at most n + 1 runs of constant
// rank, one starting at 0 (if no record sits there) and one at each distinct
// record value. Adjacent runs are never merged, even when their utilities
// coincide.
IntervalSet BuildMedianIntervals(const Dataset& data);

// (2 * sensitivity / eps1) * ln(domain_size / beta1): with probability
// 1 - beta1 the sampled median's utility is within this of the optimum.
absl::StatusOr<double> Gamma1(double eps1, double beta1, int64_t domain_size,
                              double sensitivity = kMedianUtilitySensitivity);

struct MedianResult {
  // Sampled median, in the dataset's own domain.
  int64_t o;
  double gamma1;
  double eps1_used;
};

// Samples the median over {0, ..., data.domain_size()}. gamma1 uses
// data.domain_size() unless gamma_domain_size overrides it.
absl::StatusOr<MedianResult> DpMedian(
    const Dataset& data, double eps1, double beta1, RngStream& rng,
    std::optional<int64_t> gamma_domain_size = std::nullopt);

}  // namespace ri_median

#endif  // RI_MEDIAN_MEDIAN_H_
