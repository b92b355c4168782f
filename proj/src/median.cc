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

#include "ri_median/median.h"

#include <cmath>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ri_median/status_macros.h"

namespace ri_median {

double MedianUtility(const Dataset& data, int64_t y) {
  return -std::abs(static_cast<double>(data.Rank(y)) - data.HalfN());
}

IntervalSet BuildMedianIntervals(const Dataset& data) {
  const auto values = data.values();
  const double half_n = data.HalfN();
  std::vector<UtilityInterval> intervals;
  intervals.reserve(values.size() + 1);
  if (values.front() > 0) {
    intervals.push_back({0, values.front() - 1, -half_n});
  }
  size_t i = 0;
  while (i < values.size()) {
    size_t next = i;
    while (next < values.size() && values[next] == values[i]) ++next;
    // Every y in [values[i], values[next]) has rank == next.
    const int64_t hi =
        next < values.size() ? values[next] - 1 : data.domain_size();
    intervals.push_back(
        {values[i], hi, -std::abs(static_cast<double>(next) - half_n)});
    i = next;
  }
  absl::StatusOr<IntervalSet> set = IntervalSet::Create(std::move(intervals));
  // The construction tiles [0, domain_size] by design of the loop above.
  return *std::move(set);
}

absl::StatusOr<double> Gamma1(double eps1, double beta1, int64_t domain_size,
                              double sensitivity) {
  if (!(eps1 > 0) || !std::isfinite(eps1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("eps1 must be finite and positive, got ", eps1));
  }
  if (!(beta1 > 0 && beta1 < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta1 must lie in (0, 1), got ", beta1));
  }
  if (domain_size < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("Domain size must be at least 1, got ", domain_size));
  }
  return 2.0 * sensitivity / eps1 *
         std::log(static_cast<double>(domain_size) / beta1);
}

absl::StatusOr<MedianResult> DpMedian(const Dataset& data, double eps1,
                                      double beta1, RngStream& rng,
                                      std::optional<int64_t> gamma_domain_size) {
  ASSIGN_OR_RETURN(
      const double gamma1,
      Gamma1(eps1, beta1, gamma_domain_size.value_or(data.domain_size())));
  ASSIGN_OR_RETURN(const int64_t o,
                   SampleExponentialMechanism(BuildMedianIntervals(data), eps1,
                                              kMedianUtilitySensitivity, rng));
  return MedianResult{o, gamma1, eps1};
}

}  // namespace ri_median
