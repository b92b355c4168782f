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

#include "ri_median/ri.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ri_median/status_macros.h"

namespace ri_median {

int64_t HelperF(const Dataset& data, int64_t o, int64_t b) {
  const int64_t rank_o = data.Rank(o);
  const int64_t above = data.Rank(o + b) - rank_o;
  const int64_t below = rank_o - data.Rank(o - b);
  return std::min(std::abs(above), std::abs(below));
}

absl::StatusOr<double> Gamma2(double eps2, double beta2, int64_t domain_size,
                              int64_t step, double delta_q) {
  if (!(eps2 > 0) || !std::isfinite(eps2)) {
    return absl::InvalidArgumentError(
        absl::StrCat("eps2 must be finite and positive, got ", eps2));
  }
  if (!(beta2 > 0 && beta2 < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta2 must lie in (0, 1), got ", beta2));
  }
  if (step < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("Step must be at least 1, got ", step));
  }
  const double ratio = static_cast<double>(domain_size) /
                       (static_cast<double>(step) * beta2);
  if (!(ratio > 1)) {
    return absl::FailedPreconditionError(absl::StrCat(
        "Degenerate interval configuration: N / (s * beta2) = ", ratio,
        " must exceed 1 (N = ", domain_size, ", s = ", step, ")"));
  }
  return 2.0 * delta_q / eps2 * std::log(ratio);
}

double RiTarget(double gamma1, double gamma2, int64_t step, double lipschitz) {
  return gamma1 + gamma2 + static_cast<double>(step) * lipschitz;
}

double RiUtility(const Dataset& data, int64_t o, int64_t b, double gamma1,
                 double gamma2, int64_t step, double lipschitz) {
  return -std::abs(static_cast<double>(HelperF(data, o, b)) -
                   RiTarget(gamma1, gamma2, step, lipschitz));
}

absl::StatusOr<BCandidates> BuildBCandidates(int64_t domain_size,
                                             int64_t step) {
  if (step < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("Step must be at least 1, got ", step));
  }
  if (step > domain_size) {
    return absl::FailedPreconditionError(absl::StrCat(
        "Step ", step, " exceeds the domain size ", domain_size,
        "; no half-width candidate remains"));
  }
  return BCandidates(step, domain_size / step);
}

IntervalSet BuildRiIntervals(const Dataset& data, int64_t o,
                             const BCandidates& candidates, double target) {
  const int64_t step = candidates.step();
  const int64_t count = candidates.size();
  // Smallest candidate index whose half-width reaches b.
  auto first_index_reaching = [step](int64_t b) {
    return (b + step - 1) / step - 1;
  };

  std::vector<int64_t> starts = {0};
  const auto values = data.values();
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0 && values[i] == values[i - 1]) continue;
    // Rank(o + b) grows once b >= v - o; Rank(o - b) drops once
    // b >= o - v + 1.
    const int64_t breakpoint =
        values[i] > o ? values[i] - o : o - values[i] + 1;
    const int64_t index = first_index_reaching(breakpoint);
    if (index > 0 && index < count) starts.push_back(index);
  }
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());

  std::vector<UtilityInterval> intervals;
  intervals.reserve(starts.size());
  for (size_t i = 0; i < starts.size(); ++i) {
    const int64_t hi = i + 1 < starts.size() ? starts[i + 1] - 1 : count - 1;
    const double f =
        static_cast<double>(HelperF(data, o, candidates[starts[i]]));
    intervals.push_back({starts[i], hi, -std::abs(f - target)});
  }
  absl::StatusOr<IntervalSet> set = IntervalSet::Create(std::move(intervals));
  return *std::move(set);
}

bool RankCovers(const Dataset& data, int64_t o, int64_t b) {
  const double half_n = data.HalfN();
  return static_cast<double>(data.Rank(o - b)) <= half_n &&
         half_n <= static_cast<double>(data.Rank(o + b));
}

absl::StatusOr<RIResult> DpRi(const Dataset& data, const DedupMap& map,
                              const MedianResult& median,
                              const PrivacyParams& params, RngStream& rng,
                              std::optional<int64_t> gamma_domain_size) {
  RETURN_IF_ERROR(params.Validate());
  const int64_t domain_size = data.domain_size();
  ASSIGN_OR_RETURN(const BCandidates candidates,
                   BuildBCandidates(domain_size, params.step));
  ASSIGN_OR_RETURN(
      const double gamma2,
      Gamma2(params.eps2, params.beta2, gamma_domain_size.value_or(domain_size),
             params.step, params.delta_q));
  const double target =
      RiTarget(median.gamma1, gamma2, params.step, params.lipschitz);
  const IntervalSet intervals =
      BuildRiIntervals(data, median.o, candidates, target);
  ASSIGN_OR_RETURN(const int64_t index,
                   SampleExponentialMechanism(intervals, params.eps2,
                                              params.delta_q, rng));
  const int64_t b_hat = candidates[index];

  const int64_t lower_expanded = std::max<int64_t>(0, median.o - b_hat);
  const int64_t upper_expanded = std::min(domain_size, median.o + b_hat);
  RIResult result;
  result.lower = MapBack(lower_expanded, map);
  result.center = MapBack(median.o, map);
  result.upper = MapBack(upper_expanded, map);
  result.center_expanded = median.o;
  result.b_hat = b_hat;
  result.gamma1 = median.gamma1;
  result.gamma2 = gamma2;
  result.target = target;
  result.beta_total = params.beta_total;
  result.rank_covered = RankCovers(data, median.o, b_hat);
  return result;
}

}  // namespace ri_median
