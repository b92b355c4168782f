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

#include "ri_median/expmech.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ri_median/status_macros.h"

namespace ri_median {

absl::StatusOr<IntervalSet> IntervalSet::Create(
    std::vector<UtilityInterval> intervals) {
  if (intervals.empty()) {
    return absl::InvalidArgumentError("Interval set must not be empty");
  }
  int64_t total_width = 0;
  for (size_t i = 0; i < intervals.size(); ++i) {
    const UtilityInterval& interval = intervals[i];
    if (interval.lo > interval.hi) {
      return absl::InvalidArgumentError(
          absl::StrCat("Interval ", i, " has lo ", interval.lo, " > hi ",
                       interval.hi));
    }
    if (!std::isfinite(interval.utility)) {
      return absl::InvalidArgumentError(
          absl::StrCat("Interval ", i, " has non-finite utility"));
    }
    if (i > 0 && interval.lo != intervals[i - 1].hi + 1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Interval ", i, " starts at ", interval.lo, " but the previous one ends at ",
          intervals[i - 1].hi, "; intervals must be sorted and contiguous"));
    }
    if (__builtin_add_overflow(total_width, interval.width(), &total_width)) {
      return absl::OutOfRangeError("Total interval width overflows int64_t");
    }
  }
  return IntervalSet(std::move(intervals), total_width);
}

size_t IntervalSet::IntervalIndexOf(int64_t y) const {
  auto it = std::upper_bound(
      intervals_.begin(), intervals_.end(), y,
      [](int64_t value, const UtilityInterval& interval) {
        return value < interval.lo;
      });
  return static_cast<size_t>(it - intervals_.begin()) - 1;
}

absl::StatusOr<std::vector<double>> ShiftedLogWeights(
    const IntervalSet& intervals, double epsilon, double sensitivity) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Epsilon must be finite and positive, got ", epsilon));
  }
  if (!(sensitivity > 0) || !std::isfinite(sensitivity)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Sensitivity must be finite and positive, got ", sensitivity));
  }
  const double scale = epsilon / (2.0 * sensitivity);
  double max_utility = -std::numeric_limits<double>::infinity();
  for (const UtilityInterval& interval : intervals.intervals()) {
    max_utility = std::max(max_utility, interval.utility);
  }
  std::vector<double> log_weights;
  log_weights.reserve(intervals.size());
  double max_log_weight = -std::numeric_limits<double>::infinity();
  for (const UtilityInterval& interval : intervals.intervals()) {
    // Subtract the max utility before scaling so the exponent never blows up.
    const double log_weight =
        std::log(static_cast<double>(interval.width())) +
        scale * (interval.utility - max_utility);
    if (std::isnan(log_weight) || (std::isinf(log_weight) && log_weight > 0)) {
      return absl::InvalidArgumentError("Non-finite log-weight");
    }
    log_weights.push_back(log_weight);
    max_log_weight = std::max(max_log_weight, log_weight);
  }
  for (double& log_weight : log_weights) log_weight -= max_log_weight;
  return log_weights;
}

absl::StatusOr<ExponentialMechanismSampler>
ExponentialMechanismSampler::Create(const IntervalSet& intervals,
                                    double epsilon, double sensitivity) {
  ASSIGN_OR_RETURN(std::vector<double> log_weights,
                   ShiftedLogWeights(intervals, epsilon, sensitivity));

  long double total = 0;
  std::vector<double> weights(log_weights.size());
  for (size_t i = 0; i < log_weights.size(); ++i) {
    weights[i] = std::exp(log_weights[i]);
    total += weights[i];
  }
  // The max-shifted weight is exactly 1, so total >= 1.
  std::vector<double> probabilities(weights.size());
  std::vector<double> cumulative(weights.size());
  long double running = 0;
  size_t last_positive = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    probabilities[i] = static_cast<double>(weights[i] / total);
    running += weights[i];
    cumulative[i] = static_cast<double>(running / total);
    if (weights[i] > 0) last_positive = i;
  }
  for (size_t i = last_positive; i < cumulative.size(); ++i) {
    cumulative[i] = 1.0;
  }
  return ExponentialMechanismSampler(
      std::vector<UtilityInterval>(intervals.intervals().begin(),
                                   intervals.intervals().end()),
      std::move(probabilities), std::move(cumulative));
}

size_t ExponentialMechanismSampler::SampleIntervalIndex(RngStream& rng) const {
  const double u = rng.UniformUnit();
  // First interval whose cumulative mass exceeds u; zero-mass intervals
  // share their predecessor's cumulative value and are never selected.
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<size_t>(it - cumulative_.begin());
}

int64_t ExponentialMechanismSampler::Sample(RngStream& rng) const {
  const UtilityInterval& chosen = intervals_[SampleIntervalIndex(rng)];
  return rng.UniformInt(chosen.lo, chosen.hi);
}

absl::StatusOr<int64_t> SampleExponentialMechanism(
    const IntervalSet& intervals, double epsilon, double sensitivity,
    RngStream& rng) {
  ASSIGN_OR_RETURN(
      ExponentialMechanismSampler sampler,
      ExponentialMechanismSampler::Create(intervals, epsilon, sensitivity));
  return sampler.Sample(rng);
}

}  // namespace ri_median
