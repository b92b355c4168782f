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

// Exponential mechanism over a domain compressed into runs of constant
// utility. Each run is weighted by its element count, so domains of 1e12+
// elements cost only as much as their number of runs.

#ifndef RI_MEDIAN_EXPMECH_H_
#define RI_MEDIAN_EXPMECH_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "ri_median/rng.h"

namespace ri_median {

// Elements lo..hi (inclusive) sharing one utility value.
struct UtilityInterval {
  int64_t lo;
  int64_t hi;
  double utility;

  int64_t width() const { return hi - lo + 1; }
};

// Disjoint intervals sorted by lo that tile [front().lo, back().hi] without
// gaps.
class IntervalSet {
 public:
  static absl::StatusOr<IntervalSet> Create(
      std::vector<UtilityInterval> intervals);

  std::span<const UtilityInterval> intervals() const { return intervals_; }
  size_t size() const { return intervals_.size(); }
  const UtilityInterval& operator[](size_t i) const { return intervals_[i]; }
  int64_t lo() const { return intervals_.front().lo; }
  int64_t hi() const { return intervals_.back().hi; }
  int64_t total_width() const { return total_width_; }

  // Index of the interval containing element y. Requires lo() <= y <= hi().
  size_t IntervalIndexOf(int64_t y) const;

 private:
  IntervalSet(std::vector<UtilityInterval> intervals, int64_t total_width)
      : intervals_(std::move(intervals)), total_width_(total_width) {}

  std::vector<UtilityInterval> intervals_;
  int64_t total_width_;
};

// Per-interval log-weights log(width) + eps * utility / (2 * sensitivity),
// shifted so the largest is 0. Fails on non-positive eps or sensitivity and
// on non-finite results.
absl::StatusOr<std::vector<double>> ShiftedLogWeights(
    const IntervalSet& intervals, double epsilon, double sensitivity);

// Samples elements with probability proportional to
// exp(eps * u(y) / (2 * sensitivity)).
//
// The interval is chosen by inverse CDF over the normalized interval weights
// (built once, in log space), then an element is drawn uniformly inside it.
class ExponentialMechanismSampler {
 public:
  static absl::StatusOr<ExponentialMechanismSampler> Create(
      const IntervalSet& intervals, double epsilon, double sensitivity);

  int64_t Sample(RngStream& rng) const;
  size_t SampleIntervalIndex(RngStream& rng) const;

  // Normalized probability of landing anywhere in interval i.
  double IntervalProbability(size_t i) const { return probabilities_[i]; }

 private:
  ExponentialMechanismSampler(std::vector<UtilityInterval> intervals,
                              std::vector<double> probabilities,
                              std::vector<double> cumulative)
      : intervals_(std::move(intervals)),
        probabilities_(std::move(probabilities)),
        cumulative_(std::move(cumulative)) {}

  std::vector<UtilityInterval> intervals_;
  std::vector<double> probabilities_;
  // cumulative_[i] = sum of probabilities_[0..i], pinned to exactly 1 from
  // the last interval with positive mass onwards.
  std::vector<double> cumulative_;
};

// One-shot convenience wrapper around ExponentialMechanismSampler.
absl::StatusOr<int64_t> SampleExponentialMechanism(
    const IntervalSet& intervals, double epsilon, double sensitivity,
    RngStream& rng);

}  // namespace ri_median

#endif  // RI_MEDIAN_EXPMECH_H_
