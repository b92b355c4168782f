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

// Exact, enumeration-based references for small instances. Everything here
// works element by element with its own linear-scan rank, so it shares no
// code path with the interval compression or the sampler it is used to
// check.

#ifndef RI_MEDIAN_ORACLE_H_
#define RI_MEDIAN_ORACLE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "ri_median/core.h"
#include "ri_median/expmech.h"

namespace ri_median::oracle {

// Largest domain the element-wise oracles will enumerate.
inline constexpr int64_t kMaxEnumerableWidth = 1'000'000;

// Probabilities over the consecutive elements first, first + 1, ...
class ExactDistribution {
 public:
  ExactDistribution(int64_t first, std::vector<double> probabilities)
      : first_(first), probabilities_(std::move(probabilities)) {}

  int64_t first() const { return first_; }
  int64_t last() const {
    return first_ + static_cast<int64_t>(probabilities_.size()) - 1;
  }
  const std::vector<double>& probabilities() const { return probabilities_; }
  // Zero outside [first(), last()].
  double Probability(int64_t element) const;

 private:
  int64_t first_;
  std::vector<double> probabilities_;
};

// Sum with Neumaier compensation.
double CompensatedSum(const std::vector<double>& values);

// Number of records <= y by linear scan.
int64_t LinearRank(const Dataset& data, int64_t y);

// Exponential-mechanism probabilities for an arbitrary utility over the
// elements lo..hi, computed straight from the definition.
absl::StatusOr<ExactDistribution> ExactDistributionOfUtility(
    int64_t lo, int64_t hi, const std::function<double(int64_t)>& utility,
    double epsilon, double sensitivity);

// Expands an interval set element by element and applies the definition.
absl::StatusOr<ExactDistribution> ExactDistributionOf(
    const IntervalSet& intervals, double epsilon, double sensitivity);

// Median-stage output distribution over {0, ..., data.domain_size()}.
absl::StatusOr<ExactDistribution> ExactMedianDistribution(const Dataset& data,
                                                          double eps1);

// -|LinearRank(y) - n/2|.
double BruteMedianUtility(const Dataset& data, int64_t y);

// min of the two one-sided rank counts, via LinearRank.
int64_t BruteHelperF(const Dataset& data, int64_t o, int64_t b);

// Interval-stage distribution over candidate indices 0..count-1, where index
// i stands for half-width (i + 1) * step.
absl::StatusOr<ExactDistribution> ExactRiDistribution(const Dataset& data,
                                                      int64_t o, int64_t step,
                                                      int64_t count,
                                                      double target,
                                                      double eps2);

// Lowest element of {0, ..., domain_size} with maximal median utility.
int64_t ArgmaxUtility(const Dataset& data);

// Smallest candidate (i + 1) * step, i < count, with f_b > threshold.
std::optional<int64_t> BruteForceMinB(const Dataset& data, int64_t o,
                                      double threshold, int64_t step,
                                      int64_t count);

// Probability that the median stage lands more than gamma1 below the best
// achievable utility.
absl::StatusOr<double> ExactMedianTailProbability(const Dataset& data,
                                                  double eps1, double beta1);

// Exact probability of Rank(o - b) <= n/2 <= Rank(o + b) over the joint
// two-stage distribution, with b's landscape rebuilt for each o. data is the
// sampling-domain (expanded) dataset; gamma constants use its domain size.
// Requires domain size and candidate count <= 1000.
absl::StatusOr<double> ExactCoverage(const Dataset& data,
                                     const PrivacyParams& params);

// max over elements of p(y) / q(y). Elements where both vanish are skipped;
// an element with p > 0 = q gives +inf.
double MaxProbabilityRatio(const ExactDistribution& p,
                           const ExactDistribution& q);

double TotalVariationDistance(const ExactDistribution& p,
                              const ExactDistribution& q);

}  // namespace ri_median::oracle

#endif  // RI_MEDIAN_ORACLE_H_
