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

// Budget split and step-size selection. Both minimize the interval's width
// proxy gamma1 + gamma2 + s * lipschitz:
//
//   eps1 / eps2 = sqrt(ln(N / beta1) / ln(N / (s * beta2)))   (fixed s)
//   s           = 2 * delta_q / (eps2 * lipschitz)             (fixed eps2)
//
// Each depends on the other's output, so SolveFixedPoint alternates them.

#ifndef RI_MEDIAN_HYPERPARAMS_H_
#define RI_MEDIAN_HYPERPARAMS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "ri_median/core.h"

namespace ri_median {

struct EpsilonSplit {
  double eps1;
  double eps2;
};

class SplitPolicy {
 public:
  enum class Kind { kDefault, kOptimal, kMedianFocused, kRatio };

  static SplitPolicy Default() { return SplitPolicy(Kind::kDefault, 1.0); }
  static SplitPolicy Optimal() { return SplitPolicy(Kind::kOptimal, 0.0); }
  static SplitPolicy MedianFocused() {
    return SplitPolicy(Kind::kMedianFocused, 9.0);
  }
  // eps1 = ratio * eps2. Requires ratio > 0.
  static absl::StatusOr<SplitPolicy> Ratio(double ratio);

  // "default", "optimal", "median-focused" or "ratio=R".
  static absl::StatusOr<SplitPolicy> Parse(absl::string_view text);
  std::string ToString() const;

  Kind kind() const { return kind_; }
  // eps1 / eps2 for the fixed-ratio kinds; unused for kOptimal.
  double ratio() const { return ratio_; }

  friend bool operator==(const SplitPolicy&, const SplitPolicy&) = default;

 private:
  SplitPolicy(Kind kind, double ratio) : kind_(kind), ratio_(ratio) {}

  Kind kind_;
  double ratio_;
};

// Split with eps1 = ratio * eps2 and eps1 + eps2 = eps.
EpsilonSplit SplitByRatio(double eps, double ratio);

// The Lagrange-optimal split for a fixed step.
absl::StatusOr<EpsilonSplit> OptimalSplit(double eps, double beta1,
                                          double beta2, int64_t step,
                                          int64_t domain_size);

// 2 * delta_q / (eps2 * lipschitz) rounded to the nearest integer, at
// least 1.
int64_t OptimalStep(double eps2, double delta_q = 1.0, double lipschitz = 1.0);

// gamma1 + gamma2 + step * lipschitz.
absl::StatusOr<double> WidthObjective(double eps1, double eps2, int64_t step,
                                      double beta1, double beta2,
                                      int64_t domain_size,
                                      double lipschitz = 1.0);

enum class FixedPointOrder {
  // Start from eps1 = eps2 = eps / 2 and update the step first.
  kStepFirst,
  // Start from step = 1 and update the split first.
  kSplitFirst,
};

struct FixedPointOptions {
  FixedPointOrder order = FixedPointOrder::kStepFirst;
  int max_iterations = 100;
  double tolerance = 1e-6;
};

struct FixedPointIterate {
  double eps1;
  double eps2;
  int64_t step;
};

struct FixedPointResult {
  EpsilonSplit split;
  int64_t step;
  int iterations;
  std::vector<FixedPointIterate> trajectory;
};

// Alternates OptimalStep and OptimalSplit until eps1 moves by less than
// tolerance * eps and the step repeats. Fails with FailedPrecondition (the
// message includes the trajectory) if that does not happen within
// max_iterations.
absl::StatusOr<FixedPointResult> SolveFixedPoint(
    double eps, double beta1, double beta2, int64_t domain_size,
    const FixedPointOptions& options = {});

// Full parameter set for one release: split per policy, step from the
// optimal-step rule (jointly with the split for kOptimal), and
// beta1 = beta1_fraction * beta, beta2 = beta - beta1.
absl::StatusOr<PrivacyParams> ResolvePrivacyParams(const SplitPolicy& policy,
                                                   double eps, double beta,
                                                   int64_t domain_size,
                                                   double beta1_fraction = 0.5);

}  // namespace ri_median

#endif  // RI_MEDIAN_HYPERPARAMS_H_
