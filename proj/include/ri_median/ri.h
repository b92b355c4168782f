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

// Second stage: given a released median o, privately choose a half-width b
// so that [o - b, o + b] covers the median rank with high probability.
//
// The choice is a single exponential mechanism over the candidates
// {s, 2s, ..., floor(N / s) * s} with utility
//
//   q(b) = -|f_b - (gamma1 + gamma2 + s * lipschitz)|,
//   f_b  = min(Rank(o + b) - Rank(o), Rank(o) - Rank(o - b)).
//
// f_b has sensitivity 1, so q does too.

#ifndef RI_MEDIAN_RI_H_
#define RI_MEDIAN_RI_H_

#include <cstdint>
#include <optional>

#include "absl/status/statusor.h"
#include "ri_median/core.h"
#include "ri_median/expmech.h"
#include "ri_median/median.h"
#include "ri_median/rng.h"

namespace ri_median {

inline constexpr double kRiUtilitySensitivity = 1.0;

// Smaller of the two one-sided rank counts between o and o +/- b. Ranks
// clamp outside the domain, so f saturates once a side runs out of records.
int64_t HelperF(const Dataset& data, int64_t o, int64_t b);

// (2 * delta_q / eps2) * ln(domain_size / (step * beta2)). Fails with
// FailedPrecondition when the log argument is <= 1.
absl::StatusOr<double> Gamma2(double eps2, double beta2, int64_t domain_size,
                              int64_t step, double delta_q = 1.0);

// gamma1 + gamma2 + step * lipschitz, the rank distance the interval aims
// for.
double RiTarget(double gamma1, double gamma2, int64_t step, double lipschitz);

double RiUtility(const Dataset& data, int64_t o, int64_t b, double gamma1,
                 double gamma2, int64_t step, double lipschitz);

// The arithmetic sequence {step, 2 * step, ..., size() * step}; kept
// implicit because it can hold ~1e12 entries.
class BCandidates {
 public:
  int64_t step() const { return step_; }
  int64_t size() const { return count_; }
  int64_t operator[](int64_t index) const { return (index + 1) * step_; }

 private:
  friend absl::StatusOr<BCandidates> BuildBCandidates(int64_t, int64_t);
  BCandidates(int64_t step, int64_t count) : step_(step), count_(count) {}

  int64_t step_;
  int64_t count_;
};

// Candidates for a domain of size N: multiples of step up to
// floor(N / step) * step. Requires 1 <= step <= N.
absl::StatusOr<BCandidates> BuildBCandidates(int64_t domain_size,
                                             int64_t step);

// Compresses the utility landscape over candidate indices 0..size()-1 into
// runs of constant f_b. Runs only break where o + b or o - b crosses a
// record, so there are at most 2 * (distinct records) + 1 of them.
IntervalSet BuildRiIntervals(const Dataset& data, int64_t o,
                             const BCandidates& candidates, double target);

// The coverage event Rank(o - b) <= n/2 <= Rank(o + b).
bool RankCovers(const Dataset& data, int64_t o, int64_t b);

struct RIResult {
  // Base-domain interval [lower, upper] around center.
  int64_t lower;
  int64_t center;
  int64_t upper;
  // Released quantities in the (expanded) sampling domain.
  int64_t center_expanded;
  int64_t b_hat;
  double gamma1;
  double gamma2;
  double target;
  double beta_total;
  // Whether the rank condition held for this release. Diagnostic only: it
  // reads the private data and is not part of the private output.
  bool rank_covered;
};

// Runs the interval stage on the expanded dataset around median.o. Endpoints
// o -/+ b_hat are clamped to the expanded domain and mapped back to the
// base domain. gamma2 uses data.domain_size() unless gamma_domain_size
// overrides it.
absl::StatusOr<RIResult> DpRi(
    const Dataset& data, const DedupMap& map, const MedianResult& median,
    const PrivacyParams& params, RngStream& rng,
    std::optional<int64_t> gamma_domain_size = std::nullopt);

}  // namespace ri_median

#endif  // RI_MEDIAN_RI_H_
