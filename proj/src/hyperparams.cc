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

#include "ri_median/hyperparams.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/match.h"
#include "ri_median/median.h"
#include "ri_median/ri.h"
#include "ri_median/status_macros.h"

namespace ri_median {
namespace {

absl::Status CheckPositive(double value, const char* name) {
  if (!(value > 0) || !std::isfinite(value)) {
    return absl::InvalidArgumentError(
        absl::StrCat(name, " must be finite and positive, got ", value));
  }
  return absl::OkStatus();
}

std::string FormatTrajectory(const std::vector<FixedPointIterate>& trajectory) {
  return absl::StrJoin(trajectory, " -> ",
                       [](std::string* out, const FixedPointIterate& it) {
                         absl::StrAppend(out, "(eps1=", it.eps1,
                                         ", s=", it.step, ")");
                       });
}

}  // namespace

absl::StatusOr<SplitPolicy> SplitPolicy::Ratio(double ratio) {
  RETURN_IF_ERROR(CheckPositive(ratio, "Split ratio"));
  return SplitPolicy(Kind::kRatio, ratio);
}

absl::StatusOr<SplitPolicy> SplitPolicy::Parse(absl::string_view text) {
  if (text == "default") return Default();
  if (text == "optimal") return Optimal();
  if (text == "median-focused") return MedianFocused();
  if (absl::StartsWith(text, "ratio=")) {
    double ratio;
    if (!absl::SimpleAtod(text.substr(6), &ratio)) {
      return absl::InvalidArgumentError(
          absl::StrCat("Malformed split ratio in '", text, "'"));
    }
    return Ratio(ratio);
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "Unknown split policy '", text,
      "'; expected default, optimal, median-focused or ratio=R"));
}

std::string SplitPolicy::ToString() const {
  switch (kind_) {
    case Kind::kDefault:
      return "default";
    case Kind::kOptimal:
      return "optimal";
    case Kind::kMedianFocused:
      return "median-focused";
    case Kind::kRatio:
      return absl::StrCat("ratio=", ratio_);
  }
  return "unknown";
}

EpsilonSplit SplitByRatio(double eps, double ratio) {
  const double eps2 = eps / (1.0 + ratio);
  return {eps - eps2, eps2};
}

absl::StatusOr<EpsilonSplit> OptimalSplit(double eps, double beta1,
                                          double beta2, int64_t step,
                                          int64_t domain_size) {
  RETURN_IF_ERROR(CheckPositive(eps, "eps"));
  RETURN_IF_ERROR(CheckPositive(beta1, "beta1"));
  RETURN_IF_ERROR(CheckPositive(beta2, "beta2"));
  const double n = static_cast<double>(domain_size);
  const double median_log = std::log(n / beta1);
  const double interval_log =
      std::log(n / (static_cast<double>(step) * beta2));
  if (!(median_log > 0) || !(interval_log > 0)) {
    return absl::FailedPreconditionError(absl::StrCat(
        "Degenerate split: ln(N / beta1) = ", median_log,
        " and ln(N / (s * beta2)) = ", interval_log, " must both be positive"));
  }
  return SplitByRatio(eps, std::sqrt(median_log / interval_log));
}

int64_t OptimalStep(double eps2, double delta_q, double lipschitz) {
  const double step = 2.0 * delta_q / (eps2 * lipschitz);
  return std::max<int64_t>(1, std::llround(step));
}

absl::StatusOr<double> WidthObjective(double eps1, double eps2, int64_t step,
                                      double beta1, double beta2,
                                      int64_t domain_size, double lipschitz) {
  ASSIGN_OR_RETURN(const double gamma1, Gamma1(eps1, beta1, domain_size));
  ASSIGN_OR_RETURN(const double gamma2,
                   Gamma2(eps2, beta2, domain_size, step));
  return RiTarget(gamma1, gamma2, step, lipschitz);
}

absl::StatusOr<FixedPointResult> SolveFixedPoint(
    double eps, double beta1, double beta2, int64_t domain_size,
    const FixedPointOptions& options) {
  RETURN_IF_ERROR(CheckPositive(eps, "eps"));
  EpsilonSplit split = SplitByRatio(eps, 1.0);
  int64_t step = 1;
  if (options.order == FixedPointOrder::kStepFirst) {
    step = OptimalStep(split.eps2);
  }
  std::vector<FixedPointIterate> trajectory = {
      {split.eps1, split.eps2, step}};

  for (int iteration = 1; iteration <= options.max_iterations; ++iteration) {
    ASSIGN_OR_RETURN(const EpsilonSplit next_split,
                     OptimalSplit(eps, beta1, beta2, step, domain_size));
    const int64_t next_step = OptimalStep(next_split.eps2);
    trajectory.push_back({next_split.eps1, next_split.eps2, next_step});
    const bool converged =
        std::abs(next_split.eps1 - split.eps1) < options.tolerance * eps &&
        next_step == step;
    split = next_split;
    step = next_step;
    if (converged) {
      return FixedPointResult{split, step, iteration, std::move(trajectory)};
    }
  }
  return absl::FailedPreconditionError(
      absl::StrCat("Budget/step fixed point did not converge within ",
                   options.max_iterations,
                   " iterations: ", FormatTrajectory(trajectory)));
}

absl::StatusOr<PrivacyParams> ResolvePrivacyParams(const SplitPolicy& policy,
                                                   double eps, double beta,
                                                   int64_t domain_size,
                                                   double beta1_fraction) {
  RETURN_IF_ERROR(CheckPositive(eps, "eps"));
  if (!(beta > 0 && beta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta must lie in (0, 1), got ", beta));
  }
  if (!(beta1_fraction > 0 && beta1_fraction < 1)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "beta1 fraction must lie in (0, 1), got ", beta1_fraction));
  }
  PrivacyParams params;
  params.eps_total = eps;
  params.beta_total = beta;
  params.beta1 = beta * beta1_fraction;
  params.beta2 = beta - params.beta1;

  if (policy.kind() == SplitPolicy::Kind::kOptimal) {
    ASSIGN_OR_RETURN(
        const FixedPointResult fixed_point,
        SolveFixedPoint(eps, params.beta1, params.beta2, domain_size));
    params.eps1 = fixed_point.split.eps1;
    params.eps2 = fixed_point.split.eps2;
    params.step = fixed_point.step;
  } else {
    const EpsilonSplit split = SplitByRatio(eps, policy.ratio());
    params.eps1 = split.eps1;
    params.eps2 = split.eps2;
    params.step = OptimalStep(split.eps2, params.delta_q, params.lipschitz);
  }
  RETURN_IF_ERROR(params.Validate());
  return params;
}

}  // namespace ri_median
