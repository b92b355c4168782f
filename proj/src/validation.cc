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

#include "ri_median/validation.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "ri_median/core.h"
#include "ri_median/expmech.h"
#include "ri_median/hyperparams.h"
#include "ri_median/median.h"
#include "ri_median/oracle.h"
#include "ri_median/ri.h"
#include "ri_median/rng.h"

namespace ri_median::validation {
namespace {

CheckResult Fail(std::string name, const absl::Status& status) {
  return {std::move(name), false,
          absl::StrCat("error: ", status.ToString())};
}

double UniformReal(RngStream& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.UniformUnit();
}

std::vector<int64_t> RandomValues(RngStream& rng, int64_t n,
                                  int64_t domain_size) {
  std::vector<int64_t> values(n);
  for (int64_t& v : values) v = rng.UniformInt(0, domain_size);
  return values;
}

// Replaces one record with a different value.
std::vector<int64_t> RandomNeighbor(RngStream& rng,
                                    std::vector<int64_t> values,
                                    int64_t domain_size) {
  const int64_t index =
      rng.UniformInt(0, static_cast<int64_t>(values.size()) - 1);
  int64_t replacement = values[index];
  while (replacement == values[index]) {
    replacement = rng.UniformInt(0, domain_size);
  }
  values[index] = replacement;
  return values;
}

absl::StatusOr<Dataset> Remapped(const std::vector<int64_t>& values,
                                 int64_t domain_size) {
  absl::StatusOr<Dataset> base = Dataset::Create(values, domain_size);
  if (!base.ok()) return base.status();
  absl::StatusOr<DomainSpec> domain = DomainSpec::OfSize(domain_size);
  if (!domain.ok()) return domain.status();
  absl::StatusOr<DedupResult> dedup = DedupRemap(*base, *domain);
  if (!dedup.ok()) return dedup.status();
  return dedup->data;
}

// Largest base domain whose remapped size n (N + 1) - 1 stays within limit.
int64_t MaxBaseDomain(int64_t n, int64_t expanded_limit) {
  return (expanded_limit + 1) / n - 1;
}

double MaxTwoWayRatio(const oracle::ExactDistribution& p,
                      const oracle::ExactDistribution& q) {
  return std::max(oracle::MaxProbabilityRatio(p, q),
                  oracle::MaxProbabilityRatio(q, p));
}

double MaxAbsDifference(const oracle::ExactDistribution& p,
                        const oracle::ExactDistribution& q) {
  double worst = 0;
  const int64_t lo = std::min(p.first(), q.first());
  const int64_t hi = std::max(p.last(), q.last());
  for (int64_t y = lo; y <= hi; ++y) {
    worst = std::max(worst, std::abs(p.Probability(y) - q.Probability(y)));
  }
  return worst;
}

}  // namespace

CheckResult CheckSensitivity(const SensitivityOptions& options) {
  const std::string name = "helper f and RI utility sensitivity <= 1";
  RngStream rng(options.seed);
  int64_t comparisons = 0;
  int64_t violations = 0;
  double worst_f = 0;
  double worst_q = 0;

  auto compare = [&](const Dataset& d, const Dataset& d_prime, int64_t o,
                     int64_t step, int64_t count, double gamma1,
                     double gamma2) {
    for (int64_t i = 0; i < count; ++i) {
      const int64_t b = (i + 1) * step;
      const double f_gap =
          std::abs(static_cast<double>(HelperF(d, o, b) -
                                       HelperF(d_prime, o, b)));
      const double q_gap =
          std::abs(RiUtility(d, o, b, gamma1, gamma2, step, 1.0) -
                   RiUtility(d_prime, o, b, gamma1, gamma2, step, 1.0));
      worst_f = std::max(worst_f, f_gap);
      worst_q = std::max(worst_q, q_gap);
      if (f_gap > 1.0 || q_gap > 1.0) ++violations;
      ++comparisons;
    }
  };

  for (int pair = 0; pair < options.pairs; ++pair) {
    const int64_t n = rng.UniformInt(1, options.max_n);
    const int64_t domain_size = rng.UniformInt(1, options.max_domain);
    const std::vector<int64_t> values = RandomValues(rng, n, domain_size);
    const std::vector<int64_t> neighbor =
        RandomNeighbor(rng, values, domain_size);
    const double gamma1 = UniformReal(rng, 0.0, 2.0 * n);
    const double gamma2 = UniformReal(rng, 0.0, 2.0 * n);

    absl::StatusOr<Dataset> d = Dataset::Create(values, domain_size);
    absl::StatusOr<Dataset> d_prime = Dataset::Create(neighbor, domain_size);
    if (!d.ok()) return Fail(name, d.status());
    if (!d_prime.ok()) return Fail(name, d_prime.status());
    compare(*d, *d_prime, rng.UniformInt(0, domain_size), 1, domain_size,
            gamma1, gamma2);

    absl::StatusOr<Dataset> e = Remapped(values, domain_size);
    absl::StatusOr<Dataset> e_prime = Remapped(neighbor, domain_size);
    if (!e.ok()) return Fail(name, e.status());
    if (!e_prime.ok()) return Fail(name, e_prime.status());
    const int64_t expanded = e->domain_size();
    // Keep about 2000 candidates per remapped pair.
    const int64_t step =
        std::max<int64_t>(1, expanded / 2000) + rng.UniformInt(0, 2);
    compare(*e, *e_prime, rng.UniformInt(0, expanded), step,
            expanded / step, gamma1, gamma2);
  }
  return {name, violations == 0,
          absl::StrCat(options.pairs, " pairs, ", comparisons,
                       " (pair, b) comparisons, ", violations,
                       " violations, max |df| = ", worst_f,
                       ", max |dq| = ", worst_q)};
}

CheckResult CheckSamplerExactness(const SamplerOptions& options) {
  const std::string name = "interval sampler matches exact distribution";
  RngStream rng(options.seed);
  double worst_interval_tv = 0;
  double worst_element_tv = 0;
  double worst_element_excess = -1;
  bool passed = true;

  for (int set = 0; set < options.sets; ++set) {
    const int64_t k = rng.UniformInt(1, options.max_intervals);
    const int64_t total = rng.UniformInt(k, options.max_total_width);
    std::set<int64_t> cuts;
    while (static_cast<int64_t>(cuts.size()) < k - 1) {
      cuts.insert(rng.UniformInt(1, total - 1));
    }
    std::vector<UtilityInterval> pieces;
    const int64_t origin = rng.UniformInt(0, 1000);
    int64_t start = 0;
    cuts.insert(total);
    for (int64_t cut : cuts) {
      pieces.push_back({origin + start, origin + cut - 1,
                        -UniformReal(rng, 0.0, 20.0)});
      start = cut;
    }
    const double eps = UniformReal(rng, 0.2, 2.0);

    absl::StatusOr<IntervalSet> intervals = IntervalSet::Create(pieces);
    if (!intervals.ok()) return Fail(name, intervals.status());
    absl::StatusOr<oracle::ExactDistribution> exact =
        oracle::ExactDistributionOf(*intervals, eps, 1.0);
    if (!exact.ok()) return Fail(name, exact.status());
    absl::StatusOr<ExponentialMechanismSampler> sampler =
        ExponentialMechanismSampler::Create(*intervals, eps, 1.0);
    if (!sampler.ok()) return Fail(name, sampler.status());

    std::vector<int64_t> counts(total, 0);
    for (int64_t draw = 0; draw < options.draws; ++draw) {
      ++counts[sampler->Sample(rng) - origin];
    }

    const double m = static_cast<double>(options.draws);
    std::vector<double> element_gaps;
    double noise_floor = 0;
    std::vector<double> interval_gaps;
    for (const UtilityInterval& piece : intervals->intervals()) {
      double exact_mass = 0;
      double observed_mass = 0;
      for (int64_t y = piece.lo; y <= piece.hi; ++y) {
        const double p = exact->Probability(y);
        const double observed = static_cast<double>(counts[y - origin]) / m;
        exact_mass += p;
        observed_mass += observed;
        element_gaps.push_back(std::abs(observed - p));
        // E|p_hat - p| under the normal approximation.
        noise_floor += std::sqrt(2.0 * p * (1.0 - p) / (std::numbers::pi * m));
      }
      interval_gaps.push_back(std::abs(observed_mass - exact_mass));
    }
    const double interval_tv = 0.5 * oracle::CompensatedSum(interval_gaps);
    const double element_tv = 0.5 * oracle::CompensatedSum(element_gaps);
    const double excess = element_tv - 0.5 * noise_floor;
    worst_interval_tv = std::max(worst_interval_tv, interval_tv);
    worst_element_tv = std::max(worst_element_tv, element_tv);
    worst_element_excess = std::max(worst_element_excess, excess);
    if (interval_tv > options.tolerance || excess > options.tolerance) {
      passed = false;
    }
  }
  return {name, passed,
          absl::StrCat(options.sets, " sets x ", options.draws,
                       " draws, max interval TV = ", worst_interval_tv,
                       " (tol ", options.tolerance,
                       "), max element TV = ", worst_element_tv,
                       ", max element TV above noise floor = ",
                       worst_element_excess)};
}

CheckResult CheckPrivacyRatios(const PrivacyOptions& options) {
  const std::string name = "exact privacy ratios of both stages";
  RngStream rng(options.seed);
  int violations = 0;
  double worst_median_excess = -INFINITY;
  double worst_ri_excess = -INFINITY;
  double worst_oracle_gap = 0;

  for (int pair = 0; pair < options.pairs; ++pair) {
    const int64_t n = rng.UniformInt(1, options.max_n);
    const int64_t domain_size = rng.UniformInt(1, options.max_domain);
    const std::vector<int64_t> values = RandomValues(rng, n, domain_size);
    const std::vector<int64_t> neighbor =
        RandomNeighbor(rng, values, domain_size);
    absl::StatusOr<Dataset> d = Remapped(values, domain_size);
    absl::StatusOr<Dataset> d_prime = Remapped(neighbor, domain_size);
    if (!d.ok()) return Fail(name, d.status());
    if (!d_prime.ok()) return Fail(name, d_prime.status());
    const int64_t expanded = d->domain_size();

    const double eps = UniformReal(rng, 0.1, 3.0);
    const EpsilonSplit split = SplitByRatio(eps, UniformReal(rng, 0.25, 4.0));

    // Median stage, through the compressed intervals production samples.
    absl::StatusOr<oracle::ExactDistribution> p = oracle::ExactDistributionOf(
        BuildMedianIntervals(*d), split.eps1, kMedianUtilitySensitivity);
    absl::StatusOr<oracle::ExactDistribution> q = oracle::ExactDistributionOf(
        BuildMedianIntervals(*d_prime), split.eps1, kMedianUtilitySensitivity);
    absl::StatusOr<oracle::ExactDistribution> brute =
        oracle::ExactMedianDistribution(*d, split.eps1);
    if (!p.ok()) return Fail(name, p.status());
    if (!q.ok()) return Fail(name, q.status());
    if (!brute.ok()) return Fail(name, brute.status());
    worst_oracle_gap = std::max(worst_oracle_gap, MaxAbsDifference(*p, *brute));
    const double median_excess = MaxTwoWayRatio(*p, *q) - std::exp(split.eps1);
    worst_median_excess = std::max(worst_median_excess, median_excess);
    if (median_excess > options.slack) ++violations;

    // Interval stage for a fixed released o.
    const int64_t step = rng.UniformInt(1, std::min<int64_t>(5, expanded));
    absl::StatusOr<BCandidates> candidates =
        BuildBCandidates(expanded, step);
    absl::StatusOr<double> gamma1 = Gamma1(split.eps1, 0.025, expanded);
    absl::StatusOr<double> gamma2 = Gamma2(split.eps2, 0.025, expanded, step);
    if (!candidates.ok()) return Fail(name, candidates.status());
    if (!gamma1.ok()) return Fail(name, gamma1.status());
    if (!gamma2.ok()) return Fail(name, gamma2.status());
    const double target = RiTarget(*gamma1, *gamma2, step, 1.0);
    const int64_t o = rng.UniformInt(0, expanded);
    absl::StatusOr<oracle::ExactDistribution> r = oracle::ExactDistributionOf(
        BuildRiIntervals(*d, o, *candidates, target), split.eps2,
        kRiUtilitySensitivity);
    absl::StatusOr<oracle::ExactDistribution> s = oracle::ExactDistributionOf(
        BuildRiIntervals(*d_prime, o, *candidates, target), split.eps2,
        kRiUtilitySensitivity);
    absl::StatusOr<oracle::ExactDistribution> brute_ri =
        oracle::ExactRiDistribution(*d, o, step, candidates->size(), target,
                                    split.eps2);
    if (!r.ok()) return Fail(name, r.status());
    if (!s.ok()) return Fail(name, s.status());
    if (!brute_ri.ok()) return Fail(name, brute_ri.status());
    worst_oracle_gap =
        std::max(worst_oracle_gap, MaxAbsDifference(*r, *brute_ri));
    const double ri_excess = MaxTwoWayRatio(*r, *s) - std::exp(split.eps2);
    worst_ri_excess = std::max(worst_ri_excess, ri_excess);
    if (ri_excess > options.slack) ++violations;
  }
  const bool oracle_agrees = worst_oracle_gap <= 1e-12;
  return {name, violations == 0 && oracle_agrees,
          absl::StrCat(options.pairs, " pairs, ", violations,
                       " violations, max (ratio - e^eps1) = ",
                       worst_median_excess, ", max (ratio - e^eps2) = ",
                       worst_ri_excess,
                       ", max |compressed - brute force| = ",
                       worst_oracle_gap)};
}

CheckResult CheckExactCoverage(const CoverageOptions& options) {
  const std::string name = "exact coverage >= 1 - beta1 - beta2";
  RngStream rng(options.seed);
  int violations = 0;
  int done = 0;
  int64_t rejected = 0;
  double worst_margin = INFINITY;
  std::string worst_instance;

  while (done < options.instances) {
    const int64_t n = rng.UniformInt(1, options.max_n);
    const int64_t max_domain =
        std::min<int64_t>(100, MaxBaseDomain(n, options.max_expanded_domain));
    if (max_domain < 1) {
      ++rejected;
      continue;
    }
    const int64_t domain_size = rng.UniformInt(1, max_domain);
    absl::StatusOr<Dataset> d =
        Remapped(RandomValues(rng, n, domain_size), domain_size);
    if (!d.ok()) return Fail(name, d.status());
    const double eps = UniformReal(rng, 1.0, 16.0);
    const double beta = UniformReal(rng, 0.01, 0.5);
    absl::StatusOr<PrivacyParams> params = ResolvePrivacyParams(
        SplitPolicy::Default(), eps, beta, d->domain_size());
    if (!params.ok() || params->step > d->domain_size()) {
      ++rejected;
      continue;
    }
    absl::StatusOr<double> gamma1 =
        Gamma1(params->eps1, params->beta1, d->domain_size());
    absl::StatusOr<double> gamma2 = Gamma2(params->eps2, params->beta2,
                                           d->domain_size(), params->step);
    // The guarantee needs a candidate whose f reaches the target from a
    // median within gamma1 ranks of n / 2.
    if (!gamma1.ok() || !gamma2.ok() ||
        d->HalfN() < 2.0 * *gamma1 + *gamma2 +
                         static_cast<double>(params->step) *
                             params->lipschitz) {
      ++rejected;
      continue;
    }
    absl::StatusOr<double> coverage = oracle::ExactCoverage(*d, *params);
    if (!coverage.ok()) return Fail(name, coverage.status());
    const double margin = *coverage - (1.0 - params->beta1 - params->beta2);
    if (margin < worst_margin) {
      worst_margin = margin;
      worst_instance = absl::StrCat("n=", n, " N=", domain_size,
                                    " eps=", eps, " beta=", beta);
    }
    if (margin < 0) ++violations;
    ++done;
  }
  return {name, violations == 0,
          absl::StrCat(options.instances, " instances (", rejected,
                       " draws rejected), ", violations,
                       " violations, min (coverage - (1 - beta1 - beta2)) = ",
                       worst_margin, " at ", worst_instance)};
}

CheckResult CheckMedianTail(const TailOptions& options) {
  const std::string name = "median utility tail <= beta1";
  RngStream rng(options.seed);
  int violations = 0;
  int done = 0;
  double worst_ratio = 0;

  while (done < options.instances) {
    const int64_t n = rng.UniformInt(1, options.max_n);
    const int64_t max_domain =
        std::min<int64_t>(100, MaxBaseDomain(n, options.max_expanded_domain));
    if (max_domain < 1) continue;
    const int64_t domain_size = rng.UniformInt(1, max_domain);
    absl::StatusOr<Dataset> d =
        Remapped(RandomValues(rng, n, domain_size), domain_size);
    if (!d.ok()) return Fail(name, d.status());
    const double eps1 = UniformReal(rng, 0.5, 8.0);
    const double beta1 = UniformReal(rng, 0.001, 0.5);
    absl::StatusOr<double> gamma1 = Gamma1(eps1, beta1, d->domain_size());
    if (!gamma1.ok()) return Fail(name, gamma1.status());
    // Skip instances where no output can fall below the bound.
    if (*gamma1 >= d->HalfN()) continue;
    absl::StatusOr<double> tail =
        oracle::ExactMedianTailProbability(*d, eps1, beta1);
    if (!tail.ok()) return Fail(name, tail.status());
    worst_ratio = std::max(worst_ratio, *tail / beta1);
    if (*tail > beta1) ++violations;
    ++done;
  }
  return {name, violations == 0,
          absl::StrCat(options.instances, " instances, ", violations,
                       " violations, max tail / beta1 = ", worst_ratio)};
}

CheckResult CheckFixedPoint(const FixedPointCheckOptions& options) {
  const std::string name = "budget/step fixed point";
  const double n = static_cast<double>(options.domain_size);
  const double median_log = std::log(n / options.beta1);
  auto objective = [&](double eps1, double eps2, int64_t step) {
    return 2.0 / eps1 * median_log +
           2.0 / eps2 *
               std::log(n / (static_cast<double>(step) * options.beta2)) +
           static_cast<double>(step);
  };

  bool passed = true;
  std::vector<std::string> details;
  for (double eps : options.eps_grid) {
    FixedPointOptions solver;
    solver.max_iterations = options.max_iterations;
    absl::StatusOr<FixedPointResult> result = SolveFixedPoint(
        eps, options.beta1, options.beta2, options.domain_size, solver);
    if (!result.ok()) {
      passed = false;
      details.push_back(absl::StrCat("eps=", eps, ": ",
                                     result.status().message()));
      continue;
    }
    const double eps1 = result->split.eps1;
    const double eps2 = result->split.eps2;
    const int64_t step = result->step;

    const double ratio_expected = std::sqrt(
        median_log /
        std::log(n / (static_cast<double>(step) * options.beta2)));
    const double ratio_error =
        std::abs(eps1 / eps2 - ratio_expected) / ratio_expected;
    // The step equation holds up to rounding to an integer >= 1.
    const double continuous_step = 2.0 / eps2;
    const bool step_ok =
        std::abs(static_cast<double>(step) - continuous_step) <= 0.5 + 1e-9 ||
        (step == 1 && continuous_step < 1.0);

    double grid_best = INFINITY;
    const int kEpsPoints = 4000;
    const int64_t max_step = std::max<int64_t>(200, 8 * llround(2.0 / eps));
    for (int i = 1; i < kEpsPoints; ++i) {
      const double e1 = eps * i / kEpsPoints;
      for (int64_t s = 1; s <= max_step; ++s) {
        grid_best = std::min(grid_best, objective(e1, eps - e1, s));
      }
    }
    const double fixed_value = objective(eps1, eps2, step);
    const double gap = fixed_value / grid_best - 1.0;

    const bool ok = result->iterations <= options.max_iterations &&
                    ratio_error <= options.equation_tolerance && step_ok &&
                    gap <= options.objective_tolerance;
    passed = passed && ok;
    details.push_back(absl::StrCat(
        "eps=", eps, ": ", result->iterations, " it, s=", step,
        ", ratio err=", ratio_error, ", objective gap=", gap));
  }
  return {name, passed, absl::StrJoin(details, "; ")};
}

std::vector<CheckResult> RunOracleSuite() {
  return {CheckSensitivity(),  CheckSamplerExactness(), CheckPrivacyRatios(),
          CheckExactCoverage(), CheckMedianTail(),       CheckFixedPoint()};
}

}  // namespace ri_median::validation
