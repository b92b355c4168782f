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

#include "ri_median/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ri_median/status_macros.h"

namespace ri_median::oracle {
namespace {

// Rank lookup for every y in [0, domain_size], filled by linear counting.
class RankTable {
 public:
  explicit RankTable(const Dataset& data)
      : n_(data.n()), ranks_(data.domain_size() + 1, 0) {
    for (int64_t x : data.values()) ++ranks_[x];
    for (size_t y = 1; y < ranks_.size(); ++y) ranks_[y] += ranks_[y - 1];
  }

  int64_t operator()(int64_t y) const {
    if (y < 0) return 0;
    if (y >= static_cast<int64_t>(ranks_.size())) return n_;
    return ranks_[y];
  }

 private:
  int64_t n_;
  std::vector<int64_t> ranks_;
};

int64_t TableHelperF(const RankTable& rank, int64_t o, int64_t b) {
  return std::min(std::abs(rank(o + b) - rank(o)),
                  std::abs(rank(o) - rank(o - b)));
}

double LogBound(double eps, double sensitivity, double log_argument) {
  return 2.0 * sensitivity / eps * std::log(log_argument);
}

absl::Status CheckEnumerable(int64_t width) {
  if (width > kMaxEnumerableWidth) {
    return absl::InvalidArgumentError(
        absl::StrCat("Oracle domain of width ", width, " exceeds the limit of ",
                     kMaxEnumerableWidth));
  }
  return absl::OkStatus();
}

}  // namespace

double ExactDistribution::Probability(int64_t element) const {
  if (element < first_ || element > last()) return 0.0;
  return probabilities_[element - first_];
}

double CompensatedSum(const std::vector<double>& values) {
  double sum = 0.0;
  double compensation = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      compensation += (sum - t) + v;
    } else {
      compensation += (v - t) + sum;
    }
    sum = t;
  }
  return sum + compensation;
}

int64_t LinearRank(const Dataset& data, int64_t y) {
  int64_t count = 0;
  for (int64_t x : data.values()) count += (x <= y) ? 1 : 0;
  return count;
}

absl::StatusOr<ExactDistribution> ExactDistributionOfUtility(
    int64_t lo, int64_t hi, const std::function<double(int64_t)>& utility,
    double epsilon, double sensitivity) {
  if (lo > hi) {
    return absl::InvalidArgumentError("Empty oracle domain");
  }
  if (!(epsilon > 0) || !(sensitivity > 0)) {
    return absl::InvalidArgumentError(
        "Epsilon and sensitivity must be positive");
  }
  RETURN_IF_ERROR(CheckEnumerable(hi - lo + 1));
  std::vector<double> exponents;
  exponents.reserve(hi - lo + 1);
  double max_exponent = -std::numeric_limits<double>::infinity();
  for (int64_t y = lo; y <= hi; ++y) {
    const double u = utility(y);
    if (!std::isfinite(u)) {
      return absl::InvalidArgumentError(
          absl::StrCat("Non-finite utility at element ", y));
    }
    exponents.push_back(epsilon * u / (2.0 * sensitivity));
    max_exponent = std::max(max_exponent, exponents.back());
  }
  std::vector<double> weights;
  weights.reserve(exponents.size());
  for (double e : exponents) weights.push_back(std::exp(e - max_exponent));
  const double total = CompensatedSum(weights);
  for (double& w : weights) w /= total;
  return ExactDistribution(lo, std::move(weights));
}

absl::StatusOr<ExactDistribution> ExactDistributionOf(
    const IntervalSet& intervals, double epsilon, double sensitivity) {
  RETURN_IF_ERROR(CheckEnumerable(intervals.total_width()));
  std::vector<double> utilities;
  utilities.reserve(intervals.total_width());
  for (const UtilityInterval& interval : intervals.intervals()) {
    for (int64_t y = interval.lo; y <= interval.hi; ++y) {
      utilities.push_back(interval.utility);
    }
  }
  const int64_t lo = intervals.lo();
  return ExactDistributionOfUtility(
      lo, intervals.hi(), [&](int64_t y) { return utilities[y - lo]; },
      epsilon, sensitivity);
}

absl::StatusOr<ExactDistribution> ExactMedianDistribution(const Dataset& data,
                                                          double eps1) {
  RETURN_IF_ERROR(CheckEnumerable(data.domain_size() + 1));
  const RankTable rank(data);
  const double half_n = static_cast<double>(data.n()) / 2.0;
  return ExactDistributionOfUtility(
      0, data.domain_size(),
      [&](int64_t y) {
        return -std::abs(static_cast<double>(rank(y)) - half_n);
      },
      eps1, 1.0);
}

double BruteMedianUtility(const Dataset& data, int64_t y) {
  return -std::abs(static_cast<double>(LinearRank(data, y)) -
                   static_cast<double>(data.n()) / 2.0);
}

int64_t BruteHelperF(const Dataset& data, int64_t o, int64_t b) {
  const int64_t rank_o = LinearRank(data, o);
  return std::min(std::abs(LinearRank(data, o + b) - rank_o),
                  std::abs(rank_o - LinearRank(data, o - b)));
}

absl::StatusOr<ExactDistribution> ExactRiDistribution(const Dataset& data,
                                                      int64_t o, int64_t step,
                                                      int64_t count,
                                                      double target,
                                                      double eps2) {
  if (count < 1 || step < 1) {
    return absl::InvalidArgumentError("Candidate set must be non-empty");
  }
  RETURN_IF_ERROR(CheckEnumerable(count));
  RETURN_IF_ERROR(CheckEnumerable(data.domain_size() + 1));
  const RankTable rank(data);
  return ExactDistributionOfUtility(
      0, count - 1,
      [&](int64_t index) {
        const int64_t f = TableHelperF(rank, o, (index + 1) * step);
        return -std::abs(static_cast<double>(f) - target);
      },
      eps2, 1.0);
}

int64_t ArgmaxUtility(const Dataset& data) {
  int64_t best = 0;
  double best_utility = -std::numeric_limits<double>::infinity();
  for (int64_t y = 0; y <= data.domain_size(); ++y) {
    const double u = BruteMedianUtility(data, y);
    if (u > best_utility) {
      best_utility = u;
      best = y;
    }
  }
  return best;
}

std::optional<int64_t> BruteForceMinB(const Dataset& data, int64_t o,
                                      double threshold, int64_t step,
                                      int64_t count) {
  for (int64_t i = 0; i < count; ++i) {
    const int64_t b = (i + 1) * step;
    if (static_cast<double>(BruteHelperF(data, o, b)) > threshold) return b;
  }
  return std::nullopt;
}

absl::StatusOr<double> ExactMedianTailProbability(const Dataset& data,
                                                  double eps1, double beta1) {
  ASSIGN_OR_RETURN(const ExactDistribution distribution,
                   ExactMedianDistribution(data, eps1));
  const double gamma1 =
      LogBound(eps1, 1.0, static_cast<double>(data.domain_size()) / beta1);
  const double best = BruteMedianUtility(data, ArgmaxUtility(data));
  const RankTable rank(data);
  const double half_n = static_cast<double>(data.n()) / 2.0;
  std::vector<double> violating;
  for (int64_t y = 0; y <= data.domain_size(); ++y) {
    const double u = -std::abs(static_cast<double>(rank(y)) - half_n);
    if (u < best - gamma1) violating.push_back(distribution.Probability(y));
  }
  return CompensatedSum(violating);
}

absl::StatusOr<double> ExactCoverage(const Dataset& data,
                                     const PrivacyParams& params) {
  RETURN_IF_ERROR(params.Validate());
  const int64_t domain_size = data.domain_size();
  const int64_t count = domain_size / params.step;
  if (domain_size > 1000 || count > 1000) {
    return absl::InvalidArgumentError(
        absl::StrCat("Exact coverage needs domain size and candidate count "
                     "<= 1000, got ",
                     domain_size, " and ", count));
  }
  if (count < 1) {
    return absl::FailedPreconditionError("Step exceeds the domain size");
  }
  const double n = static_cast<double>(domain_size);
  const double gamma1 = LogBound(params.eps1, params.delta_u, n / params.beta1);
  const double gamma2 = LogBound(
      params.eps2, params.delta_q,
      n / (static_cast<double>(params.step) * params.beta2));
  const double target = gamma1 + gamma2 +
                        static_cast<double>(params.step) * params.lipschitz;

  ASSIGN_OR_RETURN(const ExactDistribution median,
                   ExactMedianDistribution(data, params.eps1));
  const RankTable rank(data);
  const double half_n = static_cast<double>(data.n()) / 2.0;
  std::vector<double> covered_mass;
  for (int64_t o = 0; o <= domain_size; ++o) {
    const double p_o = median.Probability(o);
    if (p_o == 0.0) continue;
    ASSIGN_OR_RETURN(
        const ExactDistribution widths,
        ExactRiDistribution(data, o, params.step, count, target, params.eps2));
    std::vector<double> conditional;
    for (int64_t i = 0; i < count; ++i) {
      const int64_t b = (i + 1) * params.step;
      if (static_cast<double>(rank(o - b)) <= half_n &&
          half_n <= static_cast<double>(rank(o + b))) {
        conditional.push_back(widths.Probability(i));
      }
    }
    covered_mass.push_back(p_o * CompensatedSum(conditional));
  }
  return std::min(1.0, CompensatedSum(covered_mass));
}

double MaxProbabilityRatio(const ExactDistribution& p,
                           const ExactDistribution& q) {
  const int64_t lo = std::min(p.first(), q.first());
  const int64_t hi = std::max(p.last(), q.last());
  double worst = 0.0;
  for (int64_t y = lo; y <= hi; ++y) {
    const double a = p.Probability(y);
    const double b = q.Probability(y);
    if (a == 0.0) continue;
    if (b == 0.0) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, a / b);
  }
  return worst;
}

double TotalVariationDistance(const ExactDistribution& p,
                              const ExactDistribution& q) {
  const int64_t lo = std::min(p.first(), q.first());
  const int64_t hi = std::max(p.last(), q.last());
  std::vector<double> gaps;
  gaps.reserve(hi - lo + 1);
  for (int64_t y = lo; y <= hi; ++y) {
    gaps.push_back(std::abs(p.Probability(y) - q.Probability(y)));
  }
  return 0.5 * CompensatedSum(gaps);
}

}  // namespace ri_median::oracle
