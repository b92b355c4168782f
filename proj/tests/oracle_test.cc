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

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "ri_median/core.h"
#include "ri_median/expmech.h"
#include "ri_median/hyperparams.h"
#include "ri_median/rng.h"
#include "ri_median/validation.h"

namespace ri_median::oracle {
namespace {

Dataset MakeDataset(std::vector<int64_t> values, int64_t domain_size) {
  absl::StatusOr<Dataset> data = Dataset::Create(std::move(values), domain_size);
  EXPECT_TRUE(data.ok()) << data.status();
  return *std::move(data);
}

std::vector<int64_t> Range(int64_t lo, int64_t hi) {
  std::vector<int64_t> values(hi - lo + 1);
  std::iota(values.begin(), values.end(), lo);
  return values;
}

TEST(ExactDistributionTest, UniformUtilitiesGiveUniform) {
  absl::StatusOr<ExactDistribution> d = ExactDistributionOfUtility(
      3, 12, [](int64_t) { return -4.0; }, 1.0, 1.0);
  ASSERT_TRUE(d.ok());
  for (int64_t y = 3; y <= 12; ++y) EXPECT_NEAR(d->Probability(y), 0.1, 1e-15);
  EXPECT_EQ(d->Probability(2), 0.0);
  EXPECT_EQ(d->Probability(13), 0.0);
}

TEST(ExactDistributionTest, TwoPointClosedForm) {
  absl::StatusOr<IntervalSet> set = IntervalSet::Create({{0, 0, 0.0}, {1, 1, 1.0}});
  ASSERT_TRUE(set.ok());
  absl::StatusOr<ExactDistribution> d = ExactDistributionOf(*set, 2.0, 1.0);
  ASSERT_TRUE(d.ok());
  EXPECT_NEAR(d->Probability(0), 0.2689414213699951, 1e-15);
  EXPECT_NEAR(d->Probability(1), 0.7310585786300049, 1e-15);
}

TEST(ExactDistributionTest, SingletonDomain) {
  absl::StatusOr<ExactDistribution> d = ExactDistributionOfUtility(
      7, 7, [](int64_t) { return -100.0; }, 0.5, 1.0);
  ASSERT_TRUE(d.ok());
  EXPECT_EQ(d->Probability(7), 1.0);
}

TEST(ExactDistributionTest, NormalizesRandomCases) {
  RngStream rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int64_t width = rng.UniformInt(1, 500);
    const double eps = 0.01 + 5.0 * rng.UniformUnit();
    std::vector<double> utilities(width);
    for (double& u : utilities) u = -50.0 * rng.UniformUnit();
    absl::StatusOr<ExactDistribution> d = ExactDistributionOfUtility(
        0, width - 1, [&](int64_t y) { return utilities[y]; }, eps, 1.0);
    ASSERT_TRUE(d.ok());
    EXPECT_NEAR(CompensatedSum(d->probabilities()), 1.0, 1e-12);
  }
}

TEST(ExactDistributionTest, RefusesHugeDomains) {
  EXPECT_FALSE(ExactDistributionOfUtility(
                   0, kMaxEnumerableWidth, [](int64_t) { return 0.0; }, 1.0,
                   1.0)
                   .ok());
}

TEST(CompensatedSumTest, RecoversCancelledTerms) {
  EXPECT_EQ(CompensatedSum({1e16, 1.0, -1e16}), 1.0);
}

TEST(LinearRankTest, AgreesWithDatasetRank) {
  const Dataset data = MakeDataset({0, 2, 2, 9, 13}, 20);
  for (int64_t y = -3; y <= 23; ++y) EXPECT_EQ(LinearRank(data, y), data.Rank(y));
}

TEST(ArgmaxUtilityTest, LowestIndexOnTies) {
  EXPECT_EQ(ArgmaxUtility(MakeDataset({1, 2, 3}, 5)), 1);
  EXPECT_EQ(ArgmaxUtility(MakeDataset({5}, 9)), 0);
  EXPECT_EQ(ArgmaxUtility(MakeDataset({4, 6}, 9)), 4);
}

TEST(BruteForceMinBTest, SmallestCoveringHalfWidth) {
  const Dataset data = MakeDataset(Range(1, 100), 200);
  EXPECT_EQ(BruteForceMinB(data, 50, 3.0, 1, 200), 4);
  EXPECT_EQ(BruteForceMinB(data, 50, 3.0, 3, 66), 6);
  // Any adjacent point clears a zero threshold at the first candidate.
  EXPECT_EQ(BruteForceMinB(data, 50, 0.0, 1, 200), 1);
  EXPECT_EQ(BruteForceMinB(data, 50, 0.0, 3, 66), 3);
  // Neither side of o holds more than 50 points.
  EXPECT_EQ(BruteForceMinB(data, 50, 50.0, 1, 200), std::nullopt);
}

TEST(ExactCoverageTest, IsAProbability) {
  RngStream rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int64_t> values;
    for (int i = 0; i < 7; ++i) values.push_back(rng.UniformInt(0, 40));
    const Dataset data = MakeDataset(values, 40);
    const PrivacyParams params =
        *ResolvePrivacyParams(SplitPolicy::Default(), 1.0, 0.1, 40);
    absl::StatusOr<double> coverage = ExactCoverage(data, params);
    ASSERT_TRUE(coverage.ok()) << coverage.status();
    EXPECT_GE(*coverage, 0.0);
    EXPECT_LE(*coverage, 1.0);
  }
}

TEST(ExactCoverageTest, DeterministicLimitCoversAlways) {
  const Dataset data = MakeDataset(Range(10, 29), 60);
  PrivacyParams params{.eps_total = 2000,
                       .eps1 = 1000,
                       .eps2 = 1000,
                       .beta_total = 0.1,
                       .beta1 = 0.05,
                       .beta2 = 0.05,
                       .step = 1};
  absl::StatusOr<double> coverage = ExactCoverage(data, params);
  ASSERT_TRUE(coverage.ok());
  EXPECT_NEAR(*coverage, 1.0, 1e-12);
}

TEST(ExactCoverageTest, RefusesLargeInstances) {
  const Dataset data = MakeDataset({1, 2, 3}, 5000);
  const PrivacyParams params =
      *ResolvePrivacyParams(SplitPolicy::Default(), 1.0, 0.1, 5000);
  EXPECT_FALSE(ExactCoverage(data, params).ok());
}

TEST(ExactMedianTailTest, BelowBetaOne) {
  const Dataset data = MakeDataset(Range(0, 99), 150);
  absl::StatusOr<double> tail = ExactMedianTailProbability(data, 2.0, 0.05);
  ASSERT_TRUE(tail.ok());
  EXPECT_GT(*tail, 0.0);
  EXPECT_LE(*tail, 0.05);
}

TEST(DistanceTest, RatioAndTotalVariation) {
  const ExactDistribution p(0, {0.5, 0.5});
  const ExactDistribution q(0, {0.25, 0.75});
  EXPECT_DOUBLE_EQ(MaxProbabilityRatio(p, q), 2.0);
  EXPECT_DOUBLE_EQ(TotalVariationDistance(p, q), 0.25);
  const ExactDistribution shifted(1, {1.0});
  EXPECT_TRUE(std::isinf(MaxProbabilityRatio(p, shifted)));
  EXPECT_DOUBLE_EQ(TotalVariationDistance(p, shifted), 0.5 * (0.5 + 0.5 + 0));
}

// Reduced-size runs of the validation suite, so regressions show up in the
// unit tests as well as in the acceptance binary.
TEST(ValidationSuiteTest, ReducedChecksPass) {
  validation::SensitivityOptions sensitivity;
  sensitivity.pairs = 100;
  EXPECT_TRUE(validation::CheckSensitivity(sensitivity).passed);

  validation::SamplerOptions sampler;
  sampler.sets = 3;
  sampler.draws = 200000;
  sampler.max_total_width = 2000;
  sampler.max_intervals = 20;
  const validation::CheckResult sampled =
      validation::CheckSamplerExactness(sampler);
  EXPECT_TRUE(sampled.passed) << sampled.detail;

  validation::PrivacyOptions privacy;
  privacy.pairs = 20;
  EXPECT_TRUE(validation::CheckPrivacyRatios(privacy).passed);

  validation::CoverageOptions coverage;
  coverage.instances = 5;
  const validation::CheckResult covered =
      validation::CheckExactCoverage(coverage);
  EXPECT_TRUE(covered.passed) << covered.detail;

  validation::TailOptions tail;
  tail.instances = 10;
  EXPECT_TRUE(validation::CheckMedianTail(tail).passed);

  validation::FixedPointCheckOptions fixed_point;
  fixed_point.eps_grid = {1.0};
  EXPECT_TRUE(validation::CheckFixedPoint(fixed_point).passed);
}

}  // namespace
}  // namespace ri_median::oracle
