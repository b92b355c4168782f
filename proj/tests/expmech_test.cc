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

#include <cmath>
#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "gtest/gtest.h"
#include "ri_median/oracle.h"
#include "ri_median/rng.h"

namespace ri_median {
namespace {

IntervalSet MakeIntervals(std::vector<UtilityInterval> intervals) {
  absl::StatusOr<IntervalSet> set = IntervalSet::Create(std::move(intervals));
  EXPECT_TRUE(set.ok()) << set.status();
  return *std::move(set);
}

TEST(IntervalSetTest, RejectsMalformedPartitions) {
  EXPECT_FALSE(IntervalSet::Create({}).ok());
  EXPECT_FALSE(IntervalSet::Create({{3, 2, 0.0}}).ok());
  // Gap between 2 and 4.
  EXPECT_FALSE(IntervalSet::Create({{0, 2, 0.0}, {4, 5, 0.0}}).ok());
  // Overlap.
  EXPECT_FALSE(IntervalSet::Create({{0, 2, 0.0}, {2, 5, 0.0}}).ok());
  EXPECT_FALSE(IntervalSet::Create({{0, 2, NAN}}).ok());
  EXPECT_FALSE(IntervalSet::Create({{0, 2, -INFINITY}}).ok());
}

TEST(IntervalSetTest, LocatesElements) {
  const IntervalSet set = MakeIntervals({{0, 1, 0.0}, {2, 4, 1.0}, {5, 9, 2.0}});
  EXPECT_EQ(set.total_width(), 10);
  EXPECT_EQ(set.lo(), 0);
  EXPECT_EQ(set.hi(), 9);
  EXPECT_EQ(set.IntervalIndexOf(0), 0u);
  EXPECT_EQ(set.IntervalIndexOf(2), 1u);
  EXPECT_EQ(set.IntervalIndexOf(4), 1u);
  EXPECT_EQ(set.IntervalIndexOf(9), 2u);
}

TEST(ShiftedLogWeightsTest, LargestIsZeroAndNoOverflow) {
  const IntervalSet set =
      MakeIntervals({{0, 0, -1e6}, {1, 3, 0.0}, {4, 4, -2.0}});
  absl::StatusOr<std::vector<double>> weights =
      ShiftedLogWeights(set, 1e3, 1.0);
  ASSERT_TRUE(weights.ok());
  ASSERT_EQ(weights->size(), 3u);
  for (double w : *weights) EXPECT_FALSE(std::isnan(w));
  EXPECT_EQ((*weights)[1], 0.0);
  // log(1) - 1e3 * 2 / 2 - log(3)
  EXPECT_NEAR((*weights)[2], -1000.0 - std::log(3.0), 1e-9);
  EXPECT_LT((*weights)[0], -1e8);
}

TEST(SamplerTest, RejectsBadParameters) {
  const IntervalSet set = MakeIntervals({{0, 9, 0.0}});
  EXPECT_FALSE(ExponentialMechanismSampler::Create(set, 0.0, 1.0).ok());
  EXPECT_FALSE(ExponentialMechanismSampler::Create(set, -1.0, 1.0).ok());
  EXPECT_FALSE(ExponentialMechanismSampler::Create(set, 1.0, 0.0).ok());
}

TEST(SamplerTest, SingleFlatIntervalIsUniform) {
  const IntervalSet set = MakeIntervals({{0, 9, 0.0}});
  absl::StatusOr<ExponentialMechanismSampler> sampler =
      ExponentialMechanismSampler::Create(set, 1.0, 1.0);
  ASSERT_TRUE(sampler.ok());
  RngStream rng(1);
  std::vector<int> counts(10, 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++counts[sampler->Sample(rng)];
  // 0.1 +/- 5 sigma with sigma = sqrt(0.09 / 1e5).
  for (int c : counts) EXPECT_NEAR(c / static_cast<double>(draws), 0.1, 0.005);
}

TEST(SamplerTest, TwoUnitIntervalsClosedForm) {
  const IntervalSet set = MakeIntervals({{0, 0, 0.0}, {1, 1, 1.0}});
  absl::StatusOr<ExponentialMechanismSampler> sampler =
      ExponentialMechanismSampler::Create(set, 2.0, 1.0);
  ASSERT_TRUE(sampler.ok());
  // e / (1 + e)
  EXPECT_NEAR(sampler->IntervalProbability(1), 0.7310585786300049, 1e-15);
  RngStream rng(2);
  int second = 0;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) second += sampler->Sample(rng) == 1 ? 1 : 0;
  EXPECT_NEAR(second / static_cast<double>(draws), 0.7310585786300049, 0.005);
}

TEST(SamplerTest, VanishingEpsilonIsWidthProportional) {
  const IntervalSet set = MakeIntervals({{0, 0, 0.0}, {1, 3, 5.0}});
  absl::StatusOr<ExponentialMechanismSampler> sampler =
      ExponentialMechanismSampler::Create(set, 1e-12, 1.0);
  ASSERT_TRUE(sampler.ok());
  EXPECT_NEAR(sampler->IntervalProbability(1), 0.75, 1e-9);
}

TEST(SamplerTest, HugeUtilityGapsStayFinite) {
  const IntervalSet set = MakeIntervals(
      {{0, 999999, -1e9}, {1000000, 1000000, 0.0}, {1000001, 2000000, -1e9}});
  absl::StatusOr<ExponentialMechanismSampler> sampler =
      ExponentialMechanismSampler::Create(set, 10.0, 1.0);
  ASSERT_TRUE(sampler.ok());
  RngStream rng(3);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(sampler->Sample(rng), 1000000);
}

TEST(SamplerTest, IntervalProbabilitiesMatchOracle) {
  RngStream rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<UtilityInterval> pieces;
    int64_t lo = rng.UniformInt(-50, 50);
    const int64_t k = rng.UniformInt(1, 12);
    for (int64_t i = 0; i < k; ++i) {
      const int64_t width = rng.UniformInt(1, 30);
      pieces.push_back({lo, lo + width - 1, -10.0 * rng.UniformUnit()});
      lo += width;
    }
    const IntervalSet set = MakeIntervals(pieces);
    const double eps = 0.1 + 3.0 * rng.UniformUnit();
    absl::StatusOr<ExponentialMechanismSampler> sampler =
        ExponentialMechanismSampler::Create(set, eps, 1.0);
    absl::StatusOr<oracle::ExactDistribution> exact =
        oracle::ExactDistributionOf(set, eps, 1.0);
    ASSERT_TRUE(sampler.ok());
    ASSERT_TRUE(exact.ok());
    double total = 0;
    for (size_t i = 0; i < set.size(); ++i) {
      double mass = 0;
      for (int64_t y = set[i].lo; y <= set[i].hi; ++y) {
        mass += exact->Probability(y);
      }
      EXPECT_NEAR(sampler->IntervalProbability(i), mass, 1e-12);
      total += sampler->IntervalProbability(i);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(SamplerTest, SeededDrawsAreReproducible) {
  const IntervalSet set = MakeIntervals({{0, 4, 0.0}, {5, 99, -1.0}});
  RngStream a(77);
  RngStream b(77);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(*SampleExponentialMechanism(set, 1.0, 1.0, a),
              *SampleExponentialMechanism(set, 1.0, 1.0, b));
  }
}

TEST(SamplerTest, DrawsStayInsideSupport) {
  const IntervalSet set = MakeIntervals({{-5, -1, 0.0}, {0, 20, -3.0}});
  absl::StatusOr<ExponentialMechanismSampler> sampler =
      ExponentialMechanismSampler::Create(set, 0.5, 1.0);
  ASSERT_TRUE(sampler.ok());
  RngStream rng(8);
  for (int i = 0; i < 10000; ++i) {
    const int64_t y = sampler->Sample(rng);
    EXPECT_GE(y, -5);
    EXPECT_LE(y, 20);
  }
}

}  // namespace
}  // namespace ri_median
