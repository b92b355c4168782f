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

#include <cmath>
#include <cstdint>
#include <limits>

#include "absl/status/status.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace ri_median {
namespace {

using ::testing::HasSubstr;

constexpr int64_t kN = 100'000'000;

double Objective(double eps1, double eps2, int64_t step) {
  return 2.0 / eps1 * std::log(kN / 0.005) +
         2.0 / eps2 * std::log(kN / (static_cast<double>(step) * 0.005)) +
         static_cast<double>(step);
}

TEST(SplitPolicyTest, ParsesAllForms) {
  EXPECT_EQ(*SplitPolicy::Parse("default"), SplitPolicy::Default());
  EXPECT_EQ(*SplitPolicy::Parse("optimal"), SplitPolicy::Optimal());
  EXPECT_EQ(*SplitPolicy::Parse("median-focused"),
            SplitPolicy::MedianFocused());
  absl::StatusOr<SplitPolicy> ratio = SplitPolicy::Parse("ratio=2.5");
  ASSERT_TRUE(ratio.ok());
  EXPECT_EQ(ratio->kind(), SplitPolicy::Kind::kRatio);
  EXPECT_DOUBLE_EQ(ratio->ratio(), 2.5);
  EXPECT_DOUBLE_EQ(SplitPolicy::MedianFocused().ratio(), 9.0);
}

TEST(SplitPolicyTest, RoundTripsThroughToString) {
  for (const SplitPolicy& policy :
       {SplitPolicy::Default(), SplitPolicy::Optimal(),
        SplitPolicy::MedianFocused(), *SplitPolicy::Ratio(0.25)}) {
    EXPECT_EQ(*SplitPolicy::Parse(policy.ToString()), policy);
  }
}

TEST(SplitPolicyTest, RejectsMalformed) {
  for (const char* text : {"", "best", "ratio=", "ratio=-1", "ratio=0",
                           "ratio=abc", "ratio=inf"}) {
    EXPECT_EQ(SplitPolicy::Parse(text).status().code(),
              absl::StatusCode::kInvalidArgument)
        << text;
  }
}

TEST(SplitByRatioTest, SumsToTotal) {
  EXPECT_DOUBLE_EQ(SplitByRatio(1.0, 1.0).eps1, 0.5);
  EXPECT_DOUBLE_EQ(SplitByRatio(1.0, 1.0).eps2, 0.5);
  EXPECT_NEAR(SplitByRatio(1.0, 9.0).eps1, 0.9, 1e-15);
  EXPECT_NEAR(SplitByRatio(1.0, 9.0).eps2, 0.1, 1e-15);
  const EpsilonSplit split = SplitByRatio(0.37, 3.3);
  EXPECT_DOUBLE_EQ(split.eps1 + split.eps2, 0.37);
}

TEST(OptimalSplitTest, EqualLogsGiveEvenSplit) {
  absl::StatusOr<EpsilonSplit> split = OptimalSplit(1.0, 0.005, 0.005, 1, kN);
  ASSERT_TRUE(split.ok());
  EXPECT_EQ(split->eps1, 0.5);
  EXPECT_EQ(split->eps2, 0.5);
}

TEST(OptimalSplitTest, ReferenceValues) {
  absl::StatusOr<EpsilonSplit> split = OptimalSplit(1.0, 0.005, 0.005, 8, kN);
  ASSERT_TRUE(split.ok());
  EXPECT_NEAR(split->eps1, 0.5114671604256406, 1e-12);
  EXPECT_NEAR(split->eps2, 0.4885328395743594, 1e-12);
  EXPECT_NEAR(split->eps1 / split->eps2, 1.0469453002816824, 1e-12);
}

TEST(OptimalSplitTest, MinimizesObjectiveOverGrid) {
  for (int64_t step : {1, 4, 8, 17}) {
    for (double eps : {0.25, 1.0, 4.0}) {
      const EpsilonSplit split = *OptimalSplit(eps, 0.005, 0.005, step, kN);
      const double at_split = Objective(split.eps1, split.eps2, step);
      double grid_best = std::numeric_limits<double>::infinity();
      for (int i = 1; i < 100000; ++i) {
        const double e1 = eps * i / 100000.0;
        grid_best = std::min(grid_best, Objective(e1, eps - e1, step));
      }
      EXPECT_LE(at_split, grid_best * (1 + 1e-9)) << eps << " " << step;
    }
  }
}

TEST(OptimalSplitTest, RejectsDegenerateLogs) {
  EXPECT_EQ(OptimalSplit(1.0, 0.5, 0.5, 10, 4).status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_FALSE(OptimalSplit(0.0, 0.005, 0.005, 1, kN).ok());
}

TEST(OptimalStepTest, Examples) {
  EXPECT_EQ(OptimalStep(0.5), 4);
  EXPECT_EQ(OptimalStep(2.0), 1);
  EXPECT_EQ(OptimalStep(100.0), 1);
  EXPECT_EQ(OptimalStep(0.125), 16);
}

// Rounding 2/eps2 picks the integer minimizer of gamma2 + s except in narrow
// windows where the neighbor wins by a tiny margin.
TEST(OptimalStepTest, NearIntegerScanMinimum) {
  for (double eps2 = 0.05; eps2 <= 3.0; eps2 += 0.01) {
    const int64_t s = OptimalStep(eps2);
    auto cost = [eps2](int64_t step) {
      return 2.0 / eps2 * std::log(kN / (static_cast<double>(step) * 0.005)) +
             static_cast<double>(step);
    };
    const int64_t s_star = std::max<int64_t>(1, std::llround(2.0 / eps2));
    int64_t best = 1;
    for (int64_t k = 1; k <= 10 * s_star; ++k) {
      if (cost(k) < cost(best)) best = k;
    }
    EXPECT_LE(std::abs(s - best), 1) << eps2;
    EXPECT_LE(cost(s) - cost(best), 0.05) << eps2;
  }
}

TEST(OptimalStepTest, MatchesScanMinimumAtReferencePoints) {
  for (double eps2 : {0.125, 0.25, 0.5, 1.0, 2.0}) {
    auto cost = [eps2](int64_t step) {
      return 2.0 / eps2 * std::log(kN / (static_cast<double>(step) * 0.005)) +
             static_cast<double>(step);
    };
    int64_t best = 1;
    for (int64_t k = 1; k <= 200; ++k) {
      if (cost(k) < cost(best)) best = k;
    }
    EXPECT_EQ(OptimalStep(eps2), best) << eps2;
  }
}

TEST(WidthObjectiveTest, IsGammaSumPlusStep) {
  EXPECT_NEAR(*WidthObjective(1.0, 1.0, 4, 0.005, 0.005, kN),
              47.43799622100080 + 44.66540749876102 + 4.0, 1e-10);
}

TEST(SolveFixedPointTest, ConvergesOnGrid) {
  struct Expected {
    double eps;
    double eps1;
    int64_t step;
  };
  // Independent high-precision iteration of the two update rules.
  const Expected cases[] = {{0.25, 0.12897389672924111, 17},
                            {0.5, 0.25573358021282032, 8},
                            {1.0, 0.50752745560545828, 4},
                            {2.0, 1.0074145633270298, 2},
                            {4.0, 2.0, 1}};
  for (const Expected& c : cases) {
    absl::StatusOr<FixedPointResult> result =
        SolveFixedPoint(c.eps, 0.005, 0.005, kN);
    ASSERT_TRUE(result.ok()) << result.status();
    EXPECT_LE(result->iterations, 50);
    EXPECT_EQ(result->step, c.step) << c.eps;
    EXPECT_NEAR(result->split.eps1, c.eps1, 1e-9 * c.eps) << c.eps;
    EXPECT_DOUBLE_EQ(result->split.eps1 + result->split.eps2, c.eps);
    EXPECT_GE(result->trajectory.size(), 2u);
  }
}

TEST(SolveFixedPointTest, UnitStepGivesEvenSplit) {
  absl::StatusOr<FixedPointResult> result =
      SolveFixedPoint(4.0, 0.005, 0.005, kN);
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result->step, 1);
  EXPECT_EQ(result->split.eps1, 2.0);
  EXPECT_EQ(result->split.eps2, 2.0);
}

TEST(SolveFixedPointTest, BothOrdersAgree) {
  for (double eps : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    FixedPointOptions split_first;
    split_first.order = FixedPointOrder::kSplitFirst;
    const FixedPointResult a = *SolveFixedPoint(eps, 0.005, 0.005, kN);
    const FixedPointResult b =
        *SolveFixedPoint(eps, 0.005, 0.005, kN, split_first);
    EXPECT_EQ(a.step, b.step);
    EXPECT_NEAR(a.split.eps1, b.split.eps1, 1e-9);
  }
}

TEST(SolveFixedPointTest, ReportsTrajectoryWhenIterationCapHit) {
  FixedPointOptions options;
  options.max_iterations = 1;
  absl::StatusOr<FixedPointResult> result =
      SolveFixedPoint(0.25, 0.005, 0.005, kN, options);
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(result.status().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_THAT(std::string(result.status().message()), HasSubstr("s="));
}

TEST(ResolvePrivacyParamsTest, Policies) {
  const PrivacyParams by_default =
      *ResolvePrivacyParams(SplitPolicy::Default(), 1.0, 0.01, kN);
  EXPECT_DOUBLE_EQ(by_default.eps1, 0.5);
  EXPECT_DOUBLE_EQ(by_default.eps2, 0.5);
  EXPECT_EQ(by_default.step, 4);
  EXPECT_DOUBLE_EQ(by_default.beta1, 0.005);
  EXPECT_DOUBLE_EQ(by_default.beta2, 0.005);
  EXPECT_TRUE(by_default.Validate().ok());

  const PrivacyParams focused =
      *ResolvePrivacyParams(SplitPolicy::MedianFocused(), 0.25, 0.01, kN);
  EXPECT_NEAR(focused.eps1, 0.225, 1e-15);
  EXPECT_NEAR(focused.eps2, 0.025, 1e-15);
  EXPECT_EQ(focused.step, 80);

  const PrivacyParams optimal =
      *ResolvePrivacyParams(SplitPolicy::Optimal(), 1.0, 0.01, kN);
  EXPECT_NEAR(optimal.eps1, 0.50752745560545828, 1e-9);
  EXPECT_EQ(optimal.step, 4);

  const PrivacyParams skewed =
      *ResolvePrivacyParams(SplitPolicy::Default(), 1.0, 0.01, kN, 0.8);
  EXPECT_DOUBLE_EQ(skewed.beta1, 0.008);
  EXPECT_NEAR(skewed.beta2, 0.002, 1e-15);
}

TEST(ResolvePrivacyParamsTest, RejectsBadInputs) {
  EXPECT_FALSE(ResolvePrivacyParams(SplitPolicy::Default(), -1, 0.01, kN).ok());
  EXPECT_FALSE(ResolvePrivacyParams(SplitPolicy::Default(), 1, 1.5, kN).ok());
  EXPECT_FALSE(
      ResolvePrivacyParams(SplitPolicy::Default(), 1, 0.01, kN, 0.0).ok());
}

}  // namespace
}  // namespace ri_median
