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

// End-to-end release: dedup remap, parameter resolution, median stage,
// interval stage, and mapping back to user units.

#ifndef RI_MEDIAN_PIPELINE_H_
#define RI_MEDIAN_PIPELINE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "ri_median/core.h"
#include "ri_median/hyperparams.h"
#include "ri_median/median.h"
#include "ri_median/ri.h"
#include "ri_median/rng.h"

namespace ri_median {

// Which domain size enters the log terms of gamma1, gamma2 and the
// hyperparameter rules.
enum class GammaDomain {
  // The domain actually sampled (n * (N + 1) - 1 after the remap).
  kSampled,
  // The declared base domain N.
  kBase,
};

absl::StatusOr<GammaDomain> ParseGammaDomain(absl::string_view text);
std::string GammaDomainName(GammaDomain domain);

struct ReleaseOptions {
  double beta1_fraction = 0.5;
  GammaDomain gamma_domain = GammaDomain::kSampled;
};

// A dataset in base-domain coordinates plus its expanded, duplicate-free
// image. Immutable; shared read-only across trials.
struct PreparedData {
  Dataset base;
  DomainSpec domain;
  DedupResult dedup;
  // In the user's units.
  double true_median;
};

// Shifts user values into {0, ..., domain.size()} and remaps duplicates.
absl::StatusOr<PreparedData> PrepareData(const std::vector<int64_t>& values,
                                         const DomainSpec& domain);

struct Release {
  PrivacyParams params;
  MedianResult median;
  RIResult interval;
  // Released triple in the user's units.
  int64_t lower;
  int64_t median_value;
  int64_t upper;
};

int64_t GammaDomainSize(const PreparedData& data, GammaDomain domain);

// Resolves parameters from the policy, then runs both stages.
absl::StatusOr<Release> ReleaseMedianWithInterval(
    const PreparedData& data, double eps, double beta,
    const SplitPolicy& policy, RngStream& rng,
    const ReleaseOptions& options = {});

// Runs both stages with fully specified parameters.
absl::StatusOr<Release> ReleaseWithParams(const PreparedData& data,
                                          const PrivacyParams& params,
                                          RngStream& rng,
                                          GammaDomain gamma_domain);

}  // namespace ri_median

#endif  // RI_MEDIAN_PIPELINE_H_
