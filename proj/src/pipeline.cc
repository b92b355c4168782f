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

#include "ri_median/pipeline.h"

#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ri_median/status_macros.h"

namespace ri_median {

absl::StatusOr<GammaDomain> ParseGammaDomain(absl::string_view text) {
  if (text == "sampled") return GammaDomain::kSampled;
  if (text == "base") return GammaDomain::kBase;
  return absl::InvalidArgumentError(absl::StrCat(
      "Unknown gamma domain '", text, "'; expected sampled or base"));
}

std::string GammaDomainName(GammaDomain domain) {
  return domain == GammaDomain::kSampled ? "sampled" : "base";
}

absl::StatusOr<PreparedData> PrepareData(const std::vector<int64_t>& values,
                                         const DomainSpec& domain) {
  std::vector<int64_t> shifted;
  shifted.reserve(values.size());
  for (int64_t v : values) {
    ASSIGN_OR_RETURN(const int64_t s, domain.ToDomain(v));
    shifted.push_back(s);
  }
  ASSIGN_OR_RETURN(Dataset base, Dataset::Create(std::move(shifted),
                                                 domain.size()));
  ASSIGN_OR_RETURN(DedupResult dedup, DedupRemap(base, domain));
  const double true_median = domain.ToOriginal(TrueMedian(base));
  return PreparedData{std::move(base), domain, std::move(dedup), true_median};
}

int64_t GammaDomainSize(const PreparedData& data, GammaDomain domain) {
  return domain == GammaDomain::kSampled ? data.dedup.data.domain_size()
                                         : data.domain.size();
}

absl::StatusOr<Release> ReleaseMedianWithInterval(
    const PreparedData& data, double eps, double beta,
    const SplitPolicy& policy, RngStream& rng, const ReleaseOptions& options) {
  ASSIGN_OR_RETURN(
      const PrivacyParams params,
      ResolvePrivacyParams(policy, eps, beta,
                           GammaDomainSize(data, options.gamma_domain),
                           options.beta1_fraction));
  return ReleaseWithParams(data, params, rng, options.gamma_domain);
}

absl::StatusOr<Release> ReleaseWithParams(const PreparedData& data,
                                          const PrivacyParams& params,
                                          RngStream& rng,
                                          GammaDomain gamma_domain) {
  RETURN_IF_ERROR(params.Validate());
  const Dataset& expanded = data.dedup.data;
  const int64_t gamma_size = GammaDomainSize(data, gamma_domain);
  ASSIGN_OR_RETURN(
      const MedianResult median,
      DpMedian(expanded, params.eps1, params.beta1, rng, gamma_size));
  ASSIGN_OR_RETURN(
      const RIResult interval,
      DpRi(expanded, data.dedup.map, median, params, rng, gamma_size));
  Release release{params, median, interval, 0, 0, 0};
  release.lower = data.domain.ToOriginal(interval.lower);
  release.median_value = data.domain.ToOriginal(interval.center);
  release.upper = data.domain.ToOriginal(interval.upper);
  return release;
}

}  // namespace ri_median
