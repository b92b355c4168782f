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

#include "ri_median/core.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"

namespace ri_median {

absl::StatusOr<DomainSpec> DomainSpec::Create(int64_t size,
                                              int64_t original_lower,
                                              int64_t original_upper) {
  if (size < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("Domain size must be at least 1, got ", size));
  }
  if (original_lower >= original_upper) {
    return absl::InvalidArgumentError(
        absl::StrCat("Declared range is empty: [", original_lower, ", ",
                     original_upper, "]"));
  }
  int64_t span;
  if (__builtin_sub_overflow(original_upper, original_lower, &span) ||
      span > size) {
    return absl::InvalidArgumentError(
        absl::StrCat("Declared range [", original_lower, ", ", original_upper,
                     "] does not fit in a domain of size ", size));
  }
  return DomainSpec(size, original_lower, original_upper);
}

absl::StatusOr<DomainSpec> DomainSpec::OfSize(int64_t size) {
  return Create(size, 0, size);
}

absl::StatusOr<int64_t> DomainSpec::ToDomain(int64_t original_value) const {
  if (original_value < original_lower_ || original_value > original_upper_) {
    return absl::InvalidArgumentError(
        absl::StrCat("Value ", original_value, " is outside the declared range [",
                     original_lower_, ", ", original_upper_, "]"));
  }
  return original_value - original_lower_;
}

absl::StatusOr<Dataset> Dataset::Create(std::vector<int64_t> values,
                                        int64_t domain_size) {
  if (values.empty()) {
    return absl::InvalidArgumentError("Dataset must contain at least 1 record");
  }
  if (domain_size < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("Domain size must be at least 1, got ", domain_size));
  }
  std::sort(values.begin(), values.end());
  if (values.front() < 0 || values.back() > domain_size) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Dataset values must lie in [0, ", domain_size, "], found range [",
        values.front(), ", ", values.back(), "]"));
  }
  return Dataset(std::move(values), domain_size);
}

int64_t Dataset::Rank(int64_t y) const {
  return std::upper_bound(values_.begin(), values_.end(), y) - values_.begin();
}

double TrueMedian(const Dataset& data) {
  const auto values = data.values();
  const size_t n = values.size();
  if (n % 2 == 1) return static_cast<double>(values[n / 2]);
  // Halve before adding so that values near the int64 limit stay exact.
  return static_cast<double>(values[n / 2 - 1]) / 2.0 +
         static_cast<double>(values[n / 2]) / 2.0;
}

absl::StatusOr<DedupResult> DedupRemap(const Dataset& data,
                                       const DomainSpec& domain) {
  const int64_t n = data.n();
  const auto values = data.values();
  if (!domain.Contains(values.front()) || !domain.Contains(values.back())) {
    return absl::InvalidArgumentError(
        absl::StrCat("Dataset values fall outside the domain [0, ",
                     domain.size(), "]"));
  }
  // Largest image is n * N + (n - 1), reached when every record equals N.
  int64_t scaled;
  int64_t expanded_size;
  if (__builtin_mul_overflow(n, domain.size(), &scaled) ||
      __builtin_add_overflow(scaled, n - 1, &expanded_size)) {
    return absl::OutOfRangeError(
        absl::StrCat("Expanded domain size ", n, " * ", domain.size(),
                     " overflows a 64-bit integer"));
  }

  std::vector<int64_t> remapped;
  remapped.reserve(values.size());
  int64_t repetition = 0;
  for (size_t i = 0; i < values.size(); ++i) {
    repetition = (i > 0 && values[i] == values[i - 1]) ? repetition + 1 : 0;
    remapped.push_back(n * values[i] + repetition);
  }

  absl::StatusOr<DomainSpec> expanded = DomainSpec::OfSize(expanded_size);
  if (!expanded.ok()) return expanded.status();
  absl::StatusOr<Dataset> expanded_data =
      Dataset::Create(std::move(remapped), expanded_size);
  if (!expanded_data.ok()) return expanded_data.status();
  return DedupResult{*std::move(expanded_data),
                     DedupMap{n, domain, *std::move(expanded)}};
}

int64_t MapBack(int64_t y_expanded, const DedupMap& map) {
  return y_expanded / map.n;
}

absl::Status PrivacyParams::Validate() const {
  for (double eps : {eps_total, eps1, eps2}) {
    if (!(eps > 0) || !std::isfinite(eps)) {
      return absl::InvalidArgumentError(
          absl::StrCat("Privacy budgets must be finite and positive, got ", eps));
    }
  }
  if (std::abs(eps1 + eps2 - eps_total) > 1e-9 * eps_total) {
    return absl::InvalidArgumentError(absl::StrCat(
        "eps1 + eps2 = ", eps1 + eps2, " does not match eps = ", eps_total));
  }
  if (!(beta_total > 0 && beta_total < 1) || !(beta1 > 0) || !(beta2 > 0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Failure probabilities must be positive with beta < 1, got beta = ",
        beta_total, ", beta1 = ", beta1, ", beta2 = ", beta2));
  }
  if (beta1 + beta2 > beta_total * (1 + 1e-12)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta1 + beta2 = ", beta1 + beta2, " exceeds beta = ",
                     beta_total));
  }
  if (step < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("Step must be a positive integer, got ", step));
  }
  if (!(delta_u > 0) || !(delta_q > 0) || !(lipschitz > 0)) {
    return absl::InvalidArgumentError(
        "Sensitivities and the Lipschitz bound must be positive");
  }
  return absl::OkStatus();
}

}  // namespace ri_median
