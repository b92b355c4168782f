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

// Domain model shared by both mechanism stages: the integer output domain,
// the sorted dataset with its rank function, and the duplicate-removing
// remap into an expanded domain.

#ifndef RI_MEDIAN_CORE_H_
#define RI_MEDIAN_CORE_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace ri_median {

// The integer domain {0, 1, ..., size} plus the public offset relating it to
// the user's value range. A user value x maps to x - original_lower.
class DomainSpec {
 public:
  // The declared range [original_lower, original_upper] must fit inside
  // {0, ..., size} after shifting.
  static absl::StatusOr<DomainSpec> Create(int64_t size,
                                           int64_t original_lower,
                                           int64_t original_upper);

  // {0, ..., size} with no offset.
  static absl::StatusOr<DomainSpec> OfSize(int64_t size);

  int64_t size() const { return size_; }
  int64_t original_lower() const { return original_lower_; }
  int64_t original_upper() const { return original_upper_; }

  bool Contains(int64_t value) const { return value >= 0 && value <= size_; }

  // Fails with InvalidArgument when the value lies outside the declared
  // range.
  absl::StatusOr<int64_t> ToDomain(int64_t original_value) const;
  int64_t ToOriginal(int64_t domain_value) const {
    return domain_value + original_lower_;
  }
  double ToOriginal(double domain_value) const {
    return domain_value + static_cast<double>(original_lower_);
  }

 private:
  DomainSpec(int64_t size, int64_t original_lower, int64_t original_upper)
      : size_(size),
        original_lower_(original_lower),
        original_upper_(original_upper) {}

  int64_t size_;
  int64_t original_lower_;
  int64_t original_upper_;
};

// A non-empty, sorted multiset of records inside {0, ..., domain_size}.
class Dataset {
 public:
  static absl::StatusOr<Dataset> Create(std::vector<int64_t> values,
                                        int64_t domain_size);

  int64_t n() const { return static_cast<int64_t>(values_.size()); }
  int64_t domain_size() const { return domain_size_; }
  std::span<const int64_t> values() const { return values_; }

  // Number of records <= y. Defined for every y, so arguments outside the
  // domain clamp to 0 or n.
  int64_t Rank(int64_t y) const;

  // The rank the median targets; a half-integer for odd n.
  double HalfN() const { return static_cast<double>(values_.size()) / 2.0; }

 private:
  Dataset(std::vector<int64_t> values, int64_t domain_size)
      : values_(std::move(values)), domain_size_(domain_size) {}

  std::vector<int64_t> values_;
  int64_t domain_size_;
};

// Middle element for odd n, mean of the two middle elements for even n.
double TrueMedian(const Dataset& data);

// Relates an expanded, duplicate-free domain back to the base domain. The
// k-th copy (k = 1, 2, ...) of value x lands on n * x + k - 1.
struct DedupMap {
  int64_t n;
  DomainSpec base;
  DomainSpec expanded;
};

struct DedupResult {
  Dataset data;
  DedupMap map;
};

// Spreads repeated values over consecutive slots of a domain of size
// n * (N + 1) - 1, so that every image is distinct and the largest base
// value keeps room for all of its copies. Fails with OutOfRange if the
// expanded size does not fit in int64_t.
absl::StatusOr<DedupResult> DedupRemap(const Dataset& data,
                                       const DomainSpec& domain);

// floor(y_expanded / n), the base value an expanded slot came from.
int64_t MapBack(int64_t y_expanded, const DedupMap& map);

// Budget and failure-probability allocation for one two-stage release.
struct PrivacyParams {
  double eps_total = 0;
  double eps1 = 0;  // median stage
  double eps2 = 0;  // interval stage
  double beta_total = 0;
  double beta1 = 0;
  double beta2 = 0;
  int64_t step = 1;  // spacing of candidate half-widths
  double delta_u = 1;
  double delta_q = 1;
  double lipschitz = 1;

  // eps1 + eps2 == eps_total within relative 1e-9, all budgets positive,
  // beta1 + beta2 <= beta_total < 1, step >= 1.
  absl::Status Validate() const;
};

}  // namespace ri_median

#endif  // RI_MEDIAN_CORE_H_
