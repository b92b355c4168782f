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

// Small-instance validation suite. Each check draws random instances from a
// seeded stream, compares the production code against the exact oracle and
// reports a verdict with a one-line detail string.

#ifndef RI_MEDIAN_VALIDATION_H_
#define RI_MEDIAN_VALIDATION_H_

#include <cstdint>
#include <string>
#include <vector>

namespace ri_median::validation {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// |f_b(D) - f_b(D')| <= 1 and |q(D, b) - q(D', b)| <= 1 for every candidate
// b, on random replace-one neighbors, both on raw data (every b in 1..N)
// and on the remapped data the interval stage actually sees.
struct SensitivityOptions {
  int pairs = 1000;
  int max_n = 200;
  int64_t max_domain = 500;
  uint64_t seed = 1;
};
CheckResult CheckSensitivity(const SensitivityOptions& options = {});

// Seeded draws from ExponentialMechanismSampler against the exact
// distribution. The verdict uses the TV distance over the interval
// partition, where the density is piecewise constant. Element-level TV is
// also reported and compared with its multinomial noise floor.
struct SamplerOptions {
  int sets = 50;
  int64_t draws = 1'000'000;
  int64_t max_total_width = 10'000;
  int max_intervals = 100;
  double tolerance = 0.01;
  uint64_t seed = 2;
};
CheckResult CheckSamplerExactness(const SamplerOptions& options = {});

// Max output-probability ratio of both stages on remapped neighbors.
struct PrivacyOptions {
  int pairs = 100;
  int max_n = 9;
  int64_t max_domain = 50;
  double slack = 1e-9;
  uint64_t seed = 3;
};
CheckResult CheckPrivacyRatios(const PrivacyOptions& options = {});

// Exact two-stage coverage >= 1 - beta1 - beta2. Instances are drawn so
// that n / 2 >= 2 gamma1 + gamma2 + s l; with fewer records no candidate
// half-width can reach the target and the guarantee does not apply.
struct CoverageOptions {
  int instances = 30;
  int64_t max_n = 400;
  int64_t max_expanded_domain = 1000;
  uint64_t seed = 4;
};
CheckResult CheckExactCoverage(const CoverageOptions& options = {});

// Exact P[u(D, o) < u(D, y*) - gamma1] <= beta1, on instances where
// gamma1 < n / 2 so that the event is possible.
struct TailOptions {
  int instances = 30;
  int64_t max_n = 400;
  int64_t max_expanded_domain = 1000;
  uint64_t seed = 5;
};
CheckResult CheckMedianTail(const TailOptions& options = {});

// Fixed point convergence, stationarity and near-optimality against a grid
// search over (eps1, step).
struct FixedPointCheckOptions {
  std::vector<double> eps_grid = {0.25, 0.5, 1.0, 2.0, 4.0};
  int64_t domain_size = 100'000'000;
  double beta1 = 0.005;
  double beta2 = 0.005;
  int max_iterations = 50;
  double equation_tolerance = 1e-4;
  double objective_tolerance = 0.01;
};
CheckResult CheckFixedPoint(const FixedPointCheckOptions& options = {});

// Runs every check above with default options.
std::vector<CheckResult> RunOracleSuite();

}  // namespace ri_median::validation

#endif  // RI_MEDIAN_VALIDATION_H_
