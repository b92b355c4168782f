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

// Experiment harness: dataset ingestion, seeded trial sweeps over
// (eps, split policy) cells, per-cell summaries and file emission.
//
// Output files written by Emit():
//
//   trials.csv    one row per trial, columns kTrialsCsvHeader
//   trials.json   the same records as a JSON array
//   summary.csv   one row per (dataset, technique, policy, eps) cell
//   summary.json  the same summaries as a JSON array
//   fig_<dataset>.csv
//                 plot data: one row per eps, and for each technique/policy
//                 series the mean and std of median error and RI width

#ifndef RI_MEDIAN_BENCH_H_
#define RI_MEDIAN_BENCH_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "ri_median/core.h"
#include "ri_median/hyperparams.h"
#include "ri_median/pipeline.h"

namespace ri_median::bench {

inline constexpr int64_t kDefaultDomainSize = 100'000'000;
inline constexpr char kTechniqueName[] = "postri";

struct DeclaredRange {
  int64_t lower;
  int64_t upper;
};

// Public value ranges registered for the evaluation datasets.
inline constexpr DeclaredRange kBankBalanceRange = {-8019, 102127};
inline constexpr DeclaredRange kAdultFnlwgtRange = {12285, 1490400};
inline constexpr DeclaredRange kAirplaneCapacityRange = {4, 396};

struct LoadedDataset {
  std::vector<int64_t> values;  // user units, file order
  DomainSpec domain;
};

// Reads one integer column of a delimited text file with a header line.
// The delimiter is ';' if the header contains more ';' than ',', else ','.
// Fields may be double-quoted. Fails with NotFound for a missing file or
// column and InvalidArgument for empty, non-integer or out-of-range cells.
absl::StatusOr<LoadedDataset> LoadDataset(const std::filesystem::path& path,
                                          absl::string_view column,
                                          DeclaredRange range,
                                          int64_t domain_size =
                                              kDefaultDomainSize);

struct DatasetSource {
  std::string name;
  std::filesystem::path path;
  std::string column;
  DeclaredRange range;
};

struct SweepSpec {
  DatasetSource dataset;
  int64_t domain_size = kDefaultDomainSize;
  std::vector<double> eps_grid = {0.25, 0.5, 1.0, 2.0, 4.0};
  double beta = 0.01;
  int runs = 100;
  std::vector<SplitPolicy> policies = {SplitPolicy::Default()};
  uint64_t master_seed = 0;
  ReleaseOptions release;
  // 0 picks std::thread::hardware_concurrency().
  int threads = 0;

  absl::Status Validate() const;
};

// Reads a JSON sweep description. Relative dataset paths resolve against
// the spec file's directory. Keys:
//
//   name, path, column, range: [lo, hi]      (required)
//   domain_size, eps: [...], beta, runs, policies: [...], seed,
//   beta1_fraction, gamma_domain ("sampled" | "base"), threads
absl::StatusOr<SweepSpec> ParseSweepSpec(absl::string_view json_text,
                                         const std::filesystem::path& base_dir);
absl::StatusOr<SweepSpec> LoadSweepSpec(const std::filesystem::path& path);

struct TrialRecord {
  int64_t trial_id = 0;
  int64_t cell_id = 0;
  uint64_t seed = 0;
  std::string dataset;
  std::string technique = kTechniqueName;
  std::string split_policy;
  double eps_total = 0;
  double eps1 = 0;
  double eps2 = 0;
  double beta = 0;
  int64_t step = 0;
  double true_median = 0;
  double median = 0;
  double lower = 0;
  double upper = 0;
  double median_error = 0;  // |median - true_median|
  double ri_width = 0;      // upper - lower
  bool covered = false;          // rank condition in the sampling domain
  bool covered_numeric = false;  // true_median in [lower, upper]
  // Not written to trials.csv, which must be reproducible byte for byte.
  double wall_time_ms = 0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

inline constexpr char kTrialsCsvHeader[] =
    "trial_id,cell_id,seed,dataset,technique,split_policy,eps_total,eps1,eps2,"
    "beta,step,true_median,median,lower,upper,median_error,ri_width,covered,"
    "covered_numeric";

// One cell per (eps, policy) pair, trials seeded from
// (master_seed, cell_id, trial_id). Deterministic for a given spec
// regardless of thread count.
absl::StatusOr<std::vector<TrialRecord>> RunTrials(const SweepSpec& spec,
                                                   const PreparedData& data);
absl::StatusOr<std::vector<TrialRecord>> RunTrials(const SweepSpec& spec);

struct CellSummary {
  std::string dataset;
  std::string technique;
  std::string split_policy;
  double eps_total = 0;
  double beta = 0;
  int64_t runs = 0;
  double mean_median_error = 0;
  double std_median_error = 0;
  double mean_ri_width = 0;
  double std_ri_width = 0;
  double coverage_rate = 0;
  double numeric_coverage_rate = 0;
  double mean_eps1 = 0;
  double mean_eps2 = 0;
  double mean_step = 0;
};

// Groups by (dataset, technique, policy, eps) in order of first appearance.
// Standard deviations are sample (n - 1) deviations; 0 for a single run.
std::vector<CellSummary> Summarize(const std::vector<TrialRecord>& records);

std::string TrialsToCsv(const std::vector<TrialRecord>& records);
absl::StatusOr<std::vector<TrialRecord>> TrialsFromCsv(
    absl::string_view csv_text);
std::string SummariesToCsv(const std::vector<CellSummary>& summaries);
std::string TrialsToJson(const std::vector<TrialRecord>& records);
std::string SummariesToJson(const std::vector<CellSummary>& summaries);
// Plot data for one dataset's summaries.
std::string FigureCsv(const std::vector<CellSummary>& summaries,
                      absl::string_view dataset);

// Writes every file listed at the top of this header into out_dir (created
// if missing). Fails without writing anything when records is empty.
absl::Status Emit(const std::vector<TrialRecord>& records,
                  const std::vector<CellSummary>& summaries,
                  const std::filesystem::path& out_dir);

// P[X <= successes] for X ~ Binomial(trials, p).
double BinomialLowerTail(int64_t successes, int64_t trials, double p);

// One-sided exact test of H0: coverage >= 1 - beta. Passes unless the
// observed count is significantly low at the given level.
bool CoverageConsistentWith(int64_t covered, int64_t trials, double beta,
                            double significance = 1e-3);

}  // namespace ri_median::bench

#endif  // RI_MEDIAN_BENCH_H_
