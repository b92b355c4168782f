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

// Command-line front end.
//
//   ri_median_cli median --input F --column C --range LO:HI --eps E ...
//   ri_median_cli sweep --spec S.json --out DIR
//   ri_median_cli oracle-check
//   ri_median_cli emit-plots --trials DIR/trials.csv --out DIR
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 convergence or
// degenerate-parameter error (also returned when an oracle check fails).

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "json.hpp"
#include "ri_median/bench.h"
#include "ri_median/hyperparams.h"
#include "ri_median/pipeline.h"
#include "ri_median/rng.h"
#include "ri_median/validation.h"

namespace {

using ::ri_median::bench::DeclaredRange;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitDegenerate = 3;

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kOutOfRange:
      return kExitDegenerate;
    default:
      return kExitData;
  }
}

int Report(const absl::Status& status) {
  std::cerr << "error: " << status.message() << "\n";
  return ExitCodeFor(status);
}

int UsageError(const std::string& message) {
  std::cerr << "usage error: " << message << "\n";
  return kExitUsage;
}

absl::StatusOr<DeclaredRange> ParseRange(const std::string& text) {
  std::vector<std::string> parts = absl::StrSplit(text, ':');
  DeclaredRange range;
  if (parts.size() != 2 || !absl::SimpleAtoi(parts[0], &range.lower) ||
      !absl::SimpleAtoi(parts[1], &range.upper) ||
      range.lower >= range.upper) {
    return absl::InvalidArgumentError(
        absl::StrCat("--range must be LO:HI with integers LO < HI, got '",
                     text, "'"));
  }
  return range;
}

struct MedianArgs {
  std::string input;
  std::string column;
  std::string range;
  double eps = 1.0;
  double beta = 0.01;
  std::string split = "default";
  uint64_t seed = 0;
  int64_t domain_size = ri_median::bench::kDefaultDomainSize;
  std::string gamma_domain = "sampled";
  double beta1_fraction = 0.5;
};

int RunMedian(const MedianArgs& args) {
  absl::StatusOr<DeclaredRange> range = ParseRange(args.range);
  if (!range.ok()) return UsageError(std::string(range.status().message()));
  absl::StatusOr<ri_median::SplitPolicy> policy =
      ri_median::SplitPolicy::Parse(args.split);
  if (!policy.ok()) return UsageError(std::string(policy.status().message()));
  absl::StatusOr<ri_median::GammaDomain> gamma_domain =
      ri_median::ParseGammaDomain(args.gamma_domain);
  if (!gamma_domain.ok()) {
    return UsageError(std::string(gamma_domain.status().message()));
  }
  if (!(args.eps > 0) || !std::isfinite(args.eps)) {
    return UsageError("--eps must be positive");
  }
  if (!(args.beta > 0 && args.beta < 1)) {
    return UsageError("--beta must lie in (0, 1)");
  }
  if (!(args.beta1_fraction > 0 && args.beta1_fraction < 1)) {
    return UsageError("--beta1-fraction must lie in (0, 1)");
  }

  absl::StatusOr<ri_median::bench::LoadedDataset> loaded =
      ri_median::bench::LoadDataset(args.input, args.column, *range,
                                    args.domain_size);
  if (!loaded.ok()) return Report(loaded.status());
  absl::StatusOr<ri_median::PreparedData> data =
      ri_median::PrepareData(loaded->values, loaded->domain);
  if (!data.ok()) return Report(data.status());

  ri_median::RngStream rng(args.seed);
  ri_median::ReleaseOptions options;
  options.beta1_fraction = args.beta1_fraction;
  options.gamma_domain = *gamma_domain;
  absl::StatusOr<ri_median::Release> release =
      ri_median::ReleaseMedianWithInterval(*data, args.eps, args.beta,
                                           *policy, rng, options);
  if (!release.ok()) return Report(release.status());

  // Only public parameters and the private release itself are printed.
  const nlohmann::json out = {
      {"median", release->median_value},
      {"lower", release->lower},
      {"upper", release->upper},
      {"eps", release->params.eps_total},
      {"eps1", release->params.eps1},
      {"eps2", release->params.eps2},
      {"beta", release->params.beta_total},
      {"beta1", release->params.beta1},
      {"beta2", release->params.beta2},
      {"step", release->params.step},
      {"split", policy->ToString()},
      {"gamma_domain", ri_median::GammaDomainName(*gamma_domain)},
      {"gamma1", release->interval.gamma1},
      {"gamma2", release->interval.gamma2},
      {"seed", args.seed},
      {"n", data->base.n()},
  };
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int RunSweep(const std::string& spec_path, const std::string& out_dir,
             int threads) {
  absl::StatusOr<ri_median::bench::SweepSpec> spec =
      ri_median::bench::LoadSweepSpec(spec_path);
  if (!spec.ok()) return Report(spec.status());
  if (threads > 0) spec->threads = threads;
  absl::StatusOr<std::vector<ri_median::bench::TrialRecord>> records =
      ri_median::bench::RunTrials(*spec);
  if (!records.ok()) return Report(records.status());
  const std::vector<ri_median::bench::CellSummary> summaries =
      ri_median::bench::Summarize(*records);
  if (absl::Status s = ri_median::bench::Emit(*records, summaries, out_dir);
      !s.ok()) {
    return Report(s);
  }
  // Wall-clock times vary run to run, so they live outside trials.csv.
  std::ofstream timing(std::filesystem::path(out_dir) / "timing.csv");
  timing << "trial_id,cell_id,wall_time_ms\n";
  for (const auto& r : *records) {
    timing << r.trial_id << "," << r.cell_id << "," << r.wall_time_ms << "\n";
  }
  if (!timing) return Report(absl::DataLossError("Cannot write timing.csv"));

  std::cout << ri_median::bench::SummariesToCsv(summaries);
  return kExitOk;
}

int RunOracleCheck() {
  bool all_passed = true;
  for (const auto& result : ri_median::validation::RunOracleSuite()) {
    std::cout << (result.passed ? "PASS" : "FAIL") << "  " << result.name
              << "  (" << result.detail << ")\n";
    all_passed = all_passed && result.passed;
  }
  return all_passed ? kExitOk : kExitDegenerate;
}

int RunEmitPlots(const std::string& trials_path, const std::string& out_dir) {
  std::ifstream in(trials_path, std::ios::binary);
  if (!in) {
    return Report(
        absl::NotFoundError(absl::StrCat("Cannot open '", trials_path, "'")));
  }
  std::ostringstream text;
  text << in.rdbuf();
  absl::StatusOr<std::vector<ri_median::bench::TrialRecord>> records =
      ri_median::bench::TrialsFromCsv(text.str());
  if (!records.ok()) return Report(records.status());
  if (absl::Status s = ri_median::bench::Emit(
          *records, ri_median::bench::Summarize(*records), out_dir);
      !s.ok()) {
    return Report(s);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private median with a randomization interval"};
  app.require_subcommand(1);

  MedianArgs median_args;
  CLI::App* median = app.add_subcommand(
      "median", "Release a private median and its randomization interval");
  median->add_option("--input", median_args.input, "Delimited text file")
      ->required();
  median->add_option("--column", median_args.column, "Column name")
      ->required();
  median->add_option("--range", median_args.range,
                     "Public value range LO:HI (not computed from the data)")
      ->required();
  median->add_option("--eps", median_args.eps, "Total privacy budget")
      ->capture_default_str();
  median->add_option("--beta", median_args.beta, "Total failure probability")
      ->capture_default_str();
  median
      ->add_option("--split", median_args.split,
                   "default | optimal | median-focused | ratio=R")
      ->capture_default_str();
  median->add_option("--seed", median_args.seed, "RNG seed")
      ->capture_default_str();
  median->add_option("--domain-size", median_args.domain_size,
                     "Integer domain size N")
      ->capture_default_str();
  median
      ->add_option("--gamma-domain", median_args.gamma_domain,
                   "Domain size in the log terms: sampled | base")
      ->capture_default_str();
  median
      ->add_option("--beta1-fraction", median_args.beta1_fraction,
                   "Share of beta given to the median stage")
      ->capture_default_str();

  std::string spec_path;
  std::string sweep_out = "results";
  int threads = 0;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a seeded trial sweep");
  sweep->add_option("--spec", spec_path, "Sweep spec (JSON)")->required();
  sweep->add_option("--out", sweep_out, "Output directory")
      ->capture_default_str();
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");

  CLI::App* oracle_check = app.add_subcommand(
      "oracle-check", "Run the small-instance validation suite");

  std::string trials_path;
  std::string plots_out = "results";
  CLI::App* emit_plots = app.add_subcommand(
      "emit-plots", "Rebuild summaries and plot data from trials.csv");
  emit_plots->add_option("--trials", trials_path, "trials.csv path")
      ->required();
  emit_plots->add_option("--out", plots_out, "Output directory")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (median->parsed()) return RunMedian(median_args);
  if (sweep->parsed()) return RunSweep(spec_path, sweep_out, threads);
  if (oracle_check->parsed()) return RunOracleCheck();
  if (emit_plots->parsed()) return RunEmitPlots(trials_path, plots_out);
  return kExitUsage;
}
