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

#include "ri_median/bench.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "absl/strings/ascii.h"
#include "json.hpp"
#include "ri_median/rng.h"
#include "ri_median/status_macros.h"

namespace ri_median::bench {
namespace {

using ::nlohmann::json;

// Shortest representation that parses back to the same double.
std::string FormatDouble(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

// Splits one delimited line, honoring double quotes ("" escapes a quote).
std::vector<std::string> SplitFields(absl::string_view line, char delimiter) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back().push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back().push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delimiter) {
      fields.emplace_back();
    } else {
      fields.back().push_back(c);
    }
  }
  for (std::string& field : fields) {
    field = std::string(absl::StripAsciiWhitespace(field));
  }
  return fields;
}

absl::StatusOr<int64_t> ParseIntegerCell(absl::string_view cell) {
  int64_t value;
  if (absl::SimpleAtoi(cell, &value)) return value;
  double real;
  if (absl::SimpleAtod(cell, &real) && std::isfinite(real) &&
      real == std::floor(real) && std::abs(real) < 9.0e15) {
    return static_cast<int64_t>(real);
  }
  return absl::InvalidArgumentError(
      absl::StrCat("'", cell, "' is not an integer"));
}

absl::StatusOr<std::string> ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(
        absl::StrCat("Cannot open '", path.string(), "'"));
  }
  std::ostringstream contents;
  contents << in.rdbuf();
  return contents.str();
}

absl::Status WriteFile(const std::filesystem::path& path,
                       const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("Cannot write '", path.string(), "'"));
  }
  out << contents;
  out.close();
  if (!out) {
    return absl::DataLossError(
        absl::StrCat("Failed while writing '", path.string(), "'"));
  }
  return absl::OkStatus();
}

double Mean(const std::vector<double>& values) {
  double sum = 0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double SampleStd(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double mean = Mean(values);
  double squares = 0;
  for (double v : values) squares += (v - mean) * (v - mean);
  return std::sqrt(squares / static_cast<double>(values.size() - 1));
}

std::string SeriesName(const CellSummary& summary) {
  if (summary.technique == kTechniqueName) return summary.split_policy;
  return absl::StrCat(summary.technique, ":", summary.split_policy);
}

}  // namespace

absl::StatusOr<LoadedDataset> LoadDataset(const std::filesystem::path& path,
                                          absl::string_view column,
                                          DeclaredRange range,
                                          int64_t domain_size) {
  ASSIGN_OR_RETURN(const DomainSpec domain,
                   DomainSpec::Create(domain_size, range.lower, range.upper));
  ASSIGN_OR_RETURN(const std::string text, ReadFile(path));
  std::vector<absl::string_view> lines = absl::StrSplit(text, '\n');
  if (lines.empty() || absl::StripAsciiWhitespace(lines[0]).empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", path.string(), "' has no header line"));
  }
  const absl::string_view header = absl::StripTrailingAsciiWhitespace(lines[0]);
  const char delimiter =
      std::count(header.begin(), header.end(), ';') >
              std::count(header.begin(), header.end(), ',')
          ? ';'
          : ',';
  const std::vector<std::string> names = SplitFields(header, delimiter);
  const auto it = std::find(names.begin(), names.end(), column);
  if (it == names.end()) {
    return absl::NotFoundError(absl::StrCat("Column '", column,
                                            "' not found in '", path.string(),
                                            "'"));
  }
  const size_t index = it - names.begin();

  std::vector<int64_t> values;
  for (size_t line_no = 1; line_no < lines.size(); ++line_no) {
    const absl::string_view line =
        absl::StripTrailingAsciiWhitespace(lines[line_no]);
    if (line.empty()) continue;
    const std::vector<std::string> fields = SplitFields(line, delimiter);
    const std::string where =
        absl::StrCat(path.filename().string(), ":", line_no + 1);
    if (index >= fields.size() || fields[index].empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat(where, ": empty value in column '", column, "'"));
    }
    absl::StatusOr<int64_t> value = ParseIntegerCell(fields[index]);
    if (!value.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat(where, ": ", value.status().message()));
    }
    if (*value < range.lower || *value > range.upper) {
      return absl::InvalidArgumentError(
          absl::StrCat(where, ": value ", *value,
                       " lies outside the declared range [", range.lower, ", ",
                       range.upper, "]"));
    }
    values.push_back(*value);
  }
  if (values.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", path.string(), "' has no data rows"));
  }
  return LoadedDataset{std::move(values), domain};
}

absl::Status SweepSpec::Validate() const {
  if (eps_grid.empty()) {
    return absl::InvalidArgumentError("The eps grid must not be empty");
  }
  for (double eps : eps_grid) {
    if (!(eps > 0) || !std::isfinite(eps)) {
      return absl::InvalidArgumentError(
          absl::StrCat("eps grid values must be positive, got ", eps));
    }
  }
  if (!(beta > 0 && beta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta must lie in (0, 1), got ", beta));
  }
  if (runs < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("runs must be at least 1, got ", runs));
  }
  if (policies.empty()) {
    return absl::InvalidArgumentError("At least one split policy is required");
  }
  if (domain_size < 1) {
    return absl::InvalidArgumentError("domain_size must be at least 1");
  }
  if (dataset.name.empty()) {
    return absl::InvalidArgumentError("The dataset needs a name");
  }
  return absl::OkStatus();
}

absl::StatusOr<SweepSpec> ParseSweepSpec(absl::string_view json_text,
                                         const std::filesystem::path& base_dir) {
  SweepSpec spec;
  try {
    const json root = json::parse(json_text.begin(), json_text.end());
    spec.dataset.name = root.at("name").get<std::string>();
    std::filesystem::path path = root.at("path").get<std::string>();
    spec.dataset.path = path.is_absolute() ? path : base_dir / path;
    spec.dataset.column = root.at("column").get<std::string>();
    const json& range = root.at("range");
    if (!range.is_array() || range.size() != 2) {
      return absl::InvalidArgumentError("'range' must be [lower, upper]");
    }
    spec.dataset.range = {range[0].get<int64_t>(), range[1].get<int64_t>()};
    spec.domain_size = root.value("domain_size", spec.domain_size);
    if (root.contains("eps")) {
      spec.eps_grid = root.at("eps").get<std::vector<double>>();
    }
    spec.beta = root.value("beta", spec.beta);
    spec.runs = root.value("runs", spec.runs);
    spec.master_seed = root.value("seed", spec.master_seed);
    spec.threads = root.value("threads", spec.threads);
    spec.release.beta1_fraction =
        root.value("beta1_fraction", spec.release.beta1_fraction);
    if (root.contains("gamma_domain")) {
      ASSIGN_OR_RETURN(
          spec.release.gamma_domain,
          ParseGammaDomain(root.at("gamma_domain").get<std::string>()));
    }
    if (root.contains("policies")) {
      spec.policies.clear();
      for (const json& policy : root.at("policies")) {
        ASSIGN_OR_RETURN(SplitPolicy parsed,
                         SplitPolicy::Parse(policy.get<std::string>()));
        spec.policies.push_back(parsed);
      }
    }
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("Malformed sweep spec: ", e.what()));
  }
  RETURN_IF_ERROR(spec.Validate());
  return spec;
}

absl::StatusOr<SweepSpec> LoadSweepSpec(const std::filesystem::path& path) {
  ASSIGN_OR_RETURN(const std::string text, ReadFile(path));
  return ParseSweepSpec(text, path.parent_path());
}

absl::StatusOr<std::vector<TrialRecord>> RunTrials(const SweepSpec& spec,
                                                   const PreparedData& data) {
  RETURN_IF_ERROR(spec.Validate());
  const int64_t num_policies = static_cast<int64_t>(spec.policies.size());
  const int64_t num_cells =
      static_cast<int64_t>(spec.eps_grid.size()) * num_policies;
  const int64_t num_tasks = num_cells * spec.runs;

  // Parameters depend only on the cell, so resolve them once per cell.
  std::vector<PrivacyParams> cell_params;
  cell_params.reserve(num_cells);
  for (int64_t cell = 0; cell < num_cells; ++cell) {
    const double eps = spec.eps_grid[cell / num_policies];
    const SplitPolicy& policy = spec.policies[cell % num_policies];
    absl::StatusOr<PrivacyParams> params = ResolvePrivacyParams(
        policy, eps, spec.beta,
        GammaDomainSize(data, spec.release.gamma_domain),
        spec.release.beta1_fraction);
    if (!params.ok()) {
      return absl::Status(
          params.status().code(),
          absl::StrCat("Cell eps=", eps, " policy=", policy.ToString(), ": ",
                       params.status().message()));
    }
    cell_params.push_back(*params);
  }

  std::vector<TrialRecord> records(num_tasks);
  std::vector<absl::Status> statuses(num_tasks);
  std::atomic<int64_t> next_task{0};
  auto worker = [&]() {
    for (int64_t task = next_task++; task < num_tasks; task = next_task++) {
      const int64_t cell = task / spec.runs;
      const int64_t trial = task % spec.runs;
      RngStream rng = RngStream::ForTrial(spec.master_seed, cell, trial);
      const auto start = std::chrono::steady_clock::now();
      absl::StatusOr<Release> release = ReleaseWithParams(
          data, cell_params[cell], rng, spec.release.gamma_domain);
      const auto stop = std::chrono::steady_clock::now();
      if (!release.ok()) {
        statuses[task] = release.status();
        continue;
      }
      TrialRecord& record = records[task];
      record.trial_id = trial;
      record.cell_id = cell;
      record.seed = rng.seed();
      record.dataset = spec.dataset.name;
      record.split_policy = spec.policies[cell % num_policies].ToString();
      record.eps_total = release->params.eps_total;
      record.eps1 = release->params.eps1;
      record.eps2 = release->params.eps2;
      record.beta = release->params.beta_total;
      record.step = release->params.step;
      record.true_median = data.true_median;
      record.median = static_cast<double>(release->median_value);
      record.lower = static_cast<double>(release->lower);
      record.upper = static_cast<double>(release->upper);
      record.median_error = std::abs(record.median - record.true_median);
      record.ri_width = record.upper - record.lower;
      record.covered = release->interval.rank_covered;
      record.covered_numeric = record.lower <= record.true_median &&
                               record.true_median <= record.upper;
      record.wall_time_ms =
          std::chrono::duration<double, std::milli>(stop - start).count();
    }
  };

  int threads = spec.threads > 0
                    ? spec.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp<int>(threads, 1,
                            static_cast<int>(std::min<int64_t>(num_tasks, 256)));
  {
    std::vector<std::jthread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }

  for (int64_t task = 0; task < num_tasks; ++task) {
    if (!statuses[task].ok()) {
      const int64_t cell = task / spec.runs;
      return absl::Status(
          statuses[task].code(),
          absl::StrCat("Cell eps=", spec.eps_grid[cell / num_policies],
                       " policy=", spec.policies[cell % num_policies].ToString(),
                       " trial ", task % spec.runs, ": ",
                       statuses[task].message()));
    }
  }
  return records;
}

absl::StatusOr<std::vector<TrialRecord>> RunTrials(const SweepSpec& spec) {
  RETURN_IF_ERROR(spec.Validate());
  ASSIGN_OR_RETURN(const LoadedDataset loaded,
                   LoadDataset(spec.dataset.path, spec.dataset.column,
                               spec.dataset.range, spec.domain_size));
  ASSIGN_OR_RETURN(const PreparedData data,
                   PrepareData(loaded.values, loaded.domain));
  return RunTrials(spec, data);
}

std::vector<CellSummary> Summarize(const std::vector<TrialRecord>& records) {
  using Key = std::tuple<std::string, std::string, std::string, double>;
  std::map<Key, size_t> index_of;
  std::vector<std::vector<const TrialRecord*>> groups;
  for (const TrialRecord& record : records) {
    const Key key{record.dataset, record.technique, record.split_policy,
                  record.eps_total};
    auto [it, inserted] = index_of.try_emplace(key, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(&record);
  }

  std::vector<CellSummary> summaries;
  summaries.reserve(groups.size());
  for (const auto& group : groups) {
    std::vector<double> errors, widths, eps1, eps2, steps;
    int64_t covered = 0;
    int64_t covered_numeric = 0;
    for (const TrialRecord* record : group) {
      errors.push_back(record->median_error);
      widths.push_back(record->ri_width);
      eps1.push_back(record->eps1);
      eps2.push_back(record->eps2);
      steps.push_back(static_cast<double>(record->step));
      covered += record->covered ? 1 : 0;
      covered_numeric += record->covered_numeric ? 1 : 0;
    }
    const TrialRecord& first = *group.front();
    const double runs = static_cast<double>(group.size());
    CellSummary summary;
    summary.dataset = first.dataset;
    summary.technique = first.technique;
    summary.split_policy = first.split_policy;
    summary.eps_total = first.eps_total;
    summary.beta = first.beta;
    summary.runs = static_cast<int64_t>(group.size());
    summary.mean_median_error = Mean(errors);
    summary.std_median_error = SampleStd(errors);
    summary.mean_ri_width = Mean(widths);
    summary.std_ri_width = SampleStd(widths);
    summary.coverage_rate = static_cast<double>(covered) / runs;
    summary.numeric_coverage_rate = static_cast<double>(covered_numeric) / runs;
    summary.mean_eps1 = Mean(eps1);
    summary.mean_eps2 = Mean(eps2);
    summary.mean_step = Mean(steps);
    summaries.push_back(std::move(summary));
  }
  return summaries;
}

std::string TrialsToCsv(const std::vector<TrialRecord>& records) {
  std::string out = absl::StrCat(kTrialsCsvHeader, "\n");
  for (const TrialRecord& r : records) {
    absl::StrAppend(
        &out, r.trial_id, ",", r.cell_id, ",", r.seed, ",", r.dataset, ",",
        r.technique, ",", r.split_policy, ",", FormatDouble(r.eps_total), ",",
        FormatDouble(r.eps1), ",", FormatDouble(r.eps2), ",",
        FormatDouble(r.beta), ",", r.step, ",", FormatDouble(r.true_median),
        ",", FormatDouble(r.median), ",", FormatDouble(r.lower), ",",
        FormatDouble(r.upper), ",", FormatDouble(r.median_error), ",",
        FormatDouble(r.ri_width), ",", r.covered ? 1 : 0, ",",
        r.covered_numeric ? 1 : 0, "\n");
  }
  return out;
}

absl::StatusOr<std::vector<TrialRecord>> TrialsFromCsv(
    absl::string_view csv_text) {
  std::vector<absl::string_view> lines =
      absl::StrSplit(csv_text, '\n', absl::SkipWhitespace());
  if (lines.empty() ||
      absl::StripTrailingAsciiWhitespace(lines[0]) != kTrialsCsvHeader) {
    return absl::InvalidArgumentError(
        absl::StrCat("Trials file must start with the header: ",
                     kTrialsCsvHeader));
  }
  std::vector<TrialRecord> records;
  for (size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> f =
        SplitFields(absl::StripTrailingAsciiWhitespace(lines[i]), ',');
    if (f.size() != 19) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Trials line ", i + 1, " has ", f.size(), " fields, expected 19"));
    }
    TrialRecord r;
    int covered = 0;
    int covered_numeric = 0;
    const bool ok =
        absl::SimpleAtoi(f[0], &r.trial_id) &&
        absl::SimpleAtoi(f[1], &r.cell_id) && absl::SimpleAtoi(f[2], &r.seed) &&
        absl::SimpleAtod(f[6], &r.eps_total) &&
        absl::SimpleAtod(f[7], &r.eps1) && absl::SimpleAtod(f[8], &r.eps2) &&
        absl::SimpleAtod(f[9], &r.beta) && absl::SimpleAtoi(f[10], &r.step) &&
        absl::SimpleAtod(f[11], &r.true_median) &&
        absl::SimpleAtod(f[12], &r.median) &&
        absl::SimpleAtod(f[13], &r.lower) &&
        absl::SimpleAtod(f[14], &r.upper) &&
        absl::SimpleAtod(f[15], &r.median_error) &&
        absl::SimpleAtod(f[16], &r.ri_width) &&
        absl::SimpleAtoi(f[17], &covered) &&
        absl::SimpleAtoi(f[18], &covered_numeric);
    if (!ok) {
      return absl::InvalidArgumentError(
          absl::StrCat("Trials line ", i + 1, " has a malformed number"));
    }
    r.dataset = f[3];
    r.technique = f[4];
    r.split_policy = f[5];
    r.covered = covered != 0;
    r.covered_numeric = covered_numeric != 0;
    records.push_back(std::move(r));
  }
  return records;
}

std::string SummariesToCsv(const std::vector<CellSummary>& summaries) {
  std::string out =
      "dataset,technique,split_policy,eps_total,beta,runs,mean_median_error,"
      "std_median_error,mean_ri_width,std_ri_width,coverage_rate,"
      "numeric_coverage_rate,mean_eps1,mean_eps2,mean_step\n";
  for (const CellSummary& s : summaries) {
    absl::StrAppend(
        &out, s.dataset, ",", s.technique, ",", s.split_policy, ",",
        FormatDouble(s.eps_total), ",", FormatDouble(s.beta), ",", s.runs, ",",
        FormatDouble(s.mean_median_error), ",",
        FormatDouble(s.std_median_error), ",", FormatDouble(s.mean_ri_width),
        ",", FormatDouble(s.std_ri_width), ",", FormatDouble(s.coverage_rate),
        ",", FormatDouble(s.numeric_coverage_rate), ",",
        FormatDouble(s.mean_eps1), ",", FormatDouble(s.mean_eps2), ",",
        FormatDouble(s.mean_step), "\n");
  }
  return out;
}

std::string TrialsToJson(const std::vector<TrialRecord>& records) {
  json out = json::array();
  for (const TrialRecord& r : records) {
    out.push_back({{"trial_id", r.trial_id},
                   {"cell_id", r.cell_id},
                   {"seed", r.seed},
                   {"dataset", r.dataset},
                   {"technique", r.technique},
                   {"split_policy", r.split_policy},
                   {"eps_total", r.eps_total},
                   {"eps1", r.eps1},
                   {"eps2", r.eps2},
                   {"beta", r.beta},
                   {"step", r.step},
                   {"true_median", r.true_median},
                   {"median", r.median},
                   {"lower", r.lower},
                   {"upper", r.upper},
                   {"median_error", r.median_error},
                   {"ri_width", r.ri_width},
                   {"covered", r.covered},
                   {"covered_numeric", r.covered_numeric}});
  }
  return out.dump(1) + "\n";
}

std::string SummariesToJson(const std::vector<CellSummary>& summaries) {
  json out = json::array();
  for (const CellSummary& s : summaries) {
    out.push_back({{"dataset", s.dataset},
                   {"technique", s.technique},
                   {"split_policy", s.split_policy},
                   {"eps_total", s.eps_total},
                   {"beta", s.beta},
                   {"runs", s.runs},
                   {"mean_median_error", s.mean_median_error},
                   {"std_median_error", s.std_median_error},
                   {"mean_ri_width", s.mean_ri_width},
                   {"std_ri_width", s.std_ri_width},
                   {"coverage_rate", s.coverage_rate},
                   {"numeric_coverage_rate", s.numeric_coverage_rate},
                   {"mean_eps1", s.mean_eps1},
                   {"mean_eps2", s.mean_eps2},
                   {"mean_step", s.mean_step}});
  }
  return out.dump(1) + "\n";
}

std::string FigureCsv(const std::vector<CellSummary>& summaries,
                      absl::string_view dataset) {
  std::vector<std::string> series;
  std::vector<double> eps_values;
  std::map<std::pair<std::string, double>, const CellSummary*> cells;
  for (const CellSummary& s : summaries) {
    if (s.dataset != dataset) continue;
    const std::string name = SeriesName(s);
    if (std::find(series.begin(), series.end(), name) == series.end()) {
      series.push_back(name);
    }
    if (std::find(eps_values.begin(), eps_values.end(), s.eps_total) ==
        eps_values.end()) {
      eps_values.push_back(s.eps_total);
    }
    cells[{name, s.eps_total}] = &s;
  }
  std::sort(eps_values.begin(), eps_values.end());

  std::string out = "eps";
  for (const std::string& name : series) {
    absl::StrAppend(&out, ",", name, "_median_error,", name,
                    "_median_error_std,", name, "_ri_width,", name,
                    "_ri_width_std");
  }
  out += "\n";
  for (double eps : eps_values) {
    out += FormatDouble(eps);
    for (const std::string& name : series) {
      auto it = cells.find({name, eps});
      if (it == cells.end()) {
        out += ",,,,";
        continue;
      }
      const CellSummary& s = *it->second;
      absl::StrAppend(&out, ",", FormatDouble(s.mean_median_error), ",",
                      FormatDouble(s.std_median_error), ",",
                      FormatDouble(s.mean_ri_width), ",",
                      FormatDouble(s.std_ri_width));
    }
    out += "\n";
  }
  return out;
}

absl::Status Emit(const std::vector<TrialRecord>& records,
                  const std::vector<CellSummary>& summaries,
                  const std::filesystem::path& out_dir) {
  if (records.empty()) {
    return absl::InvalidArgumentError("No trial records to emit");
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(absl::StrCat(
        "Cannot create '", out_dir.string(), "': ", ec.message()));
  }
  RETURN_IF_ERROR(WriteFile(out_dir / "trials.csv", TrialsToCsv(records)));
  RETURN_IF_ERROR(WriteFile(out_dir / "trials.json", TrialsToJson(records)));
  RETURN_IF_ERROR(
      WriteFile(out_dir / "summary.csv", SummariesToCsv(summaries)));
  RETURN_IF_ERROR(
      WriteFile(out_dir / "summary.json", SummariesToJson(summaries)));
  std::vector<std::string> datasets;
  for (const CellSummary& s : summaries) {
    if (std::find(datasets.begin(), datasets.end(), s.dataset) ==
        datasets.end()) {
      datasets.push_back(s.dataset);
    }
  }
  for (const std::string& dataset : datasets) {
    RETURN_IF_ERROR(WriteFile(out_dir / absl::StrCat("fig_", dataset, ".csv"),
                              FigureCsv(summaries, dataset)));
  }
  return absl::OkStatus();
}

double BinomialLowerTail(int64_t successes, int64_t trials, double p) {
  if (successes >= trials) return 1.0;
  if (successes < 0) return 0.0;
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return 0.0;
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double n = static_cast<double>(trials);
  std::vector<double> terms;
  terms.reserve(successes + 1);
  double max_term = -INFINITY;
  for (int64_t k = 0; k <= successes; ++k) {
    const double kd = static_cast<double>(k);
    const double term = std::lgamma(n + 1) - std::lgamma(kd + 1) -
                        std::lgamma(n - kd + 1) + kd * log_p +
                        (n - kd) * log_q;
    terms.push_back(term);
    max_term = std::max(max_term, term);
  }
  double sum = 0;
  for (double t : terms) sum += std::exp(t - max_term);
  return std::min(1.0, std::exp(max_term) * sum);
}

bool CoverageConsistentWith(int64_t covered, int64_t trials, double beta,
                            double significance) {
  return BinomialLowerTail(covered, trials, 1.0 - beta) >= significance;
}

}  // namespace ri_median::bench
