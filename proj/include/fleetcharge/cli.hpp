#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fleetcharge/io.hpp"

namespace fleetcharge::cli {

// Exit codes: 0 success, 2 validation failure, 3 infeasible, 4 size guard,
// 1 anything else. Relative output paths resolve under $FLEETCHARGE_OUT_DIR
// when it is set.

struct GenerateOptions {
  std::string preset = "small";  // small | large
  int n = 8;
  uint64_t seed = 42;
  std::optional<int> slot_minutes;
  std::optional<int> horizon_slots;
  std::optional<int> ports;
  std::optional<double> station_cap_kw;
  std::optional<double> slack;
  std::optional<double> arrival_start_min;
  std::optional<double> arrival_end_min;
  std::string out = "instance.json";
};

struct GenerateResult {
  std::filesystem::path path;
  std::string hash;
};

GenerateResult cmd_generate(const GenerateOptions& options);

struct SolveOptions {
  std::filesystem::path instance_path;
  std::string policy = "rollout:edf";  // fcfs|edf|scdf|rollout:<base>|exact
  std::string out;                     // report JSON; empty: no file
  std::optional<std::filesystem::path> reference;  // earlier report to gap against
  int threads = 0;
  bool quiet = false;
};

RunReport cmd_solve(const SolveOptions& options);

struct CompareOptions {
  std::filesystem::path instance_path;
  std::vector<std::string> policies;
  std::string out_prefix = "compare";  // writes <prefix>.csv and <prefix>.json
  std::optional<std::filesystem::path> baseline_report;
  int threads = 0;
  bool quiet = false;
};

struct CompareRow {
  std::string policy;
  bool ok = false;
  std::string error;
  RunReport report;
  std::optional<double> gap_vs_best_pct;
};

struct CompareResult {
  std::vector<CompareRow> rows;
  std::filesystem::path csv_path;
  std::filesystem::path json_path;
};

CompareResult cmd_compare(const CompareOptions& options);

struct GanttOptions {
  std::filesystem::path report_path;
  std::string out = "gantt.csv";
  std::optional<std::filesystem::path> instance_override;
};

std::filesystem::path cmd_gantt(const GanttOptions& options);

/// Runs one policy against an already-loaded instance; wall time covers the
/// solve call only. Throws ValidationError if the schedule fails validation.
RunReport solve_policy(const Instance& instance, const std::string& policy, int threads);

int run_cli(int argc, char** argv);

}  // namespace fleetcharge::cli
