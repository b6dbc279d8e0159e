#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fleetcharge/model.hpp"

namespace fleetcharge {

// Instance files use the "fleetcharge/1" schema: trucks (energies in kWh,
// times as "HH:MM" strings or absolute minutes), station, tariff, timeline.

std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text);

void save_instance(const Instance& instance, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

/// FNV-1a 64-bit over the raw file bytes, as "fnv1a64:<hex>". Reports carry
/// this to bind results to the exact instance file they came from.
std::string hash_bytes(const std::string& bytes);
std::string hash_file(const std::filesystem::path& path);

struct TruckRow {
  int truck = 0;
  int port = 0;  // 1-based in files
  double start_min = 0.0;
  double finish_min = 0.0;
  double duration_min = 0.0;
  double delivered_kwh = 0.0;
  double waiting_min = 0.0;
  double tardiness_min = 0.0;
};

struct RolloutStageRow {
  int stage = 0;
  int truck = 0;
  int port = 0;  // 1-based in files
  double best_cost = 0.0;
  int candidates = 0;
};

struct RunReport {
  std::string instance_path;
  std::string instance_hash;
  std::string policy;
  CostBreakdown cost;
  std::vector<TruckRow> rows;
  Schedule schedule;
  double solve_seconds = 0.0;
  long long inner_evaluations = 0;
  int repair_iterations = 0;
  std::optional<double> gap_vs_reference_pct;
  std::vector<RolloutStageRow> rollout_stages;
  bool rollout_fell_back = false;
};

std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);

void save_report(const RunReport& report, const std::filesystem::path& path);
RunReport load_report(const std::filesystem::path& path);

/// "HH:MM" (possibly beyond 24:00) or a plain number of minutes.
double parse_minutes(const std::string& text);

}  // namespace fleetcharge
