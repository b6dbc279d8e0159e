#include "fleetcharge/cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fleetcharge/errors.hpp"
#include "fleetcharge/exact.hpp"
#include "fleetcharge/rollout.hpp"
#include "fleetcharge/scenario.hpp"

namespace fleetcharge::cli {

namespace {

std::filesystem::path resolve_out(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("FLEETCHARGE_OUT_DIR"); dir && *dir) {
    return std::filesystem::path(dir) / p;
  }
  return p;
}

/// Locale-independent shortest decimal form.
std::string fmt(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

std::string fmt(long long value) { return std::to_string(value); }

void print_cost(const std::string& label, const CostBreakdown& cost) {
  std::printf("%s: total %.2f EUR (energy %.2f, waiting %.2f, tardiness %.2f)\n", label.c_str(),
              cost.total_eur, cost.energy_eur, cost.waiting_eur, cost.tardiness_eur);
}

RunReport report_from_solution(const Instance& instance, const InnerSolution& solution) {
  RunReport report;
  report.cost = solution.cost;
  report.schedule = solution.schedule;
  report.repair_iterations = solution.stats.repair_iterations;
  for (const auto& ts : solution.schedule.trucks) {
    const TruckSpec& spec = instance.truck(ts.truck_id);
    TruckRow row;
    row.truck = ts.truck_id;
    row.port = ts.port + 1;
    row.start_min = ts.start_min;
    row.finish_min = ts.finish_min;
    row.duration_min = ts.finish_min - ts.start_min;
    row.delivered_kwh = delivered_kwh(ts, instance.timeline);
    row.waiting_min = ts.start_min - spec.arrival_min;
    row.tardiness_min = std::max(ts.finish_min - spec.deadline_min, 0.0);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace

RunReport solve_policy(const Instance& instance, const std::string& policy, int threads) {
  using clock = std::chrono::steady_clock;
  RunReport report;

  auto begin = clock::now();
  if (policy == "exact") {
    ExactConfig config;
    config.threads = threads;
    ExactResult result = exact_solve(instance, config);
    report = report_from_solution(instance, result.solution);
    report.inner_evaluations = result.evaluated + 1;
  } else if (policy.rfind("rollout:", 0) == 0) {
    RolloutConfig config;
    config.threads = threads;
    config.record_candidates = false;
    PolicyKind base = parse_policy_kind(policy.substr(8));
    RolloutTrace trace = rollout_solve(instance, base, config);
    report = report_from_solution(instance, trace.final_solution);
    report.inner_evaluations = trace.inner_evaluations;
    for (size_t k = 0; k < trace.stages.size(); ++k) {
      const auto& stage = trace.stages[k];
      report.rollout_stages.push_back({static_cast<int>(k), stage.chosen.truck_id,
                                       stage.chosen.port + 1, stage.best_cost,
                                       instance.station.num_ports() *
                                           (instance.num_trucks() - static_cast<int>(k))});
    }
    report.rollout_fell_back = trace.fell_back_to_base;
  } else {
    PolicyKind kind = parse_policy_kind(policy);
    Ordering ordering = base_order(instance, kind);
    InnerSolution solution = inner_solve(instance, ordering);
    report = report_from_solution(instance, solution);
    report.inner_evaluations = 1;
  }
  report.solve_seconds = std::chrono::duration<double>(clock::now() - begin).count();
  report.policy = policy;

  auto violations = validate_schedule(instance, report.schedule);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "policy " << policy << " produced " << violations.size() << " constraint violation(s): ";
    for (const auto& v : violations) msg << "[" << constraint_name(v.constraint) << "] " << v.detail << "; ";
    throw ValidationError(msg.str());
  }
  return report;
}

GenerateResult cmd_generate(const GenerateOptions& options) {
  ScenarioConfig config;
  if (options.preset == "small") {
    config = small_preset(options.n, options.seed);
  } else if (options.preset == "large") {
    config = large_preset(options.n, options.seed);
  } else {
    throw ValidationError("unknown preset '" + options.preset + "' (expected small|large)");
  }
  if (options.slot_minutes) config.slot_minutes = *options.slot_minutes;
  if (options.horizon_slots) config.horizon_slots = *options.horizon_slots;
  if (options.ports) config.n_ports = *options.ports;
  if (options.station_cap_kw) config.station_cap_kw = *options.station_cap_kw;
  if (options.slack) config.slack = *options.slack;
  if (options.arrival_start_min) config.arrival_start_min = *options.arrival_start_min;
  if (options.arrival_end_min) config.arrival_end_min = *options.arrival_end_min;

  Instance instance = generate_instance(config);
  GenerateResult result;
  result.path = resolve_out(options.out);
  save_instance(instance, result.path);
  result.hash = hash_file(result.path);
  std::printf("%s %s\n", result.path.string().c_str(), result.hash.c_str());
  return result;
}

RunReport cmd_solve(const SolveOptions& options) {
  Instance instance = load_instance(options.instance_path);
  RunReport report = solve_policy(instance, options.policy, options.threads);
  report.instance_path = options.instance_path.string();
  report.instance_hash = hash_file(options.instance_path);

  if (options.reference) {
    RunReport reference = load_report(*options.reference);
    if (reference.instance_hash != report.instance_hash) {
      throw ValidationError("reference report is bound to instance " + reference.instance_hash +
                            ", not " + report.instance_hash);
    }
    if (reference.cost.total_eur > 0) {
      report.gap_vs_reference_pct =
          (report.cost.total_eur - reference.cost.total_eur) / reference.cost.total_eur * 100.0;
    }
  }
  if (!options.out.empty()) save_report(report, resolve_out(options.out));
  if (!options.quiet) {
    print_cost(options.policy, report.cost);
    if (report.gap_vs_reference_pct) {
      std::printf("gap vs reference: %.4f%%\n", *report.gap_vs_reference_pct);
    }
  }
  return report;
}

CompareResult cmd_compare(const CompareOptions& options) {
  if (options.policies.size() + (options.baseline_report ? 1 : 0) < 2) {
    throw ValidationError("compare needs at least two policies");
  }
  Instance instance = load_instance(options.instance_path);
  std::string hash = hash_file(options.instance_path);

  CompareResult result;
  for (const std::string& policy : options.policies) {
    CompareRow row;
    row.policy = policy;
    try {
      row.report = solve_policy(instance, policy, options.threads);
      row.report.instance_path = options.instance_path.string();
      row.report.instance_hash = hash;
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    result.rows.push_back(std::move(row));
  }
  if (options.baseline_report) {
    CompareRow row;
    row.policy = "report:" + options.baseline_report->string();
    row.report = load_report(*options.baseline_report);
    if (row.report.instance_hash != hash) {
      throw ValidationError("baseline report is bound to instance " + row.report.instance_hash +
                            ", not " + hash);
    }
    row.ok = true;
    result.rows.push_back(std::move(row));
  }

  double best = std::numeric_limits<double>::infinity();
  for (const auto& row : result.rows) {
    if (row.ok) best = std::min(best, row.report.cost.total_eur);
  }
  for (auto& row : result.rows) {
    if (row.ok && best > 0) {
      row.gap_vs_best_pct = (row.report.cost.total_eur - best) / best * 100.0;
    }
  }

  std::ostringstream csv;
  csv << "policy,status,total_eur,energy_eur,waiting_eur,tardiness_eur,solve_seconds,"
         "inner_evaluations,repair_iterations,gap_vs_best_pct\n";
  nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
  for (const auto& row : result.rows) {
    const auto& c = row.report.cost;
    if (row.ok) {
      csv << row.policy << ",ok," << fmt(c.total_eur) << ',' << fmt(c.energy_eur) << ','
          << fmt(c.waiting_eur) << ',' << fmt(c.tardiness_eur) << ','
          << fmt(row.report.solve_seconds) << ',' << fmt(row.report.inner_evaluations) << ','
          << row.report.repair_iterations << ','
          << (row.gap_vs_best_pct ? fmt(*row.gap_vs_best_pct) : "") << '\n';
    } else {
      csv << row.policy << ",error,,,,,,,,\n";
    }
    nlohmann::ordered_json rj;
    rj["policy"] = row.policy;
    rj["status"] = row.ok ? "ok" : "error";
    if (row.ok) {
      rj["total_eur"] = c.total_eur;
      rj["energy_eur"] = c.energy_eur;
      rj["waiting_eur"] = c.waiting_eur;
      rj["tardiness_eur"] = c.tardiness_eur;
      rj["solve_seconds"] = row.report.solve_seconds;
      rj["inner_evaluations"] = row.report.inner_evaluations;
      rj["repair_iterations"] = row.report.repair_iterations;
      if (row.gap_vs_best_pct) rj["gap_vs_best_pct"] = *row.gap_vs_best_pct;
    } else {
      rj["error"] = row.error;
    }
    rows_json.push_back(std::move(rj));
  }

  result.csv_path = resolve_out(options.out_prefix + ".csv");
  result.json_path = resolve_out(options.out_prefix + ".json");
  if (result.csv_path.has_parent_path()) {
    std::filesystem::create_directories(result.csv_path.parent_path());
  }
  std::ofstream(result.csv_path) << csv.str();
  nlohmann::ordered_json out;
  out["format"] = "fleetcharge-compare/1";
  out["instance"] = {{"path", options.instance_path.string()}, {"hash", hash}};
  out["rows"] = std::move(rows_json);
  std::ofstream(result.json_path) << out.dump(2) << "\n";

  if (!options.quiet) {
    for (const auto& row : result.rows) {
      if (row.ok) {
        print_cost(row.policy, row.report.cost);
      } else {
        std::printf("%s: error: %s\n", row.policy.c_str(), row.error.c_str());
      }
    }
  }
  return result;
}

std::filesystem::path cmd_gantt(const GanttOptions& options) {
  RunReport report = load_report(options.report_path);

  std::filesystem::path instance_path =
      options.instance_override ? *options.instance_override
                                : std::filesystem::path(report.instance_path);
  if (!std::filesystem::exists(instance_path) && options.report_path.has_parent_path()) {
    instance_path = options.report_path.parent_path() / report.instance_path;
  }
  Instance instance = load_instance(instance_path);
  if (hash_file(instance_path) != report.instance_hash) {
    throw ValidationError("instance " + instance_path.string() + " does not match the report hash " +
                          report.instance_hash);
  }

  std::vector<double> aggregate = aggregate_power_kw(instance, report.schedule);
  std::ostringstream csv;
  csv << "truck,port,slot,power_kw,price_eur_per_kwh,aggregate_kw\n";
  for (const auto& ts : report.schedule.trucks) {
    for (const auto& sp : ts.profile) {
      if (sp.power_kw <= 0) continue;
      csv << ts.truck_id << ',' << (ts.port + 1) << ',' << sp.slot << ',' << fmt(sp.power_kw) << ','
          << fmt(price_at(instance.tariff, instance.timeline.slot_start_min(sp.slot))) << ','
          << fmt(aggregate[static_cast<size_t>(sp.slot)]) << '\n';
    }
  }
  std::filesystem::path out = resolve_out(options.out);
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  std::ofstream(out) << csv.str();
  return out;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"fleet charging schedule optimizer"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "write a seeded problem instance");
  generate->add_option("--preset", gen.preset, "small|large")->capture_default_str();
  generate->add_option("--n", gen.n, "fleet size")->capture_default_str();
  generate->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  generate->add_option("--slot-minutes", gen.slot_minutes, "slot length override");
  generate->add_option("--horizon-slots", gen.horizon_slots, "horizon override");
  generate->add_option("--ports", gen.ports, "port count override");
  generate->add_option("--station-cap", gen.station_cap_kw, "station cap override, kW");
  generate->add_option("--slack", gen.slack, "deadline slack override");
  generate->add_option("--arrival-start", gen.arrival_start_min, "arrival window start, min");
  generate->add_option("--arrival-end", gen.arrival_end_min, "arrival window end, min");
  generate->add_option("-o,--out", gen.out, "output path")->capture_default_str();

  SolveOptions solve;
  std::string reference_path;
  auto* solve_cmd = app.add_subcommand("solve", "schedule one instance under one policy");
  solve_cmd->add_option("instance", solve.instance_path, "instance file")->required();
  solve_cmd->add_option("--policy", solve.policy, "fcfs|edf|scdf|rollout:<base>|exact")
      ->capture_default_str();
  solve_cmd->add_option("-o,--out", solve.out, "report output path");
  solve_cmd->add_option("--reference", reference_path, "earlier report to gap against");
  solve_cmd->add_option("-j,--threads", solve.threads, "worker threads (0: all cores)");

  CompareOptions compare;
  std::string baseline_path;
  auto* compare_cmd = app.add_subcommand("compare", "run several policies and tabulate");
  compare_cmd->add_option("instance", compare.instance_path, "instance file")->required();
  compare_cmd->add_option("--policy", compare.policies, "policy (repeatable)")
      ->required()
      ->take_all();
  compare_cmd->add_option("-o,--out", compare.out_prefix, "output prefix")->capture_default_str();
  compare_cmd->add_option("--baseline-report", baseline_path, "merge an existing report row");
  compare_cmd->add_option("-j,--threads", compare.threads, "worker threads (0: all cores)");

  GanttOptions gantt;
  std::string instance_override;
  auto* gantt_cmd = app.add_subcommand("gantt", "slot-level occupancy CSV from a report");
  gantt_cmd->add_option("report", gantt.report_path, "report file")->required();
  gantt_cmd->add_option("-o,--out", gantt.out, "output CSV path")->capture_default_str();
  gantt_cmd->add_option("--instance", instance_override, "instance file override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (generate->parsed()) {
      cmd_generate(gen);
    } else if (solve_cmd->parsed()) {
      if (!reference_path.empty()) solve.reference = reference_path;
      cmd_solve(solve);
    } else if (compare_cmd->parsed()) {
      if (!baseline_path.empty()) compare.baseline_report = baseline_path;
      cmd_compare(compare);
    } else if (gantt_cmd->parsed()) {
      if (!instance_override.empty()) gantt.instance_override = instance_override;
      std::filesystem::path out = cmd_gantt(gantt);
      std::printf("%s\n", out.string().c_str());
    }
  } catch (const SizeGuardError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const HorizonExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const InfeasibleDemand& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const InfeasibleInstance& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace fleetcharge::cli
