#include "fleetcharge/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fleetcharge/errors.hpp"

namespace fleetcharge {

using nlohmann::json;

namespace {

double minutes_from_json(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_minutes(j.get<std::string>());
  throw ValidationError("field '" + field + "' must be minutes or \"HH:MM\"");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << text;
}

}  // namespace

double parse_minutes(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    try {
      size_t used = 0;
      double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      throw ValidationError("cannot parse time '" + text + "'");
    }
  }
  try {
    int hours = std::stoi(text.substr(0, colon));
    int mins = std::stoi(text.substr(colon + 1));
    if (mins < 0 || mins >= 60 || hours < 0) throw std::invalid_argument(text);
    return hours * 60.0 + mins;
  } catch (const std::exception&) {
    throw ValidationError("cannot parse time '" + text + "'");
  }
}

std::string instance_to_json(const Instance& instance) {
  json j;
  j["format"] = "fleetcharge/1";
  json trucks = json::array();
  for (const auto& t : instance.trucks) {
    trucks.push_back({
        {"id", t.id},
        {"arrival", t.arrival_min},
        {"initial_energy", t.initial_energy_kwh},
        {"demand", t.demand_kwh},
        {"capacity", t.capacity_kwh},
        {"deadline", t.deadline_min},
        {"power_cap", t.power_cap_kw},
        {"waiting_rate", t.waiting_rate_eur_min},
        {"tardiness_rate", t.tardiness_rate_eur_min},
    });
  }
  j["trucks"] = std::move(trucks);
  j["station"] = {{"port_powers_kw", instance.station.port_powers_kw},
                  {"station_cap_kw", instance.station.station_cap_kw}};
  json tariff = json::array();
  for (const auto& p : instance.tariff.points) {
    tariff.push_back({{"start", p.start_min}, {"price_eur_per_kwh", p.price_eur_per_kwh}});
  }
  j["tariff"] = std::move(tariff);
  j["timeline"] = {{"origin", instance.timeline.origin_min},
                   {"slot_minutes", instance.timeline.slot_minutes},
                   {"num_slots", instance.timeline.num_slots}};
  return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("instance file is not valid JSON: ") + e.what());
  }
  if (!j.contains("format") || j["format"] != "fleetcharge/1") {
    throw ValidationError("instance file missing format \"fleetcharge/1\"");
  }
  Instance instance;
  try {
    for (const auto& tj : j.at("trucks")) {
      TruckSpec t;
      t.id = tj.at("id").get<int>();
      t.arrival_min = minutes_from_json(tj.at("arrival"), "arrival");
      t.initial_energy_kwh = tj.at("initial_energy").get<double>();
      t.demand_kwh = tj.at("demand").get<double>();
      t.capacity_kwh = tj.at("capacity").get<double>();
      t.deadline_min = minutes_from_json(tj.at("deadline"), "deadline");
      t.power_cap_kw = tj.at("power_cap").get<double>();
      t.waiting_rate_eur_min = tj.at("waiting_rate").get<double>();
      t.tardiness_rate_eur_min = tj.at("tardiness_rate").get<double>();
      instance.trucks.push_back(t);
    }
    instance.station.port_powers_kw = j.at("station").at("port_powers_kw").get<std::vector<double>>();
    instance.station.station_cap_kw = j.at("station").at("station_cap_kw").get<double>();
    for (const auto& pj : j.at("tariff")) {
      instance.tariff.points.push_back(
          {minutes_from_json(pj.at("start"), "start"), pj.at("price_eur_per_kwh").get<double>()});
    }
    const auto& tl = j.at("timeline");
    instance.timeline.origin_min = minutes_from_json(tl.at("origin"), "origin");
    instance.timeline.slot_minutes = tl.at("slot_minutes").get<int>();
    instance.timeline.num_slots = tl.at("num_slots").get<int>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed instance file: ") + e.what());
  }
  instance.validate();
  return instance;
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  write_file(path, instance_to_json(instance));
}

Instance load_instance(const std::filesystem::path& path) {
  return instance_from_json(read_file(path));
}

std::string hash_bytes(const std::string& bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string hash_file(const std::filesystem::path& path) { return hash_bytes(read_file(path)); }

std::string report_to_json(const RunReport& report) {
  json j;
  j["format"] = "fleetcharge-report/1";
  j["instance"] = {{"path", report.instance_path}, {"hash", report.instance_hash}};
  j["policy"] = report.policy;
  j["cost"] = {{"energy_eur", report.cost.energy_eur},
               {"waiting_eur", report.cost.waiting_eur},
               {"tardiness_eur", report.cost.tardiness_eur},
               {"total_eur", report.cost.total_eur}};
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"truck", r.truck},
                    {"port", r.port},
                    {"start_min", r.start_min},
                    {"finish_min", r.finish_min},
                    {"duration_min", r.duration_min},
                    {"delivered_kwh", r.delivered_kwh},
                    {"waiting_min", r.waiting_min},
                    {"tardiness_min", r.tardiness_min}});
  }
  j["trucks"] = std::move(rows);
  json profiles = json::array();
  for (const auto& ts : report.schedule.trucks) {
    json entries = json::array();
    for (const auto& sp : ts.profile) {
      entries.push_back({sp.slot, sp.power_kw});
    }
    profiles.push_back({{"truck", ts.truck_id},
                        {"port", ts.port + 1},
                        {"start_min", ts.start_min},
                        {"finish_min", ts.finish_min},
                        {"profile", std::move(entries)}});
  }
  j["profiles"] = std::move(profiles);
  j["ordering"] = report.schedule.ordering.per_port;
  j["timing"] = {{"solve_seconds", report.solve_seconds}};
  j["counters"] = {{"inner_evaluations", report.inner_evaluations},
                   {"repair_iterations", report.repair_iterations}};
  if (report.gap_vs_reference_pct) j["gap_vs_reference_pct"] = *report.gap_vs_reference_pct;
  if (!report.rollout_stages.empty()) {
    json stages = json::array();
    for (const auto& s : report.rollout_stages) {
      stages.push_back({{"stage", s.stage},
                        {"truck", s.truck},
                        {"port", s.port},
                        {"best_cost", s.best_cost},
                        {"candidates", s.candidates}});
    }
    j["rollout"] = {{"stages", std::move(stages)}, {"fell_back_to_base", report.rollout_fell_back}};
  }
  return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("report file is not valid JSON: ") + e.what());
  }
  if (!j.contains("format") || j["format"] != "fleetcharge-report/1") {
    throw ValidationError("report file missing format \"fleetcharge-report/1\"");
  }
  RunReport report;
  try {
    report.instance_path = j.at("instance").at("path").get<std::string>();
    report.instance_hash = j.at("instance").at("hash").get<std::string>();
    report.policy = j.at("policy").get<std::string>();
    report.cost.energy_eur = j.at("cost").at("energy_eur").get<double>();
    report.cost.waiting_eur = j.at("cost").at("waiting_eur").get<double>();
    report.cost.tardiness_eur = j.at("cost").at("tardiness_eur").get<double>();
    report.cost.total_eur = j.at("cost").at("total_eur").get<double>();
    for (const auto& rj : j.at("trucks")) {
      TruckRow r;
      r.truck = rj.at("truck").get<int>();
      r.port = rj.at("port").get<int>();
      r.start_min = rj.at("start_min").get<double>();
      r.finish_min = rj.at("finish_min").get<double>();
      r.duration_min = rj.at("duration_min").get<double>();
      r.delivered_kwh = rj.at("delivered_kwh").get<double>();
      r.waiting_min = rj.at("waiting_min").get<double>();
      r.tardiness_min = rj.at("tardiness_min").get<double>();
      report.rows.push_back(r);
    }
    for (const auto& pj : j.at("profiles")) {
      TruckSchedule ts;
      ts.truck_id = pj.at("truck").get<int>();
      ts.port = pj.at("port").get<int>() - 1;
      ts.start_min = pj.at("start_min").get<double>();
      ts.finish_min = pj.at("finish_min").get<double>();
      for (const auto& e : pj.at("profile")) {
        ts.profile.push_back({e.at(0).get<int>(), e.at(1).get<double>()});
      }
      report.schedule.trucks.push_back(std::move(ts));
    }
    report.schedule.ordering.per_port = j.at("ordering").get<std::vector<std::vector<int>>>();
    report.solve_seconds = j.at("timing").at("solve_seconds").get<double>();
    report.inner_evaluations = j.at("counters").at("inner_evaluations").get<long long>();
    report.repair_iterations = j.at("counters").at("repair_iterations").get<int>();
    if (j.contains("gap_vs_reference_pct")) {
      report.gap_vs_reference_pct = j["gap_vs_reference_pct"].get<double>();
    }
    if (j.contains("rollout")) {
      for (const auto& sj : j["rollout"].at("stages")) {
        RolloutStageRow s;
        s.stage = sj.at("stage").get<int>();
        s.truck = sj.at("truck").get<int>();
        s.port = sj.at("port").get<int>();
        s.best_cost = sj.at("best_cost").get<double>();
        s.candidates = sj.at("candidates").get<int>();
        report.rollout_stages.push_back(s);
      }
      report.rollout_fell_back = j["rollout"].at("fell_back_to_base").get<bool>();
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed report file: ") + e.what());
  }
  return report;
}

void save_report(const RunReport& report, const std::filesystem::path& path) {
  write_file(path, report_to_json(report));
}

RunReport load_report(const std::filesystem::path& path) {
  return report_from_json(read_file(path));
}

}  // namespace fleetcharge
