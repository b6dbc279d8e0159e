#include "fleetcharge/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fleetcharge/errors.hpp"

namespace fleetcharge {

double effective_cap(const TruckSpec& truck, int port_index, const StationSpec& station) {
  if (port_index < 0 || port_index >= station.num_ports()) {
    throw std::out_of_range("port index " + std::to_string(port_index) + " out of range (ports: " +
                            std::to_string(station.num_ports()) + ")");
  }
  return std::min(truck.power_cap_kw, station.port_powers_kw[static_cast<size_t>(port_index)]);
}

Tariff Tariff::tiled_daily(int days) const {
  Tariff out;
  out.points.reserve(points.size() * static_cast<size_t>(days));
  for (int d = 0; d < days; ++d) {
    for (const auto& p : points) {
      out.points.push_back({p.start_min + 1440.0 * d, p.price_eur_per_kwh});
    }
  }
  return out;
}

double price_at(const Tariff& tariff, double minute) {
  if (tariff.points.empty() || minute < tariff.points.front().start_min) {
    throw ValidationError("price_at: minute " + std::to_string(minute) +
                          " precedes tariff coverage");
  }
  // Last point with start <= minute; segments are left-closed right-open.
  auto it = std::upper_bound(tariff.points.begin(), tariff.points.end(), minute,
                             [](double m, const TariffPoint& p) { return m < p.start_min; });
  return std::prev(it)->price_eur_per_kwh;
}

namespace {

void check_tariff(const Tariff& tariff, const Timeline& timeline, std::ostringstream& problems) {
  if (tariff.points.empty()) {
    problems << "tariff: no breakpoints; ";
    return;
  }
  for (size_t i = 0; i < tariff.points.size(); ++i) {
    if (tariff.points[i].price_eur_per_kwh < 0) {
      problems << "tariff: negative price at breakpoint " << i << "; ";
    }
    if (i > 0 && tariff.points[i].start_min <= tariff.points[i - 1].start_min) {
      problems << "tariff: breakpoints not strictly ascending at " << i << "; ";
    }
  }
  if (tariff.points.front().start_min > timeline.origin_min) {
    problems << "tariff: first breakpoint after horizon start; ";
  }
  for (const auto& p : tariff.points) {
    if (p.start_min <= timeline.origin_min || p.start_min >= timeline.horizon_end_min()) continue;
    double offset = p.start_min - timeline.origin_min;
    if (std::fmod(offset, static_cast<double>(timeline.slot_minutes)) != 0.0) {
      problems << "tariff: breakpoint at minute " << p.start_min << " not on a slot boundary; ";
    }
  }
}

}  // namespace

void Instance::validate() const {
  std::ostringstream problems;
  if (timeline.slot_minutes < 1) problems << "timeline: slot_minutes must be >= 1; ";
  if (timeline.num_slots < 1) problems << "timeline: num_slots must be >= 1; ";
  if (station.num_ports() < 1) problems << "station: needs at least one port; ";
  for (int c = 0; c < station.num_ports(); ++c) {
    if (station.port_powers_kw[static_cast<size_t>(c)] <= 0) {
      problems << "station: port " << (c + 1) << " power must be positive; ";
    }
  }
  if (station.station_cap_kw <= 0) problems << "station: station_cap_kw must be positive; ";

  std::set<int> ids;
  for (const auto& t : trucks) {
    ids.insert(t.id);
    if (t.demand_kwh <= 0) problems << "truck " << t.id << ": demand must be positive; ";
    if (t.initial_energy_kwh < 0) problems << "truck " << t.id << ": negative initial energy; ";
    if (t.initial_energy_kwh + t.demand_kwh > t.capacity_kwh + 1e-9) {
      problems << "truck " << t.id << ": initial + demand exceeds capacity; ";
    }
    if (t.power_cap_kw <= 0) problems << "truck " << t.id << ": power cap must be positive; ";
    if (t.waiting_rate_eur_min < 0) problems << "truck " << t.id << ": negative waiting rate; ";
    if (t.tardiness_rate_eur_min < 0) problems << "truck " << t.id << ": negative tardiness rate; ";
    if (t.deadline_min < t.arrival_min) problems << "truck " << t.id << ": deadline before arrival; ";
    if (t.arrival_min < timeline.origin_min || t.arrival_min >= timeline.horizon_end_min()) {
      problems << "truck " << t.id << ": arrival outside the timeline; ";
    }
  }
  bool contiguous = ids.size() == trucks.size() &&
                    (trucks.empty() || (*ids.begin() == 1 && *ids.rbegin() == num_trucks()));
  if (!contiguous) problems << "trucks: ids must be unique and contiguous from 1; ";

  check_tariff(tariff, timeline, problems);

  std::string report = problems.str();
  if (!report.empty()) throw ValidationError("invalid instance: " + report);
}

int Ordering::port_of(int truck_id) const {
  for (int c = 0; c < num_ports(); ++c) {
    for (int id : per_port[static_cast<size_t>(c)]) {
      if (id == truck_id) return c;
    }
  }
  return -1;
}

void validate_ordering(const Ordering& ordering, int n_trucks) {
  std::set<int> seen;
  int total = 0;
  for (const auto& seq : ordering.per_port) {
    for (int id : seq) {
      ++total;
      if (!seen.insert(id).second) {
        throw ValidationError("ordering: truck " + std::to_string(id) + " appears twice");
      }
      if (id < 1 || id > n_trucks) {
        throw ValidationError("ordering: truck id " + std::to_string(id) + " out of range");
      }
    }
  }
  if (total != n_trucks) {
    throw ValidationError("ordering: covers " + std::to_string(total) + " of " +
                          std::to_string(n_trucks) + " trucks");
  }
}

std::vector<std::pair<int, int>> precedence_arcs(const Ordering& ordering) {
  std::vector<std::pair<int, int>> arcs;
  for (const auto& seq : ordering.per_port) {
    for (size_t i = 0; i + 1 < seq.size(); ++i) {
      arcs.emplace_back(seq[i], seq[i + 1]);
    }
  }
  return arcs;
}

namespace {

// Energy of one profile entry in watt-minutes: slot power times the overlap
// of the slot with the truck's active interval [start, finish]. Only the
// final slot can be partially covered.
long long slot_wmin(const TruckSchedule& ts, const SlotPower& sp, const Timeline& tl) {
  double lo = std::max(tl.slot_start_min(sp.slot), ts.start_min);
  double hi = std::min(tl.slot_start_min(sp.slot + 1), ts.finish_min);
  double active = std::max(hi - lo, 0.0);
  return std::llround(sp.power_kw * 1000.0 * active);
}

long long delivered_wmin(const TruckSchedule& ts, const Timeline& tl) {
  long long total = 0;
  for (const auto& sp : ts.profile) total += slot_wmin(ts, sp, tl);
  return total;
}

}  // namespace

double delivered_kwh(const TruckSchedule& ts, const Timeline& timeline) {
  return wmin_to_kwh(delivered_wmin(ts, timeline));
}

std::string constraint_name(Constraint c) {
  switch (c) {
    case Constraint::DemandMet: return "demand-met";
    case Constraint::Capacity: return "battery-capacity";
    case Constraint::PowerBounds: return "power-bounds";
    case Constraint::StationCap: return "station-cap";
    case Constraint::TimeWindow: return "time-window";
    case Constraint::Precedence: return "precedence";
    case Constraint::ProfileShape: return "profile-shape";
  }
  return "unknown";
}

CostBreakdown evaluate_cost(const Instance& instance, const Schedule& schedule) {
  const Timeline& tl = instance.timeline;
  CostBreakdown out;
  for (const auto& ts : schedule.trucks) {
    const TruckSpec& spec = instance.truck(ts.truck_id);
    double energy = 0.0;
    // Group the profile by tariff segment; one multiply per segment keeps a
    // flat tariff exactly at price * demand.
    size_t i = 0;
    while (i < ts.profile.size()) {
      double seg_price = price_at(instance.tariff, tl.slot_start_min(ts.profile[i].slot));
      long long seg_wmin = 0;
      size_t j = i;
      while (j < ts.profile.size()) {
        double p = price_at(instance.tariff, tl.slot_start_min(ts.profile[j].slot));
        if (p != seg_price) break;
        seg_wmin += slot_wmin(ts, ts.profile[j], tl);
        ++j;
      }
      energy += seg_price * wmin_to_kwh(seg_wmin);
      i = j;
    }
    out.energy_eur += energy;
    out.waiting_eur += spec.waiting_rate_eur_min * (ts.start_min - spec.arrival_min);
    out.tardiness_eur += spec.tardiness_rate_eur_min * std::max(ts.finish_min - spec.deadline_min, 0.0);
  }
  out.total_eur = out.energy_eur + out.waiting_eur + out.tardiness_eur;
  return out;
}

std::vector<Violation> validate_schedule(const Instance& instance, const Schedule& schedule) {
  std::vector<Violation> out;
  const Timeline& tl = instance.timeline;
  const int n = instance.num_trucks();

  if (static_cast<int>(schedule.trucks.size()) != n) {
    out.push_back({Constraint::ProfileShape, {}, 0.0,
                   "schedule covers " + std::to_string(schedule.trucks.size()) + " of " +
                       std::to_string(n) + " trucks"});
    return out;
  }
  try {
    validate_ordering(schedule.ordering, n);
  } catch (const ValidationError& e) {
    out.push_back({Constraint::ProfileShape, {}, 0.0, e.what()});
    return out;
  }

  std::vector<double> aggregate(static_cast<size_t>(tl.num_slots), 0.0);

  for (int id = 1; id <= n; ++id) {
    const TruckSchedule& ts = schedule.trucks[static_cast<size_t>(id - 1)];
    const TruckSpec& spec = instance.truck(id);
    if (ts.truck_id != id) {
      out.push_back({Constraint::ProfileShape, {id}, 0.0, "schedule rows not in truck-id order"});
      continue;
    }
    int port = schedule.ordering.port_of(id);
    if (port != ts.port) {
      out.push_back({Constraint::ProfileShape, {id}, 0.0,
                     "truck " + std::to_string(id) + " port disagrees with the ordering"});
    }
    double cap = (port >= 0) ? effective_cap(spec, port, instance.station) : spec.power_cap_kw;

    // (9b) demand met within the Wh tolerance
    long long got = delivered_wmin(ts, tl);
    double short_wh = static_cast<double>(spec.demand_wmin() - got) / 60.0;
    if (std::abs(short_wh) > kDemandToleranceWh) {
      out.push_back({Constraint::DemandMet, {id}, short_wh,
                     "truck " + std::to_string(id) + " delivered energy off by " +
                         std::to_string(short_wh) + " Wh"});
    }
    // (9c)
    if (spec.initial_energy_kwh + spec.demand_kwh > spec.capacity_kwh + 1e-9) {
      out.push_back({Constraint::Capacity, {id},
                     spec.initial_energy_kwh + spec.demand_kwh - spec.capacity_kwh,
                     "truck " + std::to_string(id) + " would exceed battery capacity"});
    }
    // (9d) + structural shape
    int prev_slot = -1;
    for (const auto& sp : ts.profile) {
      if (sp.slot < 0 || sp.slot >= tl.num_slots) {
        out.push_back({Constraint::ProfileShape, {id}, static_cast<double>(sp.slot),
                       "truck " + std::to_string(id) + " uses slot outside the timeline"});
        continue;
      }
      if (sp.slot <= prev_slot) {
        out.push_back({Constraint::ProfileShape, {id}, 0.0,
                       "truck " + std::to_string(id) + " profile slots not strictly ascending"});
      }
      prev_slot = sp.slot;
      if (sp.power_kw < -kStationCapToleranceKw || sp.power_kw > cap + kStationCapToleranceKw) {
        out.push_back({Constraint::PowerBounds, {id},
                       sp.power_kw > cap ? sp.power_kw - cap : sp.power_kw,
                       "truck " + std::to_string(id) + " power " + std::to_string(sp.power_kw) +
                           " kW outside [0, " + std::to_string(cap) + "] in slot " +
                           std::to_string(sp.slot)});
      }
      aggregate[static_cast<size_t>(sp.slot)] += sp.power_kw;
      if (sp.power_kw > 0.0) {
        double slot_lo = tl.slot_start_min(sp.slot);
        double slot_hi = tl.slot_start_min(sp.slot + 1);
        if (slot_hi <= ts.start_min || slot_lo >= ts.finish_min) {
          out.push_back({Constraint::ProfileShape, {id}, sp.power_kw,
                         "truck " + std::to_string(id) + " has power outside [start, finish] in slot " +
                             std::to_string(sp.slot)});
        }
      }
    }
    // (9f)
    if (ts.start_min < spec.arrival_min - 1e-9) {
      out.push_back({Constraint::TimeWindow, {id}, spec.arrival_min - ts.start_min,
                     "truck " + std::to_string(id) + " starts before its arrival"});
    }
    if (ts.finish_min < ts.start_min - 1e-9) {
      out.push_back({Constraint::TimeWindow, {id}, ts.start_min - ts.finish_min,
                     "truck " + std::to_string(id) + " finishes before it starts"});
    }
  }

  // (9e) aggregate power per slot
  for (int s = 0; s < tl.num_slots; ++s) {
    double total = aggregate[static_cast<size_t>(s)];
    if (total > instance.station.station_cap_kw + kStationCapToleranceKw) {
      out.push_back({Constraint::StationCap, {}, total - instance.station.station_cap_kw,
                     "aggregate power " + std::to_string(total) + " kW exceeds the station cap in slot " +
                         std::to_string(s)});
    }
  }

  // (9g) precedence arcs derived from the ordering
  for (const auto& [i, j] : precedence_arcs(schedule.ordering)) {
    const TruckSchedule& a = schedule.trucks[static_cast<size_t>(i - 1)];
    const TruckSchedule& b = schedule.trucks[static_cast<size_t>(j - 1)];
    if (b.start_min < a.finish_min - 1e-9) {
      out.push_back({Constraint::Precedence, {i, j}, a.finish_min - b.start_min,
                     "truck " + std::to_string(j) + " starts " +
                         std::to_string(a.finish_min - b.start_min) + " min before truck " +
                         std::to_string(i) + " finishes on the same port"});
    }
  }
  return out;
}

std::vector<double> aggregate_power_kw(const Instance& instance, const Schedule& schedule) {
  std::vector<double> agg(static_cast<size_t>(instance.timeline.num_slots), 0.0);
  for (const auto& ts : schedule.trucks) {
    for (const auto& sp : ts.profile) {
      if (sp.slot >= 0 && sp.slot < instance.timeline.num_slots) {
        agg[static_cast<size_t>(sp.slot)] += sp.power_kw;
      }
    }
  }
  return agg;
}

}  // namespace fleetcharge
