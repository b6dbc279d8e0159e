#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fleetcharge {

// Internal unit conventions: times are minutes on one absolute axis, power is
// kW at the API with integer watts inside, and energy is tracked in integer
// watt-minutes (1 Wh = 60 Wmin) so that one slot at power P holds exactly
// P_watts * slot_minutes of it. That keeps demand bookkeeping and slot
// capacities free of rounding residue.

/// Demand-met tolerance for constraint checks, in Wh.
inline constexpr double kDemandToleranceWh = 1.0;
/// Station-cap tolerance for constraint checks, in kW.
inline constexpr double kStationCapToleranceKw = 1e-6;

inline long long to_wh(double kwh) { return std::llround(kwh * 1000.0); }
inline long long to_wmin(double kwh) { return to_wh(kwh) * 60; }
inline double wmin_to_kwh(long long wmin) { return static_cast<double>(wmin) / 60000.0; }
inline long long to_watts(double kw) { return std::llround(kw * 1000.0); }

struct TruckSpec {
  int id = 0;                         // 1-based, contiguous across the fleet
  double arrival_min = 0.0;           // t_i^a
  double initial_energy_kwh = 0.0;    // E_i
  double demand_kwh = 0.0;            // required charge
  double capacity_kwh = 0.0;          // battery capacity
  double deadline_min = 0.0;          // d_i
  double power_cap_kw = 0.0;          // admissible charging power
  double waiting_rate_eur_min = 0.0;  // cost per minute between arrival and start
  double tardiness_rate_eur_min = 0.0;

  long long demand_wmin() const { return to_wmin(demand_kwh); }

  bool operator==(const TruckSpec&) const = default;
};

struct StationSpec {
  std::vector<double> port_powers_kw;  // one entry per port
  double station_cap_kw = 0.0;         // aggregate limit across all ports

  int num_ports() const { return static_cast<int>(port_powers_kw.size()); }

  bool operator==(const StationSpec&) const = default;
};

/// min(truck cap, port power). Ports are 0-based here; reports print 1-based.
double effective_cap(const TruckSpec& truck, int port_index, const StationSpec& station);

struct TariffPoint {
  double start_min = 0.0;
  double price_eur_per_kwh = 0.0;
  bool operator==(const TariffPoint&) const = default;
};

/// Piecewise-constant price. Segments are left-closed right-open; the last
/// one extends to the end of whatever horizon it is used with.
struct Tariff {
  std::vector<TariffPoint> points;

  /// Repeats the (assumed single-day) pattern for `days` days.
  Tariff tiled_daily(int days) const;

  bool operator==(const Tariff&) const = default;
};

double price_at(const Tariff& tariff, double minute);

struct Timeline {
  double origin_min = 0.0;  // absolute minute of slot 0
  int slot_minutes = 5;
  int num_slots = 0;

  double slot_start_min(int slot) const { return origin_min + static_cast<double>(slot) * slot_minutes; }
  double horizon_end_min() const { return slot_start_min(num_slots); }
  /// First slot whose start is at or after `minute`.
  int first_slot_at_or_after(double minute) const {
    return static_cast<int>(std::ceil((minute - origin_min) / slot_minutes - 1e-12));
  }
  /// Slot containing `minute` (left-closed).
  int slot_of(double minute) const {
    return static_cast<int>(std::floor((minute - origin_min) / slot_minutes + 1e-12));
  }

  bool operator==(const Timeline&) const = default;
};

struct Instance {
  std::vector<TruckSpec> trucks;
  StationSpec station;
  Tariff tariff;
  Timeline timeline;

  int num_trucks() const { return static_cast<int>(trucks.size()); }
  const TruckSpec& truck(int id) const { return trucks[static_cast<size_t>(id - 1)]; }

  /// Throws ValidationError listing every broken invariant.
  void validate() const;

  bool operator==(const Instance&) const = default;
};

/// The outer decision: C ordered truck sequences partitioning the fleet.
struct Ordering {
  std::vector<std::vector<int>> per_port;

  int num_ports() const { return static_cast<int>(per_port.size()); }
  int port_of(int truck_id) const;  // -1 if unassigned

  bool operator==(const Ordering&) const = default;
};

/// Throws ValidationError unless the sequences are disjoint and cover 1..N.
void validate_ordering(const Ordering& ordering, int n_trucks);

/// Same-port consecutive pairs (i served before j).
std::vector<std::pair<int, int>> precedence_arcs(const Ordering& ordering);

struct SlotPower {
  int slot = 0;
  double power_kw = 0.0;
  bool operator==(const SlotPower&) const = default;
};

// A truck draws profile power while active: P(t) = profile[slot(t)] for
// t in [start_min, finish_min], zero outside. finish_min may fall inside the
// last profiled slot, in which case that slot is only partially used.
struct TruckSchedule {
  int truck_id = 0;
  int port = 0;              // 0-based
  double start_min = 0.0;    // first instant of active charging
  double finish_min = 0.0;   // instant cumulative energy reaches the demand
  std::vector<SlotPower> profile;  // ascending slots, positive power only

  bool operator==(const TruckSchedule&) const = default;
};

double delivered_kwh(const TruckSchedule& ts, const Timeline& timeline);

struct Schedule {
  std::vector<TruckSchedule> trucks;  // ascending truck id
  Ordering ordering;                  // the ordering this schedule realizes

  const TruckSchedule& truck(int id) const { return trucks[static_cast<size_t>(id - 1)]; }
  bool operator==(const Schedule&) const = default;
};

struct CostBreakdown {
  double energy_eur = 0.0;
  double waiting_eur = 0.0;
  double tardiness_eur = 0.0;
  double total_eur = 0.0;
  bool operator==(const CostBreakdown&) const = default;
};

/// Objective evaluation. Energy is accumulated per tariff segment in integer
/// watt-minutes, so a flat tariff prices a truck at exactly price * demand.
CostBreakdown evaluate_cost(const Instance& instance, const Schedule& schedule);

enum class Constraint {
  DemandMet,     // delivered energy equals the demand
  Capacity,      // initial + demand within battery capacity
  PowerBounds,   // 0 <= slot power <= effective cap
  StationCap,    // aggregate slot power within the station cap
  TimeWindow,    // start >= arrival, finish >= start
  Precedence,    // successor starts after predecessor finishes
  ProfileShape,  // structural: slots in range, power inside [start, finish]
};

std::string constraint_name(Constraint c);

struct Violation {
  Constraint constraint = Constraint::ProfileShape;
  std::vector<int> trucks;
  double magnitude = 0.0;
  std::string detail;
};

/// Empty result iff the schedule satisfies every scheduling constraint.
/// Violations are data, not errors.
std::vector<Violation> validate_schedule(const Instance& instance, const Schedule& schedule);

/// Total charging power per slot, length num_slots.
std::vector<double> aggregate_power_kw(const Instance& instance, const Schedule& schedule);

}  // namespace fleetcharge
