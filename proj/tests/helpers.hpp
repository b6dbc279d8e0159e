#pragma once

#include <vector>

#include "fleetcharge/model.hpp"
#include "fleetcharge/scenario.hpp"

namespace fleetcharge::testing {

/// One truck, one port, flat tariff. Deadline defaults far away.
inline Instance single_truck_flat(double price, double demand_kwh, double cap_kw,
                                  int slot_minutes = 5, int num_slots = 48, double arrival = 0.0,
                                  double waiting_rate = 0.0, double tardiness_rate = 0.0,
                                  double deadline = 1e6) {
  Instance inst;
  inst.timeline = Timeline{0.0, slot_minutes, num_slots};
  inst.station = StationSpec{{cap_kw}, cap_kw};
  inst.tariff = Tariff{{{0.0, price}}};
  TruckSpec t;
  t.id = 1;
  t.arrival_min = arrival;
  t.initial_energy_kwh = 0.0;
  t.demand_kwh = demand_kwh;
  t.capacity_kwh = demand_kwh;
  t.deadline_min = deadline;
  t.power_cap_kw = cap_kw;
  t.waiting_rate_eur_min = waiting_rate;
  t.tardiness_rate_eur_min = tardiness_rate;
  inst.trucks = {t};
  return inst;
}

/// Micro instances for certifying the inner solver against its oracle:
/// 60-minute slots over 12 hours, truck cap 100 kW, port powers at or above
/// it, slack exactly 1 so any deferred energy is tardy. Even indexes get a
/// station cap equal to the sum of port powers (it can never bind); odd
/// indexes get 130 kW, which two concurrent trucks exceed.
inline ScenarioConfig micro_config(int index) {
  SplitMix64 pick(0x5eedULL + static_cast<uint64_t>(index));
  ScenarioConfig c;
  c.n_trucks = 1 + static_cast<int>(pick.next_below(3));
  c.n_ports = 1 + static_cast<int>(pick.next_below(2));
  c.port_power_choices_kw = {120.0, 150.0};
  c.truck_power_cap_kw = 100.0;
  c.battery_capacity_kwh = 240.0;
  c.soc_min = 0.2;
  c.soc_max = 0.8;
  c.slack = 1.0;
  c.waiting_rate_eur_min = 2.0;
  c.tardiness_rate_eur_min = 10.0;
  c.arrival_start_min = 0.0;
  c.arrival_end_min = 240.0;
  c.slot_minutes = 60;
  c.horizon_slots = 12;
  c.station_cap_kw = (index % 2 == 0) ? 300.0 : 130.0;
  c.rng_seed = 0xabcdULL + static_cast<uint64_t>(index);
  return c;
}

inline double max_aggregate_kw(const Instance& instance, const Schedule& schedule) {
  double best = 0.0;
  for (double v : aggregate_power_kw(instance, schedule)) best = std::max(best, v);
  return best;
}

}  // namespace fleetcharge::testing
