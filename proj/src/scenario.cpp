#include "fleetcharge/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "fleetcharge/errors.hpp"

namespace fleetcharge {

void ScenarioConfig::validate() const {
  if (n_trucks < 1) throw ValidationError("scenario: n_trucks must be >= 1");
  if (n_ports < 1) throw ValidationError("scenario: n_ports must be >= 1");
  if (port_power_choices_kw.empty()) throw ValidationError("scenario: no port power choices");
  for (double p : port_power_choices_kw) {
    if (p <= 0) throw ValidationError("scenario: port powers must be positive");
  }
  if (station_cap_kw <= 0) throw ValidationError("scenario: station cap must be positive");
  if (slack < 1.0) throw ValidationError("scenario: slack must be >= 1");
  if (!(soc_min >= 0.0 && soc_max <= 1.0 && soc_min < soc_max)) {
    throw ValidationError("scenario: SoC range must be a nonempty subrange of [0, 1]");
  }
  if (arrival_end_min < arrival_start_min) throw ValidationError("scenario: empty arrival window");
  if (slot_minutes < 1 || horizon_slots < 1) throw ValidationError("scenario: bad timeline");
  if (truck_power_cap_kw <= 0) throw ValidationError("scenario: truck power cap must be positive");
  if (battery_capacity_kwh <= 0) throw ValidationError("scenario: battery capacity must be positive");
}

Tariff default_tariff() {
  return Tariff{{
      {0.0, 0.101},     // off-peak
      {360.0, 0.174},   // morning peak 06:00
      {540.0, 0.128},   // mid-peak 09:00
      {720.0, 0.110},   // daytime off-peak 12:00
      {1020.0, 0.202},  // evening peak 17:00
      {1260.0, 0.101},  // off-peak 21:00
  }};
}

ScenarioConfig small_preset(int n_trucks, uint64_t seed) {
  ScenarioConfig c;
  c.n_trucks = n_trucks;
  c.n_ports = 3;
  c.station_cap_kw = 1000.0;
  c.slack = 1.5;
  c.arrival_start_min = 480.0;
  c.arrival_end_min = 510.0;
  c.rng_seed = seed;
  c.slot_minutes = 5;
  c.horizon_slots = 288;
  return c;
}

ScenarioConfig large_preset(int n_trucks, uint64_t seed) {
  ScenarioConfig c;
  c.n_trucks = n_trucks;
  c.n_ports = 10;
  c.station_cap_kw = 3350.0;
  c.slack = 2.0;
  c.arrival_start_min = 360.0;
  c.arrival_end_min = 720.0;
  c.rng_seed = seed;
  c.slot_minutes = 5;
  c.horizon_slots = 432;
  return c;
}

Instance generate_instance(const ScenarioConfig& config) {
  config.validate();
  SplitMix64 rng(config.rng_seed);

  Instance instance;
  instance.timeline = Timeline{config.origin_min, config.slot_minutes, config.horizon_slots};

  instance.station.station_cap_kw = config.station_cap_kw;
  instance.station.port_powers_kw.reserve(static_cast<size_t>(config.n_ports));
  for (int c = 0; c < config.n_ports; ++c) {
    uint64_t pick = rng.next_below(config.port_power_choices_kw.size());
    instance.station.port_powers_kw.push_back(config.port_power_choices_kw[pick]);
  }

  const long long capacity_wh = to_wh(config.battery_capacity_kwh);
  instance.trucks.reserve(static_cast<size_t>(config.n_trucks));
  for (int id = 1; id <= config.n_trucks; ++id) {
    double soc = config.soc_min + rng.next_double() * (config.soc_max - config.soc_min);
    double u_arrival = rng.next_double();

    long long initial_wh = std::llround(static_cast<double>(capacity_wh) * soc);
    long long demand_wh = capacity_wh - initial_wh;

    double window = config.arrival_end_min - config.arrival_start_min;
    double arrival = config.arrival_start_min + std::floor(u_arrival * (window + 1.0));
    arrival = std::min(arrival, config.arrival_end_min);

    TruckSpec t;
    t.id = id;
    t.arrival_min = arrival;
    t.initial_energy_kwh = static_cast<double>(initial_wh) / 1000.0;
    t.demand_kwh = static_cast<double>(demand_wh) / 1000.0;
    t.capacity_kwh = static_cast<double>(capacity_wh) / 1000.0;
    t.power_cap_kw = config.truck_power_cap_kw;
    t.deadline_min = arrival + config.slack * t.demand_kwh * 60.0 / t.power_cap_kw;
    t.waiting_rate_eur_min = config.waiting_rate_eur_min;
    t.tardiness_rate_eur_min = config.tardiness_rate_eur_min;
    instance.trucks.push_back(t);
  }

  double horizon_end = instance.timeline.horizon_end_min();
  int days = static_cast<int>(std::ceil(horizon_end / 1440.0));
  instance.tariff = default_tariff().tiled_daily(std::max(days, 1));

  instance.validate();
  return instance;
}

}  // namespace fleetcharge
