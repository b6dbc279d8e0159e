#pragma once

#include <cstdint>
#include <vector>

#include "fleetcharge/model.hpp"

namespace fleetcharge {

/// SplitMix64: the usual published constants, chosen so the same seed yields
/// the same instance everywhere.
struct SplitMix64 {
  uint64_t state = 0;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  uint64_t next_below(uint64_t n) { return static_cast<uint64_t>(next_double() * static_cast<double>(n)); }
};

struct ScenarioConfig {
  int n_trucks = 8;
  int n_ports = 3;
  std::vector<double> port_power_choices_kw{300.0, 350.0};
  double station_cap_kw = 1000.0;
  double slack = 1.5;  // deadline = arrival + slack * demand / power_cap
  double arrival_start_min = 480.0;
  double arrival_end_min = 510.0;
  double battery_capacity_kwh = 468.0;
  double truck_power_cap_kw = 350.0;
  double soc_min = 0.20;
  double soc_max = 0.80;
  double waiting_rate_eur_min = 2.0;
  double tardiness_rate_eur_min = 10.0;
  uint64_t rng_seed = 0;
  double origin_min = 0.0;
  int slot_minutes = 5;
  int horizon_slots = 288;

  void validate() const;
};

/// The six-segment day tariff used throughout: 00:00 0.101, 06:00 0.174,
/// 09:00 0.128, 12:00 0.110, 17:00 0.202, 21:00 0.101 EUR/kWh.
Tariff default_tariff();

/// N=4..8 regime: 3 ports, S=1.5, 30-minute arrival window from 08:00,
/// 1000 kW station cap, 24 h of 5-minute slots.
ScenarioConfig small_preset(int n_trucks, uint64_t seed);

/// Large-fleet regime: 10 ports, S=2, arrivals 06:00-12:00, 3350 kW cap,
/// 36 h of 5-minute slots.
ScenarioConfig large_preset(int n_trucks, uint64_t seed);

/// Seeded instance generation. Draw order (one SplitMix64 stream): each
/// port's power choice, then per truck its SoC fraction and arrival minute.
/// Trucks charge to full capacity, so demand = capacity - initial.
Instance generate_instance(const ScenarioConfig& config);

}  // namespace fleetcharge
