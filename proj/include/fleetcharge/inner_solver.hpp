#pragma once

#include "fleetcharge/model.hpp"

namespace fleetcharge {

struct InnerStats {
  long long dp_states = 0;          // timing-DP states expanded
  long long flow_augmentations = 0; // augmenting paths across all flow solves
  int flow_solves = 0;
  int repair_iterations = 0;
};

struct InnerSolution {
  Schedule schedule;
  CostBreakdown cost;  // always evaluate_cost(instance, schedule)
  InnerStats stats;
};

struct InnerConfig {
  /// How many future tariff segments the timing DP considers as delayed
  /// start candidates beyond the earliest feasible slot.
  int lookahead_breakpoints = 3;
};

/// Schedule optimization for a fixed ordering: per-port timing DP over
/// candidate start slots, exact min-cost power allocation inside the chosen
/// windows, and a repair loop that widens windows when the station cap
/// leaves demand unmet. Deterministic for fixed inputs.
///
/// Throws HorizonExceeded when a window cannot fit before the last slot and
/// InfeasibleDemand when the station cap cannot deliver the fleet demand
/// within the horizon at all.
InnerSolution inner_solve(const Instance& instance, const Ordering& ordering,
                          const InnerConfig& config = {});

/// Exact optimum of the discretized problem restricted to slot-aligned
/// contiguous windows: enumerates every precedence-consistent combination of
/// per-truck windows and allocates each with the same min-cost flow.
/// Guarded to N <= 4 and num_slots <= 16 (SizeGuardError otherwise).
InnerSolution inner_bruteforce(const Instance& instance, const Ordering& ordering);

}  // namespace fleetcharge
