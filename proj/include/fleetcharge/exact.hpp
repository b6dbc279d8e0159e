#pragma once

#include <functional>

#include "fleetcharge/inner_solver.hpp"
#include "fleetcharge/model.hpp"

namespace fleetcharge {

/// |Omega| = N! * C(N+C-1, C-1): every port assignment combined with every
/// within-port permutation.
long long ordering_count(int n_trucks, int n_ports);

/// Visits every ordering exactly once, in a fixed order: assignment vectors
/// lexicographically (truck 1's port most significant), then per-port
/// permutations odometer-style with the last port advancing fastest. The
/// visitor returns false to stop early. Guarded by SizeGuardError.
void enumerate_orderings(int n_trucks, int n_ports,
                         const std::function<bool(const Ordering&)>& visit,
                         int guard_limit = 8);

struct ExactConfig {
  InnerConfig inner;
  int guard_limit = 8;           // largest N the oracle accepts
  bool symmetry_pruning = false; // skip port-relabelings when all ports are equal
  int threads = 0;               // 0: hardware concurrency
};

struct ExactResult {
  Ordering ordering;
  InnerSolution solution;
  long long evaluated = 0;  // orderings actually scored
};

/// Exhaustive outer-layer optimum: scores every enumerated ordering with
/// inner_solve and keeps the minimum (ties: first in enumeration order).
ExactResult exact_solve(const Instance& instance, const ExactConfig& config = {});

}  // namespace fleetcharge
