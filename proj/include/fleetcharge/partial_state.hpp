#pragma once

#include <vector>

#include "fleetcharge/model.hpp"

namespace fleetcharge {

/// A partially constructed ordering: the per-port prefix sequences built so
/// far. The stage equals the number of assigned trucks.
struct PartialState {
  std::vector<std::vector<int>> per_port;

  static PartialState empty(int n_ports) {
    return PartialState{std::vector<std::vector<int>>(static_cast<size_t>(n_ports))};
  }

  int num_ports() const { return static_cast<int>(per_port.size()); }
  int stage() const;
  bool contains(int truck_id) const;
  /// Ascending ids of trucks not yet assigned, out of 1..n_trucks.
  std::vector<int> unassigned(int n_trucks) const;
  /// Throws ValidationError on duplicates or out-of-range ids.
  void validate(int n_trucks) const;

  bool operator==(const PartialState&) const = default;
};

/// Assign one unassigned truck to one port.
struct Action {
  int truck_id = 0;
  int port = 0;  // 0-based
  bool operator==(const Action&) const = default;
};

/// Appends action.truck_id to the chosen port sequence; everything else is
/// unchanged. Throws on an already-assigned truck or a bad port.
PartialState transition(const PartialState& state, const Action& action);

/// A complete state is a valid Ordering.
Ordering to_ordering(const PartialState& state);

}  // namespace fleetcharge
