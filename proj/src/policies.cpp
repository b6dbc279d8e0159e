#include "fleetcharge/policies.hpp"

#include <algorithm>

#include "fleetcharge/errors.hpp"

namespace fleetcharge {

double policy_key(const TruckSpec& truck, PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Fcfs: return truck.arrival_min;
    case PolicyKind::Edf: return truck.deadline_min;
    case PolicyKind::Scdf: return truck.demand_kwh;
  }
  return truck.arrival_min;
}

std::string policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Fcfs: return "fcfs";
    case PolicyKind::Edf: return "edf";
    case PolicyKind::Scdf: return "scdf";
  }
  return "fcfs";
}

PolicyKind parse_policy_kind(const std::string& name) {
  if (name == "fcfs") return PolicyKind::Fcfs;
  if (name == "edf") return PolicyKind::Edf;
  if (name == "scdf") return PolicyKind::Scdf;
  throw ValidationError("unknown base policy '" + name + "' (expected fcfs|edf|scdf)");
}

namespace {

double nominal_duration_min(const TruckSpec& truck, int port, const StationSpec& station) {
  return truck.demand_kwh * 60.0 / effective_cap(truck, port, station);
}

}  // namespace

Ordering complete_partial(const Instance& instance, const PartialState& partial, PolicyKind kind) {
  const int n = instance.num_trucks();
  const int ports = instance.station.num_ports();
  if (partial.num_ports() != ports) {
    throw ValidationError("partial state has " + std::to_string(partial.num_ports()) +
                          " ports, instance has " + std::to_string(ports));
  }
  partial.validate(n);

  // Replay the prefix queues to get each port's nominal free time.
  std::vector<double> avail(static_cast<size_t>(ports), instance.timeline.origin_min);
  for (int c = 0; c < ports; ++c) {
    for (int id : partial.per_port[static_cast<size_t>(c)]) {
      const TruckSpec& t = instance.truck(id);
      double start = std::max(avail[static_cast<size_t>(c)], t.arrival_min);
      avail[static_cast<size_t>(c)] = start + nominal_duration_min(t, c, instance.station);
    }
  }

  std::vector<int> remaining = partial.unassigned(n);
  std::stable_sort(remaining.begin(), remaining.end(), [&](int a, int b) {
    return policy_key(instance.truck(a), kind) < policy_key(instance.truck(b), kind);
  });

  Ordering out{partial.per_port};
  for (int id : remaining) {
    int best = 0;
    for (int c = 1; c < ports; ++c) {
      if (avail[static_cast<size_t>(c)] < avail[static_cast<size_t>(best)]) best = c;
    }
    out.per_port[static_cast<size_t>(best)].push_back(id);
    const TruckSpec& t = instance.truck(id);
    double start = std::max(avail[static_cast<size_t>(best)], t.arrival_min);
    avail[static_cast<size_t>(best)] = start + nominal_duration_min(t, best, instance.station);
  }
  return out;
}

Ordering base_order(const Instance& instance, PolicyKind kind) {
  return complete_partial(instance, PartialState::empty(instance.station.num_ports()), kind);
}

}  // namespace fleetcharge
