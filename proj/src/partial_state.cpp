#include "fleetcharge/partial_state.hpp"

#include <set>
#include <string>

#include "fleetcharge/errors.hpp"

namespace fleetcharge {

int PartialState::stage() const {
  int n = 0;
  for (const auto& seq : per_port) n += static_cast<int>(seq.size());
  return n;
}

bool PartialState::contains(int truck_id) const {
  for (const auto& seq : per_port) {
    for (int id : seq) {
      if (id == truck_id) return true;
    }
  }
  return false;
}

std::vector<int> PartialState::unassigned(int n_trucks) const {
  std::vector<bool> assigned(static_cast<size_t>(n_trucks) + 1, false);
  for (const auto& seq : per_port) {
    for (int id : seq) {
      if (id >= 1 && id <= n_trucks) assigned[static_cast<size_t>(id)] = true;
    }
  }
  std::vector<int> out;
  for (int id = 1; id <= n_trucks; ++id) {
    if (!assigned[static_cast<size_t>(id)]) out.push_back(id);
  }
  return out;
}

void PartialState::validate(int n_trucks) const {
  std::set<int> seen;
  for (const auto& seq : per_port) {
    for (int id : seq) {
      if (id < 1 || id > n_trucks) {
        throw ValidationError("partial state: truck id " + std::to_string(id) + " out of range");
      }
      if (!seen.insert(id).second) {
        throw ValidationError("partial state: truck " + std::to_string(id) + " assigned twice");
      }
    }
  }
}

PartialState transition(const PartialState& state, const Action& action) {
  if (action.port < 0 || action.port >= state.num_ports()) {
    throw ValidationError("transition: port index " + std::to_string(action.port) + " out of range");
  }
  if (state.contains(action.truck_id)) {
    throw ValidationError("transition: truck " + std::to_string(action.truck_id) +
                          " is already assigned");
  }
  PartialState next = state;
  next.per_port[static_cast<size_t>(action.port)].push_back(action.truck_id);
  return next;
}

Ordering to_ordering(const PartialState& state) { return Ordering{state.per_port}; }

}  // namespace fleetcharge
