#pragma once

#include <string>

#include "fleetcharge/model.hpp"
#include "fleetcharge/partial_state.hpp"

namespace fleetcharge {

/// Base ordering heuristics: first-come-first-served, earliest deadline
/// first, smallest charging demand first.
enum class PolicyKind { Fcfs, Edf, Scdf };

/// The sort key implied by the heuristic (arrival, deadline, or demand).
double policy_key(const TruckSpec& truck, PolicyKind kind);

std::string policy_name(PolicyKind kind);
PolicyKind parse_policy_kind(const std::string& name);

/// Sorts trucks ascending by the policy key (ties to lower id) and assigns
/// each, in that order, to the port that frees up first under nominal
/// full-power durations; ties go to the lower port index.
Ordering base_order(const Instance& instance, PolicyKind kind);

/// Extends a partial ordering to a complete one with the same rule, seeding
/// port availability from the trucks already assigned. Completing the empty
/// state reproduces base_order.
Ordering complete_partial(const Instance& instance, const PartialState& partial, PolicyKind kind);

}  // namespace fleetcharge
