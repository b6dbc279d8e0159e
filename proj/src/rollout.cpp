#include "fleetcharge/rollout.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <thread>

#include "fleetcharge/errors.hpp"

namespace fleetcharge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double completion_cost(const Instance& instance, const PartialState& state, PolicyKind base,
                       const InnerConfig& inner) {
  try {
    Ordering ordering = complete_partial(instance, state, base);
    return inner_solve(instance, ordering, inner).cost.total_eur;
  } catch (const HorizonExceeded&) {
    return kInf;
  } catch (const InfeasibleDemand&) {
    return kInf;
  }
}

/// The first assignment the base policy itself would make from `state`.
Action base_first_action(const Instance& instance, const PartialState& state, PolicyKind base) {
  std::vector<int> remaining = state.unassigned(instance.num_trucks());
  int pick = remaining.front();
  for (int id : remaining) {
    if (policy_key(instance.truck(id), base) < policy_key(instance.truck(pick), base)) pick = id;
  }
  // Port availability replay, identical to complete_partial's rule.
  std::vector<double> avail(static_cast<size_t>(instance.station.num_ports()),
                            instance.timeline.origin_min);
  for (int c = 0; c < instance.station.num_ports(); ++c) {
    for (int id : state.per_port[static_cast<size_t>(c)]) {
      const TruckSpec& t = instance.truck(id);
      double start = std::max(avail[static_cast<size_t>(c)], t.arrival_min);
      avail[static_cast<size_t>(c)] =
          start + t.demand_kwh * 60.0 / effective_cap(t, c, instance.station);
    }
  }
  int best_port = 0;
  for (int c = 1; c < instance.station.num_ports(); ++c) {
    if (avail[static_cast<size_t>(c)] < avail[static_cast<size_t>(best_port)]) best_port = c;
  }
  return Action{pick, best_port};
}

}  // namespace

double lookahead_cost(const Instance& instance, const PartialState& state, const Action& action,
                      PolicyKind base, const InnerConfig& inner) {
  return completion_cost(instance, transition(state, action), base, inner);
}

RolloutTrace rollout_solve(const Instance& instance, PolicyKind base, const RolloutConfig& config) {
  instance.validate();
  const int n = instance.num_trucks();
  const int ports = instance.station.num_ports();
  int threads = config.threads > 0 ? config.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(threads, 1);

  RolloutTrace trace;
  trace.base = base;
  trace.base_cost = kInf;

  PartialState state = PartialState::empty(ports);
  const Action base_move = base_first_action(instance, state, base);

  for (int stage = 0; stage < n; ++stage) {
    std::vector<Action> actions;
    for (int id : state.unassigned(n)) {
      for (int c = 0; c < ports; ++c) actions.push_back(Action{id, c});
    }

    std::vector<double> costs(actions.size());
    auto evaluate_range = [&](size_t lo, size_t hi) {
      for (size_t k = lo; k < hi; ++k) {
        costs[k] = completion_cost(instance, transition(state, actions[k]), base, config.inner);
      }
    };
    if (threads == 1 || actions.size() < 2) {
      evaluate_range(0, actions.size());
    } else {
      size_t chunk = (actions.size() + static_cast<size_t>(threads) - 1) /
                     static_cast<size_t>(threads);
      std::vector<std::future<void>> futures;
      for (size_t lo = 0; lo < actions.size(); lo += chunk) {
        size_t hi = std::min(lo + chunk, actions.size());
        futures.push_back(std::async(std::launch::async, evaluate_range, lo, hi));
      }
      for (auto& f : futures) f.get();
    }
    trace.inner_evaluations += static_cast<long long>(actions.size());

    // Order-independent argmin: candidates are already sorted by
    // (truck id, port), so the first strict improvement realizes the
    // tie-break.
    size_t best = 0;
    for (size_t k = 1; k < actions.size(); ++k) {
      if (costs[k] < costs[best]) best = k;
    }
    if (costs[best] == kInf) {
      throw InfeasibleInstance("every completion at rollout stage " + std::to_string(stage) +
                               " is infeasible");
    }

    if (stage == 0) {
      // The base policy's own first move is among the candidates, and its
      // completion *is* the base ordering; remember its cost for the guard.
      for (size_t k = 0; k < actions.size(); ++k) {
        if (actions[k] == base_move) {
          trace.base_cost = costs[k];
          break;
        }
      }
    }

    StageRecord record;
    if (config.record_candidates) {
      record.candidates.reserve(actions.size());
      for (size_t k = 0; k < actions.size(); ++k) {
        record.candidates.push_back({actions[k], costs[k], costs[k] != kInf});
      }
    }
    record.chosen = actions[best];
    record.best_cost = costs[best];
    trace.stages.push_back(std::move(record));

    state = transition(state, actions[best]);
  }

  trace.final_ordering = to_ordering(state);
  trace.final_solution = inner_solve(instance, trace.final_ordering, config.inner);
  trace.inner_evaluations += 1;

  // Terminal guard: with a deterministic inner heuristic the chain of stage
  // minima already implies rollout <= base, but keep the guarantee
  // unconditional.
  if (trace.final_solution.cost.total_eur > trace.base_cost) {
    trace.fell_back_to_base = true;
    trace.final_ordering = base_order(instance, base);
    trace.final_solution = inner_solve(instance, trace.final_ordering, config.inner);
    trace.inner_evaluations += 1;
  }
  return trace;
}

}  // namespace fleetcharge
