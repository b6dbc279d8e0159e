#pragma once

#include <vector>

#include "fleetcharge/inner_solver.hpp"
#include "fleetcharge/model.hpp"
#include "fleetcharge/partial_state.hpp"
#include "fleetcharge/policies.hpp"

namespace fleetcharge {

struct CandidateEval {
  Action action;
  double cost = 0.0;  // +inf when the completion is infeasible
  bool feasible = true;
};

struct StageRecord {
  std::vector<CandidateEval> candidates;
  Action chosen;
  double best_cost = 0.0;
};

struct RolloutTrace {
  std::vector<StageRecord> stages;
  Ordering final_ordering;
  InnerSolution final_solution;
  long long inner_evaluations = 0;  // C*N*(N+1)/2 + 1 when nothing is pruned
  PolicyKind base = PolicyKind::Fcfs;
  double base_cost = 0.0;          // the base ordering's own cost
  bool fell_back_to_base = false;  // terminal guard fired
};

struct RolloutConfig {
  InnerConfig inner;
  int threads = 0;                // 0: hardware concurrency
  bool record_candidates = true;  // keep per-stage candidate lists in the trace
};

/// Cost of completing `state` with `action` applied and the remaining trucks
/// assigned by the base policy: the one-step lookahead value. Infeasible
/// completions yield +inf.
double lookahead_cost(const Instance& instance, const PartialState& state, const Action& action,
                      PolicyKind base, const InnerConfig& inner = {});

/// One-step lookahead rollout over (truck, port) actions. From the empty
/// state, every stage evaluates all candidate actions by completing them with
/// the base policy and scoring the completion with inner_solve, then applies
/// the argmin (ties: lower truck id, then lower port). A terminal guard
/// returns the base ordering instead if the rollout result ever came out
/// worse, so the result never loses to its base policy.
RolloutTrace rollout_solve(const Instance& instance, PolicyKind base,
                           const RolloutConfig& config = {});

}  // namespace fleetcharge
