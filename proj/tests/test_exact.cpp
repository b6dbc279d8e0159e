#include <doctest.h>

#include <set>
#include <sstream>

#include "fleetcharge/errors.hpp"
#include "fleetcharge/exact.hpp"
#include "fleetcharge/policies.hpp"
#include "fleetcharge/rollout.hpp"
#include "fleetcharge/scenario.hpp"
#include "helpers.hpp"

using namespace fleetcharge;

namespace {

std::string key_of(const Ordering& o) {
  std::ostringstream out;
  for (const auto& seq : o.per_port) {
    out << '[';
    for (int id : seq) out << id << ',';
    out << ']';
  }
  return out.str();
}

}  // namespace

TEST_CASE("enumeration counts match the closed form and have no duplicates") {
  CHECK(ordering_count(2, 1) == 2);
  CHECK(ordering_count(2, 2) == 6);
  CHECK(ordering_count(1, 3) == 3);
  CHECK(ordering_count(4, 3) == 360);
  CHECK(ordering_count(5, 3) == 2520);

  for (auto [n, c] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}, {3, 2}, {4, 3}, {3, 3}}) {
    std::set<std::string> seen;
    long long visits = 0;
    enumerate_orderings(n, c, [&](const Ordering& o) {
      validate_ordering(o, n);
      CHECK(seen.insert(key_of(o)).second);
      ++visits;
      return true;
    });
    CHECK(visits == ordering_count(n, c));
  }
}

TEST_CASE("the six orderings of two trucks on two ports") {
  std::set<std::string> seen;
  enumerate_orderings(2, 2, [&](const Ordering& o) {
    seen.insert(key_of(o));
    return true;
  });
  std::set<std::string> expected{
      key_of(Ordering{{{1, 2}, {}}}), key_of(Ordering{{{2, 1}, {}}}),
      key_of(Ordering{{{1}, {2}}}),   key_of(Ordering{{{2}, {1}}}),
      key_of(Ordering{{{}, {1, 2}}}), key_of(Ordering{{{}, {2, 1}}}),
  };
  CHECK(seen == expected);
}

TEST_CASE("the size guard names the blow-up") {
  bool thrown = false;
  try {
    enumerate_orderings(9, 3, [](const Ordering&) { return true; });
  } catch (const SizeGuardError& e) {
    thrown = true;
    CHECK(std::string(e.what()).find(std::to_string(ordering_count(9, 3))) != std::string::npos);
  }
  CHECK(thrown);
}

TEST_CASE("early stop works") {
  long long visits = 0;
  enumerate_orderings(4, 2, [&](const Ordering&) { return ++visits < 5; });
  CHECK(visits == 5);
}

TEST_CASE("exact solve dominates every heuristic and rollout") {
  for (uint64_t seed : {7ULL, 8ULL}) {
    Instance inst = generate_instance(small_preset(4, seed));
    ExactResult exact = exact_solve(inst);
    CHECK(exact.evaluated == 360);
    CHECK(validate_schedule(inst, exact.solution.schedule).empty());
    for (PolicyKind kind : {PolicyKind::Fcfs, PolicyKind::Edf, PolicyKind::Scdf}) {
      double heuristic = inner_solve(inst, base_order(inst, kind)).cost.total_eur;
      CHECK(exact.solution.cost.total_eur <= heuristic * (1 + 1e-9));
      double rollout = rollout_solve(inst, kind).final_solution.cost.total_eur;
      CHECK(exact.solution.cost.total_eur <= rollout * (1 + 1e-9));
    }
  }
}

TEST_CASE("symmetric instances cost the same under truck relabeling") {
  // Identical trucks, identical ports, flat tariff.
  ScenarioConfig config = small_preset(3, 1);
  config.port_power_choices_kw = {350.0};
  config.soc_min = 0.5;
  config.soc_max = 0.500001;
  config.arrival_start_min = 480;
  config.arrival_end_min = 480;
  Instance inst = generate_instance(config);
  ExactResult exact = exact_solve(inst);
  RolloutTrace trace = rollout_solve(inst, PolicyKind::Fcfs);
  CHECK(trace.final_solution.cost.total_eur ==
        doctest::Approx(exact.solution.cost.total_eur).epsilon(1e-9));
}

TEST_CASE("symmetry pruning matches the unpruned optimum") {
  ScenarioConfig config = small_preset(4, 99);
  config.port_power_choices_kw = {350.0};  // all ports equal, pruning applies
  Instance inst = generate_instance(config);

  ExactConfig plain;
  ExactResult full = exact_solve(inst, plain);
  ExactConfig pruned;
  pruned.symmetry_pruning = true;
  ExactResult fast = exact_solve(inst, pruned);

  CHECK(fast.evaluated < full.evaluated);
  CHECK(fast.solution.cost.total_eur == doctest::Approx(full.solution.cost.total_eur).epsilon(1e-12));
}

TEST_CASE("one truck on three ports picks among three orderings") {
  Instance inst = generate_instance(small_preset(1, 3));
  ExactResult exact = exact_solve(inst);
  CHECK(exact.evaluated == 3);
}
