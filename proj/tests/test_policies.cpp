#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "fleetcharge/errors.hpp"
#include "fleetcharge/policies.hpp"
#include "fleetcharge/scenario.hpp"
#include "helpers.hpp"

using namespace fleetcharge;

namespace {

Instance three_truck_line(std::vector<double> arrivals, std::vector<double> demands, int ports) {
  Instance inst;
  inst.timeline = Timeline{0.0, 5, 288};
  inst.station.port_powers_kw.assign(static_cast<size_t>(ports), 350.0);
  inst.station.station_cap_kw = 350.0 * ports;
  inst.tariff = Tariff{{{0.0, 0.1}}};
  for (size_t i = 0; i < arrivals.size(); ++i) {
    TruckSpec t;
    t.id = static_cast<int>(i) + 1;
    t.arrival_min = arrivals[i];
    t.demand_kwh = demands[i];
    t.capacity_kwh = demands[i];
    t.initial_energy_kwh = 0.0;
    t.power_cap_kw = 350.0;
    t.deadline_min = arrivals[i] + demands[i] * 60.0 / 350.0;
    t.waiting_rate_eur_min = 2.0;
    t.tardiness_rate_eur_min = 10.0;
    inst.trucks.push_back(t);
  }
  return inst;
}

}  // namespace

TEST_CASE("base orders sort by the policy key") {
  Instance inst = three_truck_line({10, 5, 20}, {50, 30, 70}, 1);
  CHECK(base_order(inst, PolicyKind::Fcfs).per_port == std::vector<std::vector<int>>{{2, 1, 3}});
  CHECK(base_order(inst, PolicyKind::Scdf).per_port == std::vector<std::vector<int>>{{2, 1, 3}});

  // Deadlines here follow arrival order too, but with a tweak EDF differs.
  inst.trucks[1].deadline_min = 500.0;
  CHECK(base_order(inst, PolicyKind::Edf).per_port == std::vector<std::vector<int>>{{1, 3, 2}});
}

TEST_CASE("earliest-availability assignment alternates ports for identical trucks") {
  Instance inst = three_truck_line({0, 0}, {100, 100}, 2);
  Ordering o = base_order(inst, PolicyKind::Fcfs);
  CHECK(o.per_port == std::vector<std::vector<int>>{{1}, {2}});
}

TEST_CASE("completing the empty state reproduces the base order") {
  for (uint64_t seed : {1ULL, 5ULL, 9ULL}) {
    Instance inst = generate_instance(small_preset(7, seed));
    for (PolicyKind kind : {PolicyKind::Fcfs, PolicyKind::Edf, PolicyKind::Scdf}) {
      PartialState empty = PartialState::empty(inst.station.num_ports());
      CHECK(complete_partial(inst, empty, kind) == base_order(inst, kind));
    }
  }
}

TEST_CASE("a full partial state is returned unchanged") {
  Instance inst = generate_instance(small_preset(5, 2));
  Ordering full = base_order(inst, PolicyKind::Edf);
  PartialState state{full.per_port};
  CHECK(complete_partial(inst, state, PolicyKind::Scdf) == full);
}

TEST_CASE("remaining truck goes to the idle port") {
  Instance inst = three_truck_line({0, 0}, {100, 100}, 2);
  PartialState state{{{}, {1}}};  // truck 1 pre-assigned to port 2
  Ordering o = complete_partial(inst, state, PolicyKind::Fcfs);
  CHECK(o.per_port == std::vector<std::vector<int>>{{2}, {1}});
}

TEST_CASE("base order is equivariant under truck relabeling") {
  Instance inst = generate_instance(small_preset(6, 31));
  // Distinct keys so ties play no role.
  for (size_t i = 0; i < inst.trucks.size(); ++i) {
    inst.trucks[i].arrival_min = 480.0 + 7.0 * static_cast<double>(i);
    inst.trucks[i].deadline_min = inst.trucks[i].arrival_min + 200.0;
  }

  // Relabel trucks by a fixed permutation: new id = perm[old id - 1].
  std::vector<int> perm{3, 1, 6, 2, 5, 4};
  Instance relabeled = inst;
  for (size_t i = 0; i < inst.trucks.size(); ++i) {
    TruckSpec t = inst.trucks[i];
    t.id = perm[i];
    relabeled.trucks[static_cast<size_t>(perm[i] - 1)] = t;
  }

  Ordering before = base_order(inst, PolicyKind::Fcfs);
  Ordering after = base_order(relabeled, PolicyKind::Fcfs);
  for (int c = 0; c < before.num_ports(); ++c) {
    const auto& seq = before.per_port[static_cast<size_t>(c)];
    const auto& mapped = after.per_port[static_cast<size_t>(c)];
    REQUIRE(seq.size() == mapped.size());
    for (size_t k = 0; k < seq.size(); ++k) {
      CHECK(mapped[k] == perm[static_cast<size_t>(seq[k] - 1)]);
    }
  }
}

TEST_CASE("policy names round-trip") {
  for (PolicyKind kind : {PolicyKind::Fcfs, PolicyKind::Edf, PolicyKind::Scdf}) {
    CHECK(parse_policy_kind(policy_name(kind)) == kind);
  }
  CHECK_THROWS_AS(parse_policy_kind("lifo"), ValidationError);
}
