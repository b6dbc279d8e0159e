#include <doctest.h>

#include "fleetcharge/errors.hpp"
#include "fleetcharge/inner_solver.hpp"
#include "fleetcharge/model.hpp"
#include "fleetcharge/policies.hpp"
#include "fleetcharge/scenario.hpp"
#include "helpers.hpp"

using namespace fleetcharge;

TEST_CASE("effective cap is the binding side") {
  TruckSpec truck;
  truck.power_cap_kw = 350.0;
  StationSpec station{{300.0, 350.0}, 1000.0};
  CHECK(effective_cap(truck, 0, station) == 300.0);
  CHECK(effective_cap(truck, 1, station) == 350.0);
  truck.power_cap_kw = 100.0;
  CHECK(effective_cap(truck, 1, station) == 100.0);
  CHECK_THROWS_AS(effective_cap(truck, 2, station), std::out_of_range);
  CHECK_THROWS_AS(effective_cap(truck, -1, station), std::out_of_range);
}

TEST_CASE("tariff lookup is left-closed right-open") {
  Tariff tariff = default_tariff();
  CHECK(price_at(tariff, 7 * 60 + 30) == 0.174);  // morning peak
  CHECK(price_at(tariff, 21 * 60) == 0.101);      // boundary belongs to the later segment
  CHECK(price_at(tariff, 13 * 60) == 0.110);
  CHECK(price_at(tariff, 0) == 0.101);
  CHECK_THROWS_AS(price_at(tariff, -1.0), ValidationError);
}

TEST_CASE("tariff tiling repeats the day pattern") {
  Tariff two_days = default_tariff().tiled_daily(2);
  CHECK(two_days.points.size() == 12);
  CHECK(price_at(two_days, 24 * 60 + 7 * 60) == 0.174);
  CHECK(price_at(two_days, 24 * 60 + 30) == 0.101);
}

namespace {

Schedule make_flat_schedule(const Instance& inst, int start_slot, int slots_used, double power_kw) {
  Schedule s;
  s.ordering = Ordering{{{1}}};
  TruckSchedule ts;
  ts.truck_id = 1;
  ts.port = 0;
  ts.start_min = inst.timeline.slot_start_min(start_slot);
  ts.finish_min = inst.timeline.slot_start_min(start_slot + slots_used);
  for (int k = 0; k < slots_used; ++k) ts.profile.push_back({start_slot + k, power_kw});
  s.trucks = {ts};
  return s;
}

}  // namespace

TEST_CASE("evaluate_cost matches hand arithmetic") {
  SUBCASE("flat price, demand-only energy") {
    Instance inst = testing::single_truck_flat(0.1, 100.0, 200.0, 5, 48);
    // 100 kWh at 200 kW: 30 minutes = 6 slots.
    Schedule s = make_flat_schedule(inst, 0, 6, 200.0);
    CostBreakdown cost = evaluate_cost(inst, s);
    CHECK(cost.energy_eur == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(cost.waiting_eur == 0.0);
    CHECK(cost.tardiness_eur == 0.0);
    CHECK(cost.total_eur == cost.energy_eur + cost.waiting_eur + cost.tardiness_eur);
  }
  SUBCASE("waiting at 2 EUR/min for 5 minutes") {
    Instance inst = testing::single_truck_flat(0.1, 100.0, 200.0, 5, 48, 0.0, 2.0, 0.0);
    Schedule s = make_flat_schedule(inst, 1, 6, 200.0);  // starts 5 min after arrival
    CHECK(evaluate_cost(inst, s).waiting_eur == doctest::Approx(10.0));
  }
  SUBCASE("tardiness at 10 EUR/min for 3 minutes") {
    Instance inst = testing::single_truck_flat(0.1, 100.0, 200.0, 5, 48, 0.0, 0.0, 10.0, 27.0);
    Schedule s = make_flat_schedule(inst, 0, 6, 200.0);  // finishes at 30, deadline 27
    CHECK(evaluate_cost(inst, s).tardiness_eur == doctest::Approx(30.0));
  }
}

TEST_CASE("evaluate_cost is additive over trucks") {
  Instance inst = generate_instance(small_preset(5, 11));
  Ordering ordering = base_order(inst, PolicyKind::Fcfs);
  Schedule schedule = inner_solve(inst, ordering).schedule;

  CostBreakdown whole = evaluate_cost(inst, schedule);
  double energy = 0.0, waiting = 0.0, tardiness = 0.0;
  for (const auto& ts : schedule.trucks) {
    // Evaluate one truck alone; a singleton ordering keeps the validator quiet.
    Instance solo = inst;
    solo.trucks = {inst.truck(ts.truck_id)};
    solo.trucks[0].id = 1;
    Schedule sub;
    sub.ordering = Ordering{std::vector<std::vector<int>>(
        static_cast<size_t>(inst.station.num_ports()))};
    sub.ordering.per_port[static_cast<size_t>(ts.port)].push_back(1);
    TruckSchedule one = ts;
    one.truck_id = 1;
    sub.trucks = {one};
    CostBreakdown part = evaluate_cost(solo, sub);
    energy += part.energy_eur;
    waiting += part.waiting_eur;
    tardiness += part.tardiness_eur;
  }
  CHECK(whole.energy_eur == doctest::Approx(energy).epsilon(1e-12));
  CHECK(whole.waiting_eur == doctest::Approx(waiting).epsilon(1e-12));
  CHECK(whole.tardiness_eur == doctest::Approx(tardiness).epsilon(1e-12));
}

TEST_CASE("validator accepts solver output and pinpoints constructed violations") {
  Instance inst = generate_instance(small_preset(4, 3));
  Ordering ordering = base_order(inst, PolicyKind::Edf);
  InnerSolution sol = inner_solve(inst, ordering);
  CHECK(validate_schedule(inst, sol.schedule).empty());

  SUBCASE("overlap on one port is a precedence violation") {
    Schedule bad = sol.schedule;
    // Find a port with two trucks and pull the successor onto its predecessor.
    for (const auto& [i, j] : precedence_arcs(bad.ordering)) {
      TruckSchedule& pred = bad.trucks[static_cast<size_t>(i - 1)];
      TruckSchedule& succ = bad.trucks[static_cast<size_t>(j - 1)];
      succ = pred;
      succ.truck_id = j;
      auto violations = validate_schedule(inst, bad);
      bool found = false;
      for (const auto& v : violations) found |= v.constraint == Constraint::Precedence;
      CHECK(found);
      break;
    }
  }
  SUBCASE("missing energy is a demand violation with the right magnitude") {
    Schedule bad = sol.schedule;
    TruckSchedule& ts = bad.trucks[0];
    REQUIRE(!ts.profile.empty());
    // Remove 1 kWh from the first full slot.
    double delta_kwh = 1.0;
    ts.profile[0].power_kw -= delta_kwh * 60.0 / inst.timeline.slot_minutes;
    auto violations = validate_schedule(inst, bad);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].constraint == Constraint::DemandMet);
    CHECK(violations[0].magnitude == doctest::Approx(1000.0).epsilon(1e-6));  // Wh short
    CHECK(violations[0].trucks == std::vector<int>{1});
  }
  SUBCASE("station cap breach is caught") {
    Instance tight = inst;
    tight.station.station_cap_kw = 100.0;
    auto violations = validate_schedule(tight, sol.schedule);
    bool found = false;
    for (const auto& v : violations) found |= v.constraint == Constraint::StationCap;
    CHECK(found);
  }
}

TEST_CASE("ordering validation and precedence arc count") {
  Ordering ok{{{1, 3}, {2}, {}}};
  validate_ordering(ok, 3);
  CHECK(precedence_arcs(ok).size() == 1);  // sum of (|seq| - 1)

  Ordering dup{{{1, 2}, {2}}};
  CHECK_THROWS_AS(validate_ordering(dup, 2), ValidationError);
  Ordering missing{{{1}, {}}};
  CHECK_THROWS_AS(validate_ordering(missing, 2), ValidationError);

  for (uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    Instance inst = generate_instance(small_preset(6, seed));
    for (PolicyKind kind : {PolicyKind::Fcfs, PolicyKind::Edf, PolicyKind::Scdf}) {
      Ordering o = base_order(inst, kind);
      validate_ordering(o, 6);
      size_t expected = 0;
      for (const auto& seq : o.per_port) expected += seq.empty() ? 0 : seq.size() - 1;
      CHECK(precedence_arcs(o).size() == expected);
    }
  }
}

TEST_CASE("cost breakdown total is the exact component sum") {
  Instance inst = generate_instance(small_preset(6, 9));
  InnerSolution sol = inner_solve(inst, base_order(inst, PolicyKind::Scdf));
  CHECK(sol.cost.total_eur == sol.cost.energy_eur + sol.cost.waiting_eur + sol.cost.tardiness_eur);
}

TEST_CASE("instance validation rejects broken invariants") {
  Instance inst = generate_instance(small_preset(3, 5));
  SUBCASE("demand above capacity") {
    inst.trucks[0].demand_kwh = inst.trucks[0].capacity_kwh + 1.0;
    CHECK_THROWS_AS(inst.validate(), ValidationError);
  }
  SUBCASE("misaligned tariff breakpoint") {
    inst.tariff.points.push_back({721.0, 0.2});
    std::sort(inst.tariff.points.begin(), inst.tariff.points.end(),
              [](const TariffPoint& a, const TariffPoint& b) { return a.start_min < b.start_min; });
    CHECK_THROWS_AS(inst.validate(), ValidationError);
  }
  SUBCASE("duplicate truck ids") {
    inst.trucks[1].id = 1;
    CHECK_THROWS_AS(inst.validate(), ValidationError);
  }
  SUBCASE("arrival outside the horizon") {
    inst.trucks[0].arrival_min = inst.timeline.horizon_end_min() + 10;
    inst.trucks[0].deadline_min = inst.trucks[0].arrival_min + 100;
    CHECK_THROWS_AS(inst.validate(), ValidationError);
  }
}
