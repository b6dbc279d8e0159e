#include <doctest.h>

#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fleetcharge/min_cost_flow.hpp"

using namespace fleetcharge;

namespace {

// Exhaustive reference: two supplies into three slots with a shared slot cap.
// Enumerates every integer split and keeps the cheapest feasible one.
long long brute_min_cost(const std::vector<long long>& demand, long long arc_cap,
                         long long slot_cap, const std::vector<long long>& price) {
  long long best = std::numeric_limits<long long>::max();
  std::vector<std::vector<long long>> alloc(demand.size(), std::vector<long long>(price.size(), 0));
  std::function<void(size_t, size_t, long long, long long)> rec =
      [&](size_t truck, size_t slot, long long left, long long cost) {
        if (left == 0 && slot <= price.size()) {
          if (truck + 1 == demand.size()) {
            long long total = cost;
            for (size_t s = 0; s < price.size(); ++s) {
              long long load = 0;
              for (size_t t = 0; t < demand.size(); ++t) load += alloc[t][s];
              if (load > slot_cap) return;
            }
            best = std::min(best, total);
          } else {
            rec(truck + 1, 0, demand[truck + 1], cost);
          }
          return;
        }
        if (slot >= price.size()) return;
        for (long long take = 0; take <= std::min(arc_cap, left); ++take) {
          alloc[truck][slot] = take;
          rec(truck, slot + 1, left - take, cost + take * price[slot]);
          alloc[truck][slot] = 0;
        }
      };
  rec(0, 0, demand[0], 0);
  return best;
}

}  // namespace

TEST_CASE("successive shortest paths matches exhaustive enumeration") {
  const std::vector<long long> demand{5, 4};
  const std::vector<long long> price{7, 3, 5};
  const long long arc_cap = 3;
  const long long slot_cap = 4;

  MinCostFlow flow(2 + 3 + 2);
  const int source = 0, sink = 6;
  std::vector<std::vector<int>> arcs(2);
  for (int t = 0; t < 2; ++t) {
    flow.add_edge(source, 1 + t, demand[static_cast<size_t>(t)], 0);
    for (int s = 0; s < 3; ++s) {
      arcs[static_cast<size_t>(t)].push_back(
          flow.add_edge(1 + t, 3 + s, arc_cap, price[static_cast<size_t>(s)]));
    }
  }
  for (int s = 0; s < 3; ++s) flow.add_edge(3 + s, sink, slot_cap, 0);

  auto result = flow.solve(source, sink, demand[0] + demand[1]);
  CHECK(result.flow == 9);
  CHECK(result.cost == brute_min_cost(demand, arc_cap, slot_cap, price));

  long long recovered = 0;
  for (int t = 0; t < 2; ++t) {
    for (int id : arcs[static_cast<size_t>(t)]) recovered += flow.flow_on(id);
  }
  CHECK(recovered == 9);
}

TEST_CASE("max flow stops at the bottleneck") {
  MinCostFlow flow(4);
  flow.add_edge(0, 1, 10, 1);
  flow.add_edge(1, 2, 3, 1);
  flow.add_edge(2, 3, 10, 1);
  auto result = flow.solve(0, 3, 10);
  CHECK(result.flow == 3);
  CHECK(result.cost == 9);
}

TEST_CASE("negative arc costs are rejected") {
  MinCostFlow flow(2);
  CHECK_THROWS_AS(flow.add_edge(0, 1, 1, -1), std::invalid_argument);
}
