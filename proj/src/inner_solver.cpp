#include "fleetcharge/inner_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "fleetcharge/errors.hpp"
#include "fleetcharge/min_cost_flow.hpp"

namespace fleetcharge {

namespace {

// Allocation arc costs: integer milli-EUR/kWh price scaled by a stride, with
// the slot index as a tie-break so equal-price energy lands in the earliest
// slot. This makes the per-truck optimum unique and the allocator fully
// deterministic. Prices closer than 0.001 EUR/kWh rank as equal.
constexpr long long kPriceScale = 1000;
constexpr long long kKeyStride = 65536;

struct TruckPlan {
  int truck_id = 0;
  int port = 0;
  int seq_pos = 0;  // position within its port sequence
  long long demand_wmin = 0;
  long long cap_w = 0;     // effective cap, watts
  long long cap_wmin = 0;  // cap_w * slot_minutes
  int min_len = 0;         // ceil(demand / cap_wmin)
  int start_slot = 0;
  int end_slot = 0;  // exclusive
};

struct SolveContext {
  const Instance& instance;
  std::vector<double> slot_price;
  std::vector<long long> slot_key;
  long long station_w = 0;
  long long station_wd = 0;  // station cap per slot, in watt-minutes
  int num_slots = 0;
  int slot_minutes = 0;

  explicit SolveContext(const Instance& inst) : instance(inst) {
    const Timeline& tl = inst.timeline;
    num_slots = tl.num_slots;
    slot_minutes = tl.slot_minutes;
    station_w = to_watts(inst.station.station_cap_kw);
    station_wd = station_w * slot_minutes;
    slot_price.resize(static_cast<size_t>(num_slots));
    slot_key.resize(static_cast<size_t>(num_slots));
    long long max_key = 0;
    for (int s = 0; s < num_slots; ++s) {
      double price = price_at(inst.tariff, tl.slot_start_min(s));
      slot_price[static_cast<size_t>(s)] = price;
      long long key = std::llround(price * kPriceScale) * kKeyStride + s;
      slot_key[static_cast<size_t>(s)] = key;
      max_key = std::max(max_key, key);
    }
    long long total_wmin = 0;
    for (const auto& t : inst.trucks) total_wmin += t.demand_wmin();
    if (max_key > 0 && total_wmin > (4'000'000'000'000'000'000LL / std::max(max_key, 1LL))) {
      throw ValidationError("instance magnitude exceeds the allocator's integer cost range");
    }
  }
};

std::vector<TruckPlan> make_plans(const SolveContext& ctx, const Ordering& ordering) {
  const Instance& inst = ctx.instance;
  std::vector<TruckPlan> plans(static_cast<size_t>(inst.num_trucks()));
  for (int c = 0; c < ordering.num_ports(); ++c) {
    const auto& seq = ordering.per_port[static_cast<size_t>(c)];
    for (size_t pos = 0; pos < seq.size(); ++pos) {
      const TruckSpec& t = inst.truck(seq[pos]);
      TruckPlan& p = plans[static_cast<size_t>(t.id - 1)];
      p.truck_id = t.id;
      p.port = c;
      p.seq_pos = static_cast<int>(pos);
      p.demand_wmin = t.demand_wmin();
      p.cap_w = to_watts(effective_cap(t, c, inst.station));
      p.cap_wmin = p.cap_w * ctx.slot_minutes;
      p.min_len = static_cast<int>((p.demand_wmin + p.cap_wmin - 1) / p.cap_wmin);
    }
  }
  return plans;
}

using SlotAlloc = std::vector<std::pair<int, long long>>;  // (slot, wmin), ascending slots

/// Fills the window's cheapest slots at full cap; the remainder lands in the
/// most expensive slot used. With strict keys this is the unique per-truck
/// optimum ignoring the station cap.
SlotAlloc greedy_fill(const SolveContext& ctx, const TruckPlan& plan, int start, int end) {
  std::vector<int> slots;
  slots.reserve(static_cast<size_t>(end - start));
  for (int s = start; s < end; ++s) slots.push_back(s);
  std::sort(slots.begin(), slots.end(), [&](int a, int b) {
    return ctx.slot_key[static_cast<size_t>(a)] < ctx.slot_key[static_cast<size_t>(b)];
  });
  SlotAlloc alloc;
  long long remaining = plan.demand_wmin;
  for (int s : slots) {
    if (remaining <= 0) break;
    long long take = std::min(remaining, plan.cap_wmin);
    alloc.emplace_back(s, take);
    remaining -= take;
  }
  std::sort(alloc.begin(), alloc.end());
  return alloc;
}

struct RenderedTruck {
  double start_min = 0.0;
  double finish_min = 0.0;
  std::vector<SlotPower> profile;
};

/// Turns an allocation into slot power levels. Non-final slots run at their
/// average level for the whole slot. The final slot is raised to
/// `final_level_w` (integer watts) so charging ends as early as the energy
/// allows; pass 0 to keep the plain average level, which fills the slot to
/// its end.
RenderedTruck render_truck(const SolveContext& ctx, const SlotAlloc& alloc,
                           long long final_level_w) {
  RenderedTruck out;
  if (alloc.empty()) return out;
  const int delta = ctx.slot_minutes;
  out.start_min = ctx.instance.timeline.slot_start_min(alloc.front().first);
  for (size_t i = 0; i < alloc.size(); ++i) {
    auto [slot, wmin] = alloc[i];
    double slot_start = ctx.instance.timeline.slot_start_min(slot);
    if (i + 1 == alloc.size() && final_level_w * delta > wmin) {
      out.profile.push_back({slot, static_cast<double>(final_level_w) / 1000.0});
      out.finish_min = slot_start + static_cast<double>(wmin) / static_cast<double>(final_level_w);
    } else {
      out.profile.push_back({slot, static_cast<double>(wmin) / (1000.0 * delta)});
      if (i + 1 == alloc.size()) out.finish_min = slot_start + delta;
    }
  }
  return out;
}

/// The raised level for a truck's final slot: the effective cap, limited to
/// the integer-watt headroom other loads leave in that slot. Returns 0 when
/// no raise fits, which keeps the exact average level.
long long final_slot_level(const SolveContext& ctx, const TruckPlan& plan, long long own_wmin,
                           long long others_wmin) {
  long long headroom_w = (ctx.station_wd - others_wmin) / ctx.slot_minutes;
  long long level = std::min(plan.cap_w, headroom_w);
  long long need_w = (own_wmin + ctx.slot_minutes - 1) / ctx.slot_minutes;
  return level >= need_w ? level : 0;
}

/// Waiting + tardiness + energy of one truck charged alone in [start, end),
/// the timing DP's stage cost. Ignores the station cap.
double single_truck_window_cost(const SolveContext& ctx, const TruckPlan& plan, int start,
                                int end) {
  SlotAlloc alloc = greedy_fill(ctx, plan, start, end);
  RenderedTruck r = render_truck(ctx, alloc, plan.cap_w);
  const TruckSpec& t = ctx.instance.truck(plan.truck_id);
  double energy = 0.0;
  for (auto [slot, wmin] : alloc) {
    energy += ctx.slot_price[static_cast<size_t>(slot)] * wmin_to_kwh(wmin);
  }
  return energy + t.waiting_rate_eur_min * (r.start_min - t.arrival_min) +
         t.tardiness_rate_eur_min * std::max(r.finish_min - t.deadline_min, 0.0);
}

std::vector<int> breakpoint_slots(const SolveContext& ctx) {
  std::vector<int> out;
  const Timeline& tl = ctx.instance.timeline;
  for (const auto& p : ctx.instance.tariff.points) {
    if (p.start_min <= tl.origin_min || p.start_min >= tl.horizon_end_min()) continue;
    out.push_back(tl.first_slot_at_or_after(p.start_min));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// The earliest start plus up to `lookahead` later tariff-breakpoint slots,
/// keeping only starts whose nominal window fits the horizon.
std::vector<int> candidate_starts(const SolveContext& ctx, const std::vector<int>& bp_slots,
                                  const TruckPlan& plan, int earliest, int lookahead) {
  std::vector<int> out;
  if (earliest + plan.min_len <= ctx.num_slots) out.push_back(earliest);
  auto it = std::upper_bound(bp_slots.begin(), bp_slots.end(), earliest);
  for (int k = 0; it != bp_slots.end() && k < lookahead; ++it, ++k) {
    if (*it + plan.min_len <= ctx.num_slots) out.push_back(*it);
  }
  return out;
}

/// Per-port forward DP over candidate start slots. Sets start/end on plans.
void timing_dp(const SolveContext& ctx, const Ordering& ordering, std::vector<TruckPlan>& plans,
               const InnerConfig& config, InnerStats& stats) {
  const std::vector<int> bp_slots = breakpoint_slots(ctx);
  for (int c = 0; c < ordering.num_ports(); ++c) {
    const auto& seq = ordering.per_port[static_cast<size_t>(c)];
    if (seq.empty()) continue;

    struct State {
      double cost;
      int parent;  // predecessor's start slot, -1 at the first position
    };
    std::vector<std::map<int, State>> layers(seq.size());

    auto relax = [&](size_t pos, int start, double cost, int parent) {
      auto [it, inserted] = layers[pos].try_emplace(start, State{cost, parent});
      if (!inserted && cost < it->second.cost) it->second = State{cost, parent};
      ++stats.dp_states;
    };

    {
      const TruckPlan& p = plans[static_cast<size_t>(seq[0] - 1)];
      int earliest = std::max(
          0, ctx.instance.timeline.first_slot_at_or_after(ctx.instance.truck(seq[0]).arrival_min));
      auto cands = candidate_starts(ctx, bp_slots, p, earliest, config.lookahead_breakpoints);
      if (cands.empty()) {
        throw HorizonExceeded("truck " + std::to_string(seq[0]) +
                              " cannot fit its charging window before the horizon");
      }
      for (int s : cands) relax(0, s, single_truck_window_cost(ctx, p, s, s + p.min_len), -1);
    }
    for (size_t pos = 1; pos < seq.size(); ++pos) {
      const TruckPlan& prev = plans[static_cast<size_t>(seq[pos - 1] - 1)];
      const TruckPlan& cur = plans[static_cast<size_t>(seq[pos] - 1)];
      int arrival_slot = std::max(
          0, ctx.instance.timeline.first_slot_at_or_after(ctx.instance.truck(seq[pos]).arrival_min));
      for (const auto& [prev_start, state] : layers[pos - 1]) {
        int earliest = std::max(arrival_slot, prev_start + prev.min_len);
        for (int s : candidate_starts(ctx, bp_slots, cur, earliest, config.lookahead_breakpoints)) {
          relax(pos, s, state.cost + single_truck_window_cost(ctx, cur, s, s + cur.min_len),
                prev_start);
        }
      }
      if (layers[pos].empty()) {
        throw HorizonExceeded("truck " + std::to_string(seq[pos]) +
                              " cannot fit its charging window before the horizon");
      }
    }

    // Backtrack the cheapest chain (maps iterate ascending, so ties keep the
    // earliest start).
    int best_start = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (const auto& [start, state] : layers.back()) {
      if (state.cost < best_cost) {
        best_cost = state.cost;
        best_start = start;
      }
    }
    int cursor = best_start;
    for (size_t pos = seq.size(); pos-- > 0;) {
      TruckPlan& p = plans[static_cast<size_t>(seq[pos] - 1)];
      p.start_slot = cursor;
      p.end_slot = cursor + p.min_len;
      cursor = layers[pos].at(cursor).parent;
    }
  }
}

struct AllocationResult {
  std::vector<SlotAlloc> per_truck;      // indexed truck_id - 1
  std::vector<long long> delivered;      // wmin per truck
  bool complete = false;
};

/// Min-cost allocation inside fixed windows. Tries the per-truck greedy
/// first; when its aggregate stays within the station cap it already is the
/// joint optimum, otherwise the coupled min-cost flow decides.
AllocationResult allocate_windows(const SolveContext& ctx, const std::vector<TruckPlan>& plans,
                                  InnerStats& stats) {
  const int n = static_cast<int>(plans.size());
  AllocationResult result;
  result.per_truck.resize(static_cast<size_t>(n));
  result.delivered.assign(static_cast<size_t>(n), 0);

  std::vector<long long> slot_load(static_cast<size_t>(ctx.num_slots), 0);
  bool over_cap = false;
  for (int i = 0; i < n; ++i) {
    const TruckPlan& p = plans[static_cast<size_t>(i)];
    result.per_truck[static_cast<size_t>(i)] = greedy_fill(ctx, p, p.start_slot, p.end_slot);
    for (auto [slot, wmin] : result.per_truck[static_cast<size_t>(i)]) {
      slot_load[static_cast<size_t>(slot)] += wmin;
      if (slot_load[static_cast<size_t>(slot)] > ctx.station_wd) over_cap = true;
    }
    result.delivered[static_cast<size_t>(i)] = p.demand_wmin;
  }
  if (!over_cap) {
    result.complete = true;
    return result;
  }

  // Station cap binds somewhere: solve the coupled problem exactly.
  std::vector<int> used_slots;
  for (const auto& p : plans) {
    for (int s = p.start_slot; s < p.end_slot; ++s) used_slots.push_back(s);
  }
  std::sort(used_slots.begin(), used_slots.end());
  used_slots.erase(std::unique(used_slots.begin(), used_slots.end()), used_slots.end());
  std::vector<int> slot_node(static_cast<size_t>(ctx.num_slots), -1);
  for (size_t k = 0; k < used_slots.size(); ++k) {
    slot_node[static_cast<size_t>(used_slots[k])] = n + 1 + static_cast<int>(k);
  }
  const int source = 0;
  const int sink = n + 1 + static_cast<int>(used_slots.size());
  MinCostFlow flow(sink + 1);

  long long total_demand = 0;
  std::vector<std::vector<std::pair<int, int>>> truck_arcs(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const TruckPlan& p = plans[static_cast<size_t>(i)];
    flow.add_edge(source, i + 1, p.demand_wmin, 0);
    total_demand += p.demand_wmin;
    for (int s = p.start_slot; s < p.end_slot; ++s) {
      int id = flow.add_edge(i + 1, slot_node[static_cast<size_t>(s)], p.cap_wmin,
                             ctx.slot_key[static_cast<size_t>(s)]);
      truck_arcs[static_cast<size_t>(i)].emplace_back(s, id);
    }
  }
  for (int s : used_slots) {
    flow.add_edge(slot_node[static_cast<size_t>(s)], sink, ctx.station_wd, 0);
  }

  auto res = flow.solve(source, sink, total_demand);
  stats.flow_augmentations += res.augmentations;
  ++stats.flow_solves;

  for (int i = 0; i < n; ++i) {
    SlotAlloc alloc;
    long long got = 0;
    for (auto [slot, id] : truck_arcs[static_cast<size_t>(i)]) {
      long long wmin = flow.flow_on(id);
      if (wmin > 0) {
        alloc.emplace_back(slot, wmin);
        got += wmin;
      }
    }
    result.per_truck[static_cast<size_t>(i)] = std::move(alloc);
    result.delivered[static_cast<size_t>(i)] = got;
  }
  result.complete = res.flow == total_demand;
  return result;
}

Schedule build_schedule(const SolveContext& ctx, const Ordering& ordering,
                        const std::vector<TruckPlan>& plans, const AllocationResult& alloc) {
  const int n = static_cast<int>(plans.size());
  Schedule schedule;
  schedule.ordering = ordering;
  schedule.trucks.resize(static_cast<size_t>(n));

  // Per-slot watt-minute contributions, starting from the plain averages the
  // allocator certified against the station cap. Raising a truck's final
  // slot consumes headroom here, so later trucks see it.
  std::vector<long long> slot_load(static_cast<size_t>(ctx.num_slots), 0);
  for (int i = 0; i < n; ++i) {
    for (auto [slot, wmin] : alloc.per_truck[static_cast<size_t>(i)]) {
      slot_load[static_cast<size_t>(slot)] += wmin;
    }
  }

  for (int i = 0; i < n; ++i) {
    const TruckPlan& plan = plans[static_cast<size_t>(i)];
    const SlotAlloc& a = alloc.per_truck[static_cast<size_t>(i)];
    long long level_w = 0;
    if (!a.empty()) {
      auto [last_slot, last_wmin] = a.back();
      long long others = slot_load[static_cast<size_t>(last_slot)] - last_wmin;
      level_w = final_slot_level(ctx, plan, last_wmin, others);
      if (level_w * ctx.slot_minutes > last_wmin) {
        slot_load[static_cast<size_t>(last_slot)] += level_w * ctx.slot_minutes - last_wmin;
      }
    }
    RenderedTruck r = render_truck(ctx, a, level_w);
    TruckSchedule& ts = schedule.trucks[static_cast<size_t>(i)];
    ts.truck_id = i + 1;
    ts.port = plan.port;
    ts.start_min = r.start_min;
    ts.finish_min = r.finish_min;
    ts.profile = std::move(r.profile);
  }
  return schedule;
}

/// Widens the most-starved truck's window by one slot at its tail and shifts
/// its same-port successors out of the overlap.
void repair_windows(const SolveContext& ctx, const Ordering& ordering,
                    std::vector<TruckPlan>& plans, const AllocationResult& alloc) {
  int worst = -1;
  double worst_fraction = 0.0;
  for (size_t i = 0; i < plans.size(); ++i) {
    long long unmet = plans[i].demand_wmin - alloc.delivered[i];
    if (unmet <= 0) continue;
    double fraction = static_cast<double>(unmet) / static_cast<double>(plans[i].demand_wmin);
    if (worst < 0 || fraction > worst_fraction) {
      worst = static_cast<int>(i);
      worst_fraction = fraction;
    }
  }
  TruckPlan& starved = plans[static_cast<size_t>(worst)];
  starved.end_slot += 1;
  if (starved.end_slot > ctx.num_slots) {
    throw HorizonExceeded("repair would push truck " + std::to_string(starved.truck_id) +
                          " past the horizon");
  }
  const auto& seq = ordering.per_port[static_cast<size_t>(starved.port)];
  int prev_end = starved.end_slot;
  for (size_t pos = static_cast<size_t>(starved.seq_pos) + 1; pos < seq.size(); ++pos) {
    TruckPlan& succ = plans[static_cast<size_t>(seq[pos] - 1)];
    if (succ.start_slot >= prev_end) break;
    int shift = prev_end - succ.start_slot;
    succ.start_slot += shift;
    succ.end_slot += shift;
    if (succ.end_slot > ctx.num_slots) {
      throw HorizonExceeded("repair would push truck " + std::to_string(succ.truck_id) +
                            " past the horizon");
    }
    prev_end = succ.end_slot;
  }
}

void check_total_demand(const SolveContext& ctx) {
  long long total = 0;
  for (const auto& t : ctx.instance.trucks) total += t.demand_wmin();
  long long deliverable = ctx.station_wd * ctx.num_slots;
  if (total > deliverable) {
    throw InfeasibleDemand("fleet demand " + std::to_string(total) +
                           " Wmin exceeds the station's horizon capacity " +
                           std::to_string(deliverable) + " Wmin");
  }
}

InnerSolution finish_solution(const SolveContext& ctx, const Ordering& ordering,
                              const std::vector<TruckPlan>& plans, const AllocationResult& alloc,
                              InnerStats stats) {
  InnerSolution out;
  out.schedule = build_schedule(ctx, ordering, plans, alloc);
  out.cost = evaluate_cost(ctx.instance, out.schedule);
  out.stats = stats;
  return out;
}

}  // namespace

InnerSolution inner_solve(const Instance& instance, const Ordering& ordering,
                          const InnerConfig& config) {
  validate_ordering(ordering, instance.num_trucks());
  SolveContext ctx(instance);
  check_total_demand(ctx);
  InnerStats stats;

  std::vector<TruckPlan> plans = make_plans(ctx, ordering);
  timing_dp(ctx, ordering, plans, config, stats);

  const int max_repairs = ctx.num_slots * instance.num_trucks();
  for (int round = 0; round <= max_repairs; ++round) {
    AllocationResult alloc = allocate_windows(ctx, plans, stats);
    if (alloc.complete) return finish_solution(ctx, ordering, plans, alloc, stats);
    repair_windows(ctx, ordering, plans, alloc);
    ++stats.repair_iterations;
  }
  throw HorizonExceeded("window repair did not converge within the horizon");
}

InnerSolution inner_bruteforce(const Instance& instance, const Ordering& ordering) {
  constexpr int kMaxTrucks = 4;
  constexpr int kMaxSlots = 16;
  if (instance.num_trucks() > kMaxTrucks || instance.timeline.num_slots > kMaxSlots) {
    throw SizeGuardError("inner_bruteforce is guarded to N <= " + std::to_string(kMaxTrucks) +
                         " and " + std::to_string(kMaxSlots) + " slots (got N = " +
                         std::to_string(instance.num_trucks()) + ", slots = " +
                         std::to_string(instance.timeline.num_slots) + ")");
  }
  validate_ordering(ordering, instance.num_trucks());
  SolveContext ctx(instance);
  check_total_demand(ctx);

  std::vector<TruckPlan> plans = make_plans(ctx, ordering);

  // Flatten (port, position) pairs; per-port chains carry their own
  // predecessor-end constraint.
  std::vector<int> order;  // truck ids, ports ascending then sequence order
  for (const auto& seq : ordering.per_port) {
    for (int id : seq) order.push_back(id);
  }

  InnerStats stats;
  bool found = false;
  double best_cost = std::numeric_limits<double>::infinity();
  InnerSolution best;

  auto evaluate_combo = [&]() {
    AllocationResult alloc = allocate_windows(ctx, plans, stats);
    if (!alloc.complete) return;
    InnerSolution sol = finish_solution(ctx, ordering, plans, alloc, stats);
    if (!found || sol.cost.total_eur < best_cost) {
      found = true;
      best_cost = sol.cost.total_eur;
      best = std::move(sol);
    }
  };

  auto recurse = [&](auto&& self, size_t idx, std::vector<int>& port_free) -> void {
    if (idx == order.size()) {
      evaluate_combo();
      return;
    }
    TruckPlan& p = plans[static_cast<size_t>(order[idx] - 1)];
    const TruckSpec& t = ctx.instance.truck(order[idx]);
    int earliest = std::max({0, ctx.instance.timeline.first_slot_at_or_after(t.arrival_min),
                             port_free[static_cast<size_t>(p.port)]});
    for (int s = earliest; s + p.min_len <= ctx.num_slots; ++s) {
      for (int e = s + p.min_len; e <= ctx.num_slots; ++e) {
        p.start_slot = s;
        p.end_slot = e;
        int saved = port_free[static_cast<size_t>(p.port)];
        port_free[static_cast<size_t>(p.port)] = e;
        self(self, idx + 1, port_free);
        port_free[static_cast<size_t>(p.port)] = saved;
      }
    }
  };
  std::vector<int> port_free(static_cast<size_t>(ordering.num_ports()), 0);
  recurse(recurse, 0, port_free);

  if (!found) {
    throw HorizonExceeded("no feasible window combination fits the horizon");
  }
  best.stats = stats;
  return best;
}

}  // namespace fleetcharge
