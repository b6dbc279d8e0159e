#include "fleetcharge/exact.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <string>
#include <thread>

#include "fleetcharge/errors.hpp"

namespace fleetcharge {

long long ordering_count(int n_trucks, int n_ports) {
  long long factorial = 1;
  for (int k = 2; k <= n_trucks; ++k) factorial *= k;
  // Compositions of N into C nonnegative parts: C(N + C - 1, C - 1).
  long long comb = 1;
  for (int k = 1; k < n_ports; ++k) {
    comb = comb * (n_trucks + k) / k;
  }
  return factorial * comb;
}

void enumerate_orderings(int n_trucks, int n_ports,
                         const std::function<bool(const Ordering&)>& visit, int guard_limit) {
  if (n_trucks > guard_limit) {
    throw SizeGuardError("exact enumeration refused: N = " + std::to_string(n_trucks) +
                         " with C = " + std::to_string(n_ports) + " means " +
                         std::to_string(ordering_count(n_trucks, n_ports)) +
                         " orderings (guard limit N <= " + std::to_string(guard_limit) + ")");
  }
  std::vector<int> assignment(static_cast<size_t>(n_trucks), 0);
  while (true) {
    Ordering base;
    base.per_port.assign(static_cast<size_t>(n_ports), {});
    for (int i = 0; i < n_trucks; ++i) {
      base.per_port[static_cast<size_t>(assignment[static_cast<size_t>(i)])].push_back(i + 1);
    }
    // Odometer over per-port permutations, last port fastest.
    Ordering perm = base;
    while (true) {
      if (!visit(perm)) return;
      int c = n_ports - 1;
      while (c >= 0 && !std::next_permutation(perm.per_port[static_cast<size_t>(c)].begin(),
                                              perm.per_port[static_cast<size_t>(c)].end())) {
        // next_permutation wrapped this port back to sorted order; carry on.
        --c;
      }
      if (c < 0) break;
    }
    // Advance the assignment vector, truck 1 most significant.
    int i = n_trucks - 1;
    while (i >= 0 && assignment[static_cast<size_t>(i)] == n_ports - 1) {
      assignment[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++assignment[static_cast<size_t>(i)];
  }
}

namespace {

/// Canonical class representative under port relabeling: sequences sorted,
/// nonempty before empty, ascending first element.
bool is_port_canonical(const Ordering& ordering) {
  auto before = [](const std::vector<int>& a, const std::vector<int>& b) {
    if (a.empty() || b.empty()) return b.empty();
    return a.front() < b.front();  // sequences are disjoint, fronts differ
  };
  for (int c = 0; c + 1 < ordering.num_ports(); ++c) {
    if (!before(ordering.per_port[static_cast<size_t>(c)],
                ordering.per_port[static_cast<size_t>(c + 1)])) {
      return false;
    }
  }
  return true;
}

bool all_ports_equal(const StationSpec& station) {
  for (double p : station.port_powers_kw) {
    if (p != station.port_powers_kw.front()) return false;
  }
  return true;
}

}  // namespace

ExactResult exact_solve(const Instance& instance, const ExactConfig& config) {
  instance.validate();
  const bool prune = config.symmetry_pruning && all_ports_equal(instance.station);
  int threads = config.threads > 0 ? config.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(threads, 1);

  struct Scored {
    double cost;
    long long rank;
    Ordering ordering;
  };

  ExactResult result;
  bool found = false;
  double best_cost = std::numeric_limits<double>::infinity();
  long long best_rank = -1;
  Ordering best_ordering;

  std::vector<std::pair<long long, Ordering>> batch;
  const size_t batch_size = 256;
  long long rank = 0;

  auto flush = [&]() {
    if (batch.empty()) return;
    std::vector<Scored> scored(batch.size());
    auto evaluate_range = [&](size_t lo, size_t hi) {
      for (size_t k = lo; k < hi; ++k) {
        double cost;
        try {
          cost = inner_solve(instance, batch[k].second, config.inner).cost.total_eur;
        } catch (const HorizonExceeded&) {
          cost = std::numeric_limits<double>::infinity();
        } catch (const InfeasibleDemand&) {
          cost = std::numeric_limits<double>::infinity();
        }
        scored[k] = {cost, batch[k].first, batch[k].second};
      }
    };
    if (threads == 1 || batch.size() < 2) {
      evaluate_range(0, batch.size());
    } else {
      size_t chunk = (batch.size() + static_cast<size_t>(threads) - 1) /
                     static_cast<size_t>(threads);
      std::vector<std::future<void>> futures;
      for (size_t lo = 0; lo < batch.size(); lo += chunk) {
        size_t hi = std::min(lo + chunk, batch.size());
        futures.push_back(std::async(std::launch::async, evaluate_range, lo, hi));
      }
      for (auto& f : futures) f.get();
    }
    result.evaluated += static_cast<long long>(batch.size());
    for (const auto& s : scored) {
      if (s.cost == std::numeric_limits<double>::infinity()) continue;
      if (!found || s.cost < best_cost || (s.cost == best_cost && s.rank < best_rank)) {
        found = true;
        best_cost = s.cost;
        best_rank = s.rank;
        best_ordering = s.ordering;
      }
    }
    batch.clear();
  };

  enumerate_orderings(
      instance.num_trucks(), instance.station.num_ports(),
      [&](const Ordering& ordering) {
        long long this_rank = rank++;
        if (prune && !is_port_canonical(ordering)) return true;
        batch.emplace_back(this_rank, ordering);
        if (batch.size() >= batch_size) flush();
        return true;
      },
      config.guard_limit);
  flush();

  if (!found) {
    throw InfeasibleDemand("every ordering is infeasible for this instance");
  }
  result.ordering = best_ordering;
  result.solution = inner_solve(instance, result.ordering, config.inner);
  return result;
}

}  // namespace fleetcharge
