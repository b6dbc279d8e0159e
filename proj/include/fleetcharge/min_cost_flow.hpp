#pragma once

#include <cstdint>
#include <vector>

namespace fleetcharge {

/// Min-cost max-flow via successive shortest augmenting paths with Johnson
/// potentials (Dijkstra on reduced costs). Arc costs must be nonnegative.
/// Capacities and costs are int64; each augmentation pushes the full path
/// bottleneck.
class MinCostFlow {
 public:
  explicit MinCostFlow(int node_count);

  /// Adds a directed arc and its zero-capacity reverse. Returns an id usable
  /// with flow_on().
  int add_edge(int from, int to, long long capacity, long long unit_cost);

  struct Result {
    long long flow = 0;
    long long cost = 0;
    long long augmentations = 0;
  };

  /// Pushes as much flow as possible (up to flow_limit) at minimum cost.
  Result solve(int source, int sink, long long flow_limit);

  long long flow_on(int edge_id) const;

 private:
  struct Edge {
    int to;
    int rev;  // index of the reverse edge in graph_[to]
    long long cap;
    long long cost;
  };
  std::vector<std::vector<Edge>> graph_;
  std::vector<std::pair<int, int>> edge_index_;  // id -> (node, offset)
};

}  // namespace fleetcharge
