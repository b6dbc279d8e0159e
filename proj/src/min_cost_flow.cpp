#include "fleetcharge/min_cost_flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace fleetcharge {

namespace {
constexpr long long kUnreachable = std::numeric_limits<long long>::max() / 4;
}

MinCostFlow::MinCostFlow(int node_count) : graph_(static_cast<size_t>(node_count)) {}

int MinCostFlow::add_edge(int from, int to, long long capacity, long long unit_cost) {
  if (unit_cost < 0) throw std::invalid_argument("MinCostFlow: negative arc cost");
  auto& fwd = graph_[static_cast<size_t>(from)];
  auto& bwd = graph_[static_cast<size_t>(to)];
  fwd.push_back({to, static_cast<int>(bwd.size()), capacity, unit_cost});
  bwd.push_back({from, static_cast<int>(fwd.size()) - 1, 0, -unit_cost});
  edge_index_.emplace_back(from, static_cast<int>(fwd.size()) - 1);
  return static_cast<int>(edge_index_.size()) - 1;
}

long long MinCostFlow::flow_on(int edge_id) const {
  auto [node, offset] = edge_index_[static_cast<size_t>(edge_id)];
  const Edge& e = graph_[static_cast<size_t>(node)][static_cast<size_t>(offset)];
  // Flow equals the residual capacity accumulated on the reverse edge.
  return graph_[static_cast<size_t>(e.to)][static_cast<size_t>(e.rev)].cap;
}

MinCostFlow::Result MinCostFlow::solve(int source, int sink, long long flow_limit) {
  const size_t n = graph_.size();
  std::vector<long long> potential(n, 0);  // all costs nonnegative, so zero init is valid
  std::vector<long long> dist(n);
  std::vector<int> prev_node(n), prev_edge(n);
  Result result;

  while (result.flow < flow_limit) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    dist[static_cast<size_t>(source)] = 0;
    using Item = std::pair<long long, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.emplace(0, source);
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (d > dist[static_cast<size_t>(v)]) continue;
      const auto& edges = graph_[static_cast<size_t>(v)];
      for (size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        if (e.cap <= 0) continue;
        long long nd = d + e.cost + potential[static_cast<size_t>(v)] -
                       potential[static_cast<size_t>(e.to)];
        if (nd < dist[static_cast<size_t>(e.to)]) {
          dist[static_cast<size_t>(e.to)] = nd;
          prev_node[static_cast<size_t>(e.to)] = v;
          prev_edge[static_cast<size_t>(e.to)] = static_cast<int>(i);
          heap.emplace(nd, e.to);
        }
      }
    }
    if (dist[static_cast<size_t>(sink)] >= kUnreachable) break;
    for (size_t v = 0; v < n; ++v) {
      if (dist[v] < kUnreachable) potential[v] += dist[v];
    }

    long long push = flow_limit - result.flow;
    for (int v = sink; v != source; v = prev_node[static_cast<size_t>(v)]) {
      const Edge& e = graph_[static_cast<size_t>(prev_node[static_cast<size_t>(v)])]
                            [static_cast<size_t>(prev_edge[static_cast<size_t>(v)])];
      push = std::min(push, e.cap);
    }
    for (int v = sink; v != source; v = prev_node[static_cast<size_t>(v)]) {
      Edge& e = graph_[static_cast<size_t>(prev_node[static_cast<size_t>(v)])]
                      [static_cast<size_t>(prev_edge[static_cast<size_t>(v)])];
      e.cap -= push;
      graph_[static_cast<size_t>(e.to)][static_cast<size_t>(e.rev)].cap += push;
      result.cost += push * e.cost;
    }
    result.flow += push;
    ++result.augmentations;
  }
  return result;
}

}  // namespace fleetcharge
