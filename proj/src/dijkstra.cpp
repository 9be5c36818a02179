#include "sta/dijkstra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace sta {

namespace {
constexpr Cost kInf = std::numeric_limits<Cost>::infinity();
}

Dijkstra::Dijkstra(const RoadNetwork& network) : network_(&network) {
  const size_t n = static_cast<size_t>(network.num_vertices());
  dist_.assign(n, kInf);
  pred_.assign(n, kNoEdge);
  stamp_.assign(n, 0);
  settled_.assign(n, 0);
}

PathResult Dijkstra::run(Vertex s, Vertex t, const std::function<Cost(EdgeId)>& edge_cost) {
  const RoadNetwork& net = *network_;
  if (s == t) throw ValidationError("query requires distinct endpoints, got s = t = " +
                                    std::to_string(s));
  ++generation_;
  auto touch = [&](Vertex v) {
    if (stamp_[static_cast<size_t>(v)] != generation_) {
      stamp_[static_cast<size_t>(v)] = generation_;
      dist_[static_cast<size_t>(v)] = kInf;
      pred_[static_cast<size_t>(v)] = kNoEdge;
      settled_[static_cast<size_t>(v)] = 0;
    }
  };

  using Item = std::pair<Cost, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  touch(s);
  dist_[static_cast<size_t>(s)] = 0.0;
  queue.push({0.0, s});

  while (!queue.empty()) {
    const auto [du, u] = queue.top();
    queue.pop();
    touch(u);
    if (settled_[static_cast<size_t>(u)] || du > dist_[static_cast<size_t>(u)]) continue;
    settled_[static_cast<size_t>(u)] = 1;
    if (u == t) break;
    for (EdgeId e : net.out_edges(u)) {
      const Cost w = edge_cost(e);
      if (!(w >= 0.0) || !std::isfinite(w))
        throw ValidationError("edge " + std::to_string(e) +
                              ": routing requires finite non-negative cost");
      const Vertex v = net.edge(e).head;
      if (v == u) continue;
      touch(v);
      if (settled_[static_cast<size_t>(v)]) continue;
      const Cost nd = du + w;
      if (nd < dist_[static_cast<size_t>(v)]) {
        dist_[static_cast<size_t>(v)] = nd;
        pred_[static_cast<size_t>(v)] = e;
        queue.push({nd, v});
      } else if (nd == dist_[static_cast<size_t>(v)] && e < pred_[static_cast<size_t>(v)]) {
        pred_[static_cast<size_t>(v)] = e;
      }
    }
  }

  touch(t);
  if (!settled_[static_cast<size_t>(t)])
    throw NoPathError("no path from " + std::to_string(s) + " to " + std::to_string(t));

  PathResult result;
  result.cost = dist_[static_cast<size_t>(t)];
  for (Vertex v = t; v != s;) {
    const EdgeId e = pred_[static_cast<size_t>(v)];
    result.path.push_back(e);
    v = net.edge(e).tail;
  }
  std::reverse(result.path.begin(), result.path.end());
  return result;
}

PathResult Dijkstra::run(Vertex s, Vertex t, std::span<const Cost> edge_costs) {
  return run(s, t, [edge_costs](EdgeId e) { return edge_costs[static_cast<size_t>(e)]; });
}

PathResult dijkstra(const RoadNetwork& network, std::span<const Cost> edge_costs, Vertex s,
                    Vertex t) {
  Dijkstra d(network);
  return d.run(s, t, edge_costs);
}

std::vector<Cost> free_flow_distances(const RoadNetwork& network, Vertex s) {
  std::vector<Cost> dist(static_cast<size_t>(network.num_vertices()), kInf);
  using Item = std::pair<Cost, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  dist[static_cast<size_t>(s)] = 0.0;
  queue.push({0.0, s});
  while (!queue.empty()) {
    const auto [du, u] = queue.top();
    queue.pop();
    if (du > dist[static_cast<size_t>(u)]) continue;
    for (EdgeId e : network.out_edges(u)) {
      const Vertex v = network.edge(e).head;
      const Cost nd = du + static_cast<Cost>(network.edge(e).d_ms);
      if (nd < dist[static_cast<size_t>(v)]) {
        dist[static_cast<size_t>(v)] = nd;
        queue.push({nd, v});
      }
    }
  }
  return dist;
}

}  // namespace sta
