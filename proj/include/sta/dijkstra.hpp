#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sta/game.hpp"
#include "sta/graph.hpp"

namespace sta {

struct PathResult {
  Path path;
  Cost cost = 0.0;
};

// Label-setting shortest path with deterministic tie-breaking: among
// equal-cost labels the predecessor edge with the smaller id wins, so the
// result is a pure function of the cost vector. Costs must be >= 0.
class Dijkstra {
 public:
  explicit Dijkstra(const RoadNetwork& network);

  PathResult run(Vertex s, Vertex t, const std::function<Cost(EdgeId)>& edge_cost);
  PathResult run(Vertex s, Vertex t, std::span<const Cost> edge_costs);

 private:
  const RoadNetwork* network_;
  std::vector<Cost> dist_;
  std::vector<EdgeId> pred_;
  std::vector<std::uint32_t> stamp_;
  std::vector<char> settled_;
  std::uint32_t generation_ = 0;
};

// One-shot convenience wrapper.
PathResult dijkstra(const RoadNetwork& network, std::span<const Cost> edge_costs, Vertex s,
                    Vertex t);

// Free-flow distances (metric d) from s to every vertex; unreachable = +inf.
std::vector<Cost> free_flow_distances(const RoadNetwork& network, Vertex s);

}  // namespace sta
