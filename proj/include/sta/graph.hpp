#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sta/errors.hpp"

namespace sta {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;
using AgentId = std::int32_t;
using Cost = double;

constexpr Vertex kNoVertex = -1;
constexpr EdgeId kNoEdge = -1;

// A directed road segment with a free-flow traversal time in milliseconds.
struct Edge {
  Vertex tail = kNoVertex;
  Vertex head = kNoVertex;
  std::int64_t d_ms = 0;
};

// Directed multigraph with dense vertex ids [0, n) and dense edge ids
// [0, m). Parallel edges are distinct resources. Immutable once built.
class RoadNetwork {
 public:
  RoadNetwork() = default;
  RoadNetwork(Vertex num_vertices, std::vector<Edge> edges);

  Vertex num_vertices() const { return num_vertices_; }
  EdgeId num_edges() const { return static_cast<EdgeId>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<size_t>(e)]; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Edge ids leaving / entering v, in ascending edge-id order.
  std::span<const EdgeId> out_edges(Vertex v) const;
  std::span<const EdgeId> in_edges(Vertex v) const;

  // True if t can be reached from s following edge directions.
  bool reachable(Vertex s, Vertex t) const;

 private:
  Vertex num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<EdgeId> out_arcs_, in_arcs_;
  std::vector<std::int32_t> out_begin_, in_begin_;
};

}  // namespace sta
