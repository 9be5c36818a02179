#include "sta/graph.hpp"

#include <string>

namespace sta {

namespace {

std::vector<std::int32_t> bucket_offsets(Vertex n, const std::vector<Edge>& edges, bool by_tail) {
  std::vector<std::int32_t> begin(static_cast<size_t>(n) + 1, 0);
  for (const Edge& e : edges) begin[static_cast<size_t>((by_tail ? e.tail : e.head)) + 1]++;
  for (size_t v = 1; v < begin.size(); ++v) begin[v] += begin[v - 1];
  return begin;
}

}  // namespace

RoadNetwork::RoadNetwork(Vertex num_vertices, std::vector<Edge> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
  if (num_vertices_ < 0) throw ValidationError("vertex count must be non-negative");
  for (size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.tail < 0 || e.tail >= num_vertices_ || e.head < 0 || e.head >= num_vertices_)
      throw ValidationError("edge " + std::to_string(i) + ": endpoint out of range");
    if (e.d_ms < 0)
      throw ValidationError("edge " + std::to_string(i) + ": negative free-flow time d=" +
                            std::to_string(e.d_ms));
  }
  out_begin_ = bucket_offsets(num_vertices_, edges_, true);
  in_begin_ = bucket_offsets(num_vertices_, edges_, false);
  out_arcs_.resize(edges_.size());
  in_arcs_.resize(edges_.size());
  std::vector<std::int32_t> out_fill(out_begin_.begin(), out_begin_.end() - 1);
  std::vector<std::int32_t> in_fill(in_begin_.begin(), in_begin_.end() - 1);
  // Iterating edges in id order keeps each adjacency list sorted by edge id.
  for (EdgeId e = 0; e < num_edges(); ++e) {
    out_arcs_[static_cast<size_t>(out_fill[static_cast<size_t>(edges_[static_cast<size_t>(e)].tail)]++)] = e;
    in_arcs_[static_cast<size_t>(in_fill[static_cast<size_t>(edges_[static_cast<size_t>(e)].head)]++)] = e;
  }
}

std::span<const EdgeId> RoadNetwork::out_edges(Vertex v) const {
  const auto b = static_cast<size_t>(out_begin_[static_cast<size_t>(v)]);
  const auto e = static_cast<size_t>(out_begin_[static_cast<size_t>(v) + 1]);
  return {out_arcs_.data() + b, e - b};
}

std::span<const EdgeId> RoadNetwork::in_edges(Vertex v) const {
  const auto b = static_cast<size_t>(in_begin_[static_cast<size_t>(v)]);
  const auto e = static_cast<size_t>(in_begin_[static_cast<size_t>(v) + 1]);
  return {in_arcs_.data() + b, e - b};
}

bool RoadNetwork::reachable(Vertex s, Vertex t) const {
  if (s == t) return true;
  std::vector<char> seen(static_cast<size_t>(num_vertices_), 0);
  std::vector<Vertex> stack{s};
  seen[static_cast<size_t>(s)] = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (EdgeId e : out_edges(v)) {
      const Vertex w = edge(e).head;
      if (seen[static_cast<size_t>(w)]) continue;
      if (w == t) return true;
      seen[static_cast<size_t>(w)] = 1;
      stack.push_back(w);
    }
  }
  return false;
}

}  // namespace sta
