#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "sta/dijkstra.hpp"
#include "sta/graph.hpp"

namespace sta {

// Metric-independent part of a customizable contraction hierarchy: a vertex
// elimination order, the chordal supergraph induced by it, the elimination
// tree, and the triangle lists used by customization. Built once per
// topology, reused for any number of metrics.
class MetricIndependentIndex {
 public:
  struct Triangle {
    // Chordal edge ids of a triangle {u,v,w} with rank(u) < rank(v) < rank(w):
    // uv and uw share the apex u, vw connects the two upper endpoints.
    std::int32_t uv, uw, vw;
  };

  static MetricIndependentIndex build(const RoadNetwork& network);

  const RoadNetwork& network() const { return *network_; }
  int num_chords() const { return static_cast<int>(chord_lo_.size()); }
  int rank(Vertex v) const { return rank_[static_cast<size_t>(v)]; }
  Vertex order(int r) const { return order_[static_cast<size_t>(r)]; }
  Vertex et_parent(Vertex v) const { return et_parent_[static_cast<size_t>(v)]; }
  Vertex chord_lo(int ce) const { return chord_lo_[static_cast<size_t>(ce)]; }
  Vertex chord_hi(int ce) const { return chord_hi_[static_cast<size_t>(ce)]; }
  std::span<const std::int32_t> up_chords(Vertex v) const;
  const std::vector<Triangle>& triangles() const { return triangles_; }
  std::int32_t chord_of_edge(EdgeId e) const { return edge_chord_[static_cast<size_t>(e)]; }
  bool edge_is_up(EdgeId e) const { return edge_up_[static_cast<size_t>(e)] != 0; }
  // Chord id for an unordered vertex pair, -1 if absent.
  std::int32_t find_chord(Vertex a, Vertex b) const;

 private:
  const RoadNetwork* network_ = nullptr;
  std::vector<int> rank_;
  std::vector<Vertex> order_;
  std::vector<Vertex> et_parent_;
  std::vector<Vertex> chord_lo_, chord_hi_;  // rank(lo) < rank(hi)
  std::vector<std::int32_t> up_first_;       // per rank position, CSR into up_chords_
  std::vector<std::int32_t> up_chords_;
  std::vector<Triangle> triangles_;          // sorted by apex rank
  std::vector<std::int32_t> edge_chord_;
  std::vector<std::uint8_t> edge_up_;
  std::unordered_map<std::uint64_t, std::int32_t> chord_index_;
};

// Per-metric labels. `up`/`down` carry the basic customization used for
// queries and path unpacking; `dist_up`/`dist_down` additionally apply
// perfect customization, so they equal exact shortest-path distances
// between the chord endpoints.
class CustomizedIndex {
 public:
  CustomizedIndex() = default;

  const MetricIndependentIndex& index() const { return *index_; }
  Cost up(int ce) const { return up_[static_cast<size_t>(ce)]; }
  Cost down(int ce) const { return down_[static_cast<size_t>(ce)]; }
  Cost dist_up(int ce) const { return dist_up_[static_cast<size_t>(ce)]; }
  Cost dist_down(int ce) const { return dist_down_[static_cast<size_t>(ce)]; }
  const std::vector<Cost>& edge_costs() const { return edge_costs_; }

  friend CustomizedIndex cch_customize(const MetricIndependentIndex&, std::span<const Cost>);
  friend class CchQuery;

 private:
  const MetricIndependentIndex* index_ = nullptr;
  std::vector<Cost> up_, down_;            // basic labels
  std::vector<Cost> dist_up_, dist_down_;  // perfect labels
  std::vector<Vertex> mid_up_, mid_down_;  // lower-triangle apex per basic label, or -1
  std::vector<EdgeId> orig_up_, orig_down_;
  std::vector<Cost> edge_costs_;           // the metric this was customized with
};

MetricIndependentIndex cch_preprocess(const RoadNetwork& network);
CustomizedIndex cch_customize(const MetricIndependentIndex& index, std::span<const Cost> edge_costs);

// Elimination-tree query with private search state; safe to use one
// instance per thread over the same immutable CustomizedIndex.
class CchQuery {
 public:
  explicit CchQuery(const CustomizedIndex& customized);
  PathResult run(Vertex s, Vertex t);

 private:
  void touch(Vertex v);
  void unpack(std::int32_t ce, bool upward, Path& out) const;

  const CustomizedIndex* cust_;
  const MetricIndependentIndex* idx_;
  std::vector<Cost> dist_f_, dist_b_;
  std::vector<std::int32_t> pred_f_, pred_b_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
};

// One-shot convenience wrapper.
PathResult cch_query(const CustomizedIndex& customized, Vertex s, Vertex t);

}  // namespace sta
