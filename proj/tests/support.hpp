#pragma once

#include <cstdint>
#include <vector>

#include "sta/cost_model.hpp"
#include "sta/game.hpp"
#include "sta/graph.hpp"

namespace sta::test {

// splitmix64: deterministic across platforms, unlike <random> distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Random connected digraph on n vertices: a random spanning arborescence in
// both directions plus extra arcs, so every pair is mutually reachable.
inline RoadNetwork random_connected_network(Rng& rng, Vertex n, int extra_edges,
                                            std::int64_t max_d = 1000) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) {
    const Vertex u = static_cast<Vertex>(rng.uniform(0, v - 1));
    edges.push_back({u, v, rng.uniform(0, max_d)});
    edges.push_back({v, u, rng.uniform(0, max_d)});
  }
  for (int i = 0; i < extra_edges; ++i) {
    const Vertex a = static_cast<Vertex>(rng.uniform(0, n - 1));
    const Vertex b = static_cast<Vertex>(rng.uniform(0, n - 1));
    if (a == b) continue;
    edges.push_back({a, b, rng.uniform(0, max_d)});
  }
  return RoadNetwork(n, std::move(edges));
}

// Random integer-valued synergistic step table, costs in [0, 1000].
inline StepTable random_step_table(Rng& rng) {
  std::vector<StepTable::Point> pts;
  Cost cost = static_cast<Cost>(rng.uniform(0, 1000));
  pts.push_back({0, cost});
  std::int64_t threshold = 0;
  const int drops = static_cast<int>(rng.uniform(0, 3));
  for (int i = 0; i < drops && cost > 0; ++i) {
    threshold += rng.uniform(1, 5);
    cost = static_cast<Cost>(rng.uniform(0, static_cast<std::int64_t>(cost)));
    pts.push_back({threshold, cost});
  }
  return StepTable(std::move(pts));
}

inline CostModel random_step_model(Rng& rng, EdgeId num_edges) {
  std::vector<StepTable> tables;
  tables.reserve(static_cast<size_t>(num_edges));
  for (EdgeId e = 0; e < num_edges; ++e) tables.push_back(random_step_table(rng));
  return CostModel::step_tables(std::move(tables));
}

}  // namespace sta::test
