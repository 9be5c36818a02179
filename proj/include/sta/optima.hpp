#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sta/game.hpp"
#include "sta/sat.hpp"

namespace sta {

// All simple s-t paths in DFS order (out-edges by ascending id), up to
// `cap` paths; sets *truncated when the cap cut the enumeration short.
std::vector<Path> enumerate_paths(const RoadNetwork& network, Vertex s, Vertex t, int cap,
                                  bool* truncated = nullptr);

struct OptimumResult {
  StrategyProfile profile;  // lexicographically first minimizer
  double total_cost = 0.0;
  std::uint64_t profiles_enumerated = 0;
  bool truncated = false;  // some agent hit the per-agent path cap
};

// System optimum by exhaustive profile enumeration. Refuses to run when the
// profile space exceeds `max_profiles` (default 1e7).
OptimumResult brute_force_optimum(const GameInstance& game, int path_cap = 64,
                                  std::uint64_t max_profiles = 10'000'000);

struct ReducedInstance {
  GameInstance game;
  std::vector<EdgeId> clause_edges;                // one per clause
  std::vector<std::array<Path, 2>> variable_paths;  // per variable: positive, negative literal
  int num_vars = 0;
  double satisfiable_cost = 0.0;  // 3n: reachable iff the formula is satisfiable
};

// Hardness gadget: one forced single-edge O-D pair per clause, one two-path
// O-D pair per variable routed through its literals' clause edges.
ReducedInstance reduce_sat(const SatInstance& sat);

// Two parallel edges where staying selfish is an equilibrium but sharing is
// arbitrarily better: equilibrium/optimum ratio is epsilon/delta.
GameInstance poa_witness(int agents, double epsilon, double delta);

}  // namespace sta
