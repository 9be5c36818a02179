#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sta/cost_model.hpp"
#include "sta/demand.hpp"
#include "sta/graph.hpp"

namespace sta {

// A strategy: simple path as an ordered edge-id sequence.
using Path = std::vector<EdgeId>;

// One path per agent, indexed by agent id.
struct StrategyProfile {
  std::vector<Path> paths;

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
};

// Per-edge agent counts.
using LoadVector = std::vector<std::int64_t>;

struct GameInstance {
  RoadNetwork network;
  DemandSet demand;
  CostModel model;
};

// Throws unless `path` is a simple origin-destination path in `network`.
// `who` names the offender in error messages.
void validate_path(const RoadNetwork& network, const Path& path, Vertex origin,
                   Vertex destination, AgentId who);

// Validates the profile against network and demand, then counts per-edge loads.
LoadVector compute_loads(const StrategyProfile& profile, const RoadNetwork& network,
                         const DemandSet& demand);
// Unvalidated count (paths already known to be consistent).
LoadVector count_loads(const StrategyProfile& profile, EdgeId num_edges);

// cost(p, S): every edge at its current load.
Cost path_cost_blind(std::span<const EdgeId> path, const LoadVector& loads, const CostModel& model);

// cost(p, (S_-i, p)) for an agent currently on `current`: edges already used
// by the agent keep their load, edges it would join count one more.
Cost path_cost_aware(std::span<const EdgeId> path, const LoadVector& loads, const CostModel& model,
                     std::span<const EdgeId> current);

// Group of `group_size` equivalent agents currently sharing `group_current`:
// the whole group leaves its path and joins the candidate together.
Cost path_cost_group_aware(std::span<const EdgeId> path, const LoadVector& loads,
                           const CostModel& model, std::int64_t group_size,
                           std::span<const EdgeId> group_current);

// Rosenthal potential: phi(S) = sum_e sum_{l=0}^{loads_e} c_e(l).
// The l=0 term is included; it only shifts phi by a constant.
double potential(const LoadVector& loads, const CostModel& model);
double edge_potential(EdgeId e, std::int64_t load, const CostModel& model);

// Anticipated cost decrease between two load vectors, priced at `before`:
// Delta_e = c_e(before_e) * (before_e - after_e).
struct AnticipatedDecrease {
  double total = 0.0;
  std::vector<double> per_edge;
};
AnticipatedDecrease anticipated_decrease(const LoadVector& before, const LoadVector& after,
                                         const CostModel& model);

// Order-independent fingerprint of a profile (FNV-1a over path contents).
std::uint64_t profile_hash(const StrategyProfile& profile);
std::uint64_t load_hash(const LoadVector& loads);

}  // namespace sta
