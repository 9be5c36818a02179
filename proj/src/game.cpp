#include "sta/game.hpp"

#include <algorithm>
#include <string>

namespace sta {

void validate_path(const RoadNetwork& network, const Path& path, Vertex origin,
                   Vertex destination, AgentId who) {
  const std::string tag = "agent " + std::to_string(who) + ": ";
  if (path.empty()) throw ValidationError(tag + "empty path");
  for (EdgeId e : path)
    if (e < 0 || e >= network.num_edges())
      throw ValidationError(tag + "edge id " + std::to_string(e) + " out of range");
  if (network.edge(path.front()).tail != origin)
    throw ValidationError(tag + "path starts at vertex " +
                          std::to_string(network.edge(path.front()).tail) + ", origin is " +
                          std::to_string(origin));
  if (network.edge(path.back()).head != destination)
    throw ValidationError(tag + "path ends at vertex " +
                          std::to_string(network.edge(path.back()).head) + ", destination is " +
                          std::to_string(destination));
  for (size_t i = 1; i < path.size(); ++i) {
    if (network.edge(path[i - 1]).head != network.edge(path[i]).tail)
      throw ValidationError(tag + "path not contiguous at position " + std::to_string(i) +
                            " (edge " + std::to_string(path[i - 1]) + " ends at " +
                            std::to_string(network.edge(path[i - 1]).head) + ", edge " +
                            std::to_string(path[i]) + " starts at " +
                            std::to_string(network.edge(path[i]).tail) + ")");
  }
  // Simple: no vertex visited twice.
  std::vector<Vertex> visited{origin};
  for (EdgeId e : path) visited.push_back(network.edge(e).head);
  std::vector<Vertex> sorted = visited;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1])
      throw ValidationError(tag + "path revisits vertex " + std::to_string(sorted[i]));
}

LoadVector compute_loads(const StrategyProfile& profile, const RoadNetwork& network,
                         const DemandSet& demand) {
  if (profile.paths.size() != static_cast<size_t>(demand.num_agents()))
    throw ValidationError("profile has " + std::to_string(profile.paths.size()) +
                          " paths for " + std::to_string(demand.num_agents()) + " agents");
  for (AgentId i = 0; i < demand.num_agents(); ++i) {
    const Agent& a = demand.agent(i);
    validate_path(network, profile.paths[static_cast<size_t>(i)], a.origin, a.destination, i);
  }
  return count_loads(profile, network.num_edges());
}

LoadVector count_loads(const StrategyProfile& profile, EdgeId num_edges) {
  LoadVector loads(static_cast<size_t>(num_edges), 0);
  for (const Path& p : profile.paths)
    for (EdgeId e : p) loads[static_cast<size_t>(e)]++;
  return loads;
}

Cost path_cost_blind(std::span<const EdgeId> path, const LoadVector& loads,
                     const CostModel& model) {
  Cost c = 0.0;
  for (EdgeId e : path) c += model.cost(e, loads[static_cast<size_t>(e)]);
  return c;
}

namespace {

// Scratch membership flags reused across calls in a thread.
thread_local std::vector<char> g_on_path;

void mark(std::span<const EdgeId> edges, size_t need, char value) {
  if (g_on_path.size() < need) g_on_path.resize(need, 0);
  for (EdgeId e : edges) g_on_path[static_cast<size_t>(e)] = value;
}

}  // namespace

Cost path_cost_aware(std::span<const EdgeId> path, const LoadVector& loads, const CostModel& model,
                     std::span<const EdgeId> current) {
  mark(current, loads.size(), 1);
  Cost c = 0.0;
  for (EdgeId e : path) {
    const std::int64_t l = loads[static_cast<size_t>(e)];
    c += model.cost(e, g_on_path[static_cast<size_t>(e)] ? l : l + 1);
  }
  mark(current, loads.size(), 0);
  return c;
}

Cost path_cost_group_aware(std::span<const EdgeId> path, const LoadVector& loads,
                           const CostModel& model, std::int64_t group_size,
                           std::span<const EdgeId> group_current) {
  mark(group_current, loads.size(), 1);
  Cost c = 0.0;
  for (EdgeId e : path) {
    const std::int64_t l = loads[static_cast<size_t>(e)];
    // Loads with the group removed from its current path, plus the whole
    // group joining the candidate.
    c += model.cost(e, g_on_path[static_cast<size_t>(e)] ? l : l + group_size);
  }
  mark(group_current, loads.size(), 0);
  return c;
}

double edge_potential(EdgeId e, std::int64_t load, const CostModel& model) {
  double phi = 0.0;
  for (std::int64_t l = 0; l <= load; ++l) phi += model.cost(e, l);
  return phi;
}

double potential(const LoadVector& loads, const CostModel& model) {
  double phi = 0.0;
  for (EdgeId e = 0; e < static_cast<EdgeId>(loads.size()); ++e)
    phi += edge_potential(e, loads[static_cast<size_t>(e)], model);
  return phi;
}

AnticipatedDecrease anticipated_decrease(const LoadVector& before, const LoadVector& after,
                                         const CostModel& model) {
  if (before.size() != after.size())
    throw ValidationError("load vectors come from different networks");
  AnticipatedDecrease d;
  d.per_edge.resize(before.size(), 0.0);
  for (size_t e = 0; e < before.size(); ++e) {
    const double de = model.cost(static_cast<EdgeId>(e), before[e]) *
                      static_cast<double>(before[e] - after[e]);
    d.per_edge[e] = de;
    d.total += de;
  }
  return d;
}

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_mix(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
}

}  // namespace

std::uint64_t profile_hash(const StrategyProfile& profile) {
  std::uint64_t h = kFnvOffset;
  fnv_mix(h, profile.paths.size());
  for (const Path& p : profile.paths) {
    fnv_mix(h, p.size());
    for (EdgeId e : p) fnv_mix(h, static_cast<std::uint64_t>(e));
  }
  return h;
}

std::uint64_t load_hash(const LoadVector& loads) {
  std::uint64_t h = kFnvOffset;
  for (std::int64_t l : loads) fnv_mix(h, static_cast<std::uint64_t>(l));
  return h;
}

}  // namespace sta
