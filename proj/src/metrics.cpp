#include "sta/metrics.hpp"

#include <map>
#include <string>

#include "sta/dijkstra.hpp"

namespace sta {

namespace {

std::int64_t path_d(const Path& p, const RoadNetwork& net) {
  std::int64_t d = 0;
  for (EdgeId e : p) d += net.edge(e).d_ms;
  return d;
}

struct StretchAccumulator {
  double sum = 0.0;
  int counted = 0;
  int excluded = 0;
  std::vector<double> per_agent;
};

StretchAccumulator stretch_of(const StrategyProfile& profile, const RoadNetwork& network) {
  StretchAccumulator acc;
  // one free-flow search per distinct origin
  std::map<Vertex, std::vector<Cost>> by_origin;
  for (size_t i = 0; i < profile.paths.size(); ++i) {
    const Path& p = profile.paths[i];
    if (p.empty()) throw ValidationError("agent " + std::to_string(i) + ": empty path");
    const Vertex s = network.edge(p.front()).tail;
    const Vertex t = network.edge(p.back()).head;
    auto it = by_origin.find(s);
    if (it == by_origin.end()) it = by_origin.emplace(s, free_flow_distances(network, s)).first;
    const Cost dist = it->second[static_cast<size_t>(t)];
    if (dist <= 0.0) {
      acc.excluded++;
      acc.per_agent.push_back(1.0);
      continue;
    }
    const double stretch = static_cast<double>(path_d(p, network)) / dist;
    acc.per_agent.push_back(stretch);
    acc.sum += stretch;
    acc.counted++;
  }
  return acc;
}

std::vector<double> sharing_of(const StrategyProfile& profile, const RoadNetwork& network) {
  const LoadVector loads = count_loads(profile, network.num_edges());
  std::vector<double> sharing;
  sharing.reserve(profile.paths.size());
  for (size_t i = 0; i < profile.paths.size(); ++i) {
    const Path& p = profile.paths[i];
    const std::int64_t total = path_d(p, network);
    if (total == 0)
      throw ValidationError("agent " + std::to_string(i) +
                            ": sharing undefined for zero-length path");
    std::int64_t weighted = 0;
    for (EdgeId e : p)
      weighted += network.edge(e).d_ms * (loads[static_cast<size_t>(e)] - 1);
    sharing.push_back(static_cast<double>(weighted) / static_cast<double>(total));
  }
  return sharing;
}

}  // namespace

double average_stretch(const StrategyProfile& profile, const RoadNetwork& network) {
  const StretchAccumulator acc = stretch_of(profile, network);
  return acc.counted == 0 ? 1.0 : acc.sum / acc.counted;
}

double average_sharing(const StrategyProfile& profile, const RoadNetwork& network) {
  if (profile.paths.empty()) return 0.0;
  const auto sharing = sharing_of(profile, network);
  double sum = 0.0;
  for (double s : sharing) sum += s;
  return sum / static_cast<double>(sharing.size());
}

std::vector<std::pair<double, double>> sharing_fraction_curve(const StrategyProfile& profile,
                                                              const RoadNetwork& network,
                                                              std::int64_t others,
                                                              std::span<const double> x_grid) {
  if (others < 1) throw ValidationError("co-rider threshold must be positive");
  for (double x : x_grid)
    if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("curve grid values must lie in [0,1]");
  const LoadVector loads = count_loads(profile, network.num_edges());
  std::vector<double> shared_fraction;
  shared_fraction.reserve(profile.paths.size());
  for (size_t i = 0; i < profile.paths.size(); ++i) {
    const Path& p = profile.paths[i];
    std::int64_t total = 0, shared = 0;
    for (EdgeId e : p) {
      total += network.edge(e).d_ms;
      // load >= others + 1 means the agent itself plus at least `others`
      if (loads[static_cast<size_t>(e)] >= others + 1) shared += network.edge(e).d_ms;
    }
    if (total == 0)
      throw ValidationError("agent " + std::to_string(i) +
                            ": sharing undefined for zero-length path");
    shared_fraction.push_back(static_cast<double>(shared) / static_cast<double>(total));
  }
  std::vector<std::pair<double, double>> curve;
  curve.reserve(x_grid.size());
  const double k = static_cast<double>(profile.paths.size());
  for (double x : x_grid) {
    int count = 0;
    for (double f : shared_fraction)
      if (f >= x) ++count;
    curve.push_back({x, k == 0.0 ? 0.0 : static_cast<double>(count) / k});
  }
  return curve;
}

std::vector<double> default_x_grid() {
  std::vector<double> grid;
  grid.reserve(101);
  for (int i = 0; i <= 100; ++i) grid.push_back(static_cast<double>(i) / 100.0);
  return grid;
}

FlowMetrics flow_metrics(const StrategyProfile& profile, const RoadNetwork& network,
                         const StrategyProfile* baseline) {
  FlowMetrics m;
  const StretchAccumulator acc = stretch_of(profile, network);
  m.average_stretch = acc.counted == 0 ? 1.0 : acc.sum / acc.counted;
  m.per_agent_stretch = acc.per_agent;
  m.stretch_excluded = acc.excluded;
  m.per_agent_sharing = sharing_of(profile, network);
  double sum = 0.0;
  for (double s : m.per_agent_sharing) sum += s;
  m.average_sharing =
      m.per_agent_sharing.empty() ? 0.0 : sum / static_cast<double>(m.per_agent_sharing.size());
  if (baseline != nullptr) {
    const double base = average_sharing(*baseline, network);
    if (base > 0.0) m.normalized_average_sharing = m.average_sharing / base;
  }
  return m;
}

}  // namespace sta
