#pragma once

#include <optional>
#include <vector>

#include "sta/game.hpp"

namespace sta {

struct FlowMetrics {
  double average_stretch = 1.0;
  double average_sharing = 0.0;
  std::optional<double> normalized_average_sharing;
  std::vector<double> per_agent_stretch;
  std::vector<double> per_agent_sharing;
  int stretch_excluded = 0;  // agents with zero free-flow distance, skipped with a warning
};

// Mean over agents of D(p_i) / dist(s_i, t_i), free-flow travel times.
// Agents whose shortest distance is 0 are excluded from the mean.
double average_stretch(const StrategyProfile& profile, const RoadNetwork& network);

// Mean over agents of the travel-time-weighted number of co-riders:
// sum_{e in p_i} d(e) * (load_e - 1) / D(p_i).
double average_sharing(const StrategyProfile& profile, const RoadNetwork& network);

// For each x in x_grid, the fraction of agents whose d-weighted fraction of
// path shared with at least `others` other agents is >= x.
std::vector<std::pair<double, double>> sharing_fraction_curve(const StrategyProfile& profile,
                                                              const RoadNetwork& network,
                                                              std::int64_t others,
                                                              std::span<const double> x_grid);

std::vector<double> default_x_grid();  // 0.00, 0.01, ..., 1.00

// Everything at once; the baseline (typically the r=1 flow on the same
// demand) normalizes average sharing when it has any sharing at all.
FlowMetrics flow_metrics(const StrategyProfile& profile, const RoadNetwork& network,
                         const StrategyProfile* baseline = nullptr);

}  // namespace sta
