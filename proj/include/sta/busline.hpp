#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sta/game.hpp"

namespace sta {

// One boarding of one traveler: a contiguous run of line edges that is also
// a contiguous run of the traveler's input path.
struct RideSegment {
  AgentId traveler = -1;
  Path edges;
};

struct BusLine {
  Path edges;  // simple path in the network
  std::int64_t tau_ms = 0;
  std::vector<RideSegment> assignments;

  std::int64_t coverage_ms(const RoadNetwork& network) const;
};

struct LinePlan {
  std::vector<BusLine> lines;
  std::vector<char> selected;
  double freq_per_min = 0.1;
  double window_min = 60.0;
  double budget_h = 0.0;

  double bus_time_ms = 0.0;   // selected lines: window * freq * tau
  std::int64_t coverage_ms = 0;
  std::int64_t baseline_ms = 0;  // sum of input path lengths
  std::vector<std::int64_t> covered_ms_per_traveler;

  double feeder_ms() const { return static_cast<double>(baseline_ms - coverage_ms); }
  double tvot_ms() const { return bus_time_ms + feeder_ms(); }
  double tvot_h() const { return tvot_ms() / 3'600'000.0; }
};

// Greedy trunk-line construction: seed at the edge most paths use, extend
// both ways along the highest path counts, admit overlapping travelers up
// to the seat capacity, slice what the line covers out of their paths, and
// repeat until no path demand remains.
std::vector<BusLine> build_lines(const std::vector<Path>& paths, const RoadNetwork& network,
                                 int capacity);

// Exact 0/1 knapsack over a budget discretized to 1-second cells; maximizes
// covered travel time within the bus operation budget.
LinePlan select_lines(std::vector<BusLine> candidates, const std::vector<Path>& paths,
                      const RoadNetwork& network, double budget_h, double freq_per_min,
                      double window_min);

// Total vehicle operation time in hours: bus time of the selected lines
// plus feeder time for every uncovered piece of every input path.
double tvot(const LinePlan& plan, const std::vector<Path>& paths, const RoadNetwork& network);

// Largest number of concurrent riders on any edge of the line.
int max_edge_occupancy(const BusLine& line);

// DP knapsack used by select_lines; exposed for direct checks.
std::vector<char> knapsack01(std::span<const std::int64_t> weights,
                             std::span<const std::int64_t> values, std::int64_t capacity);

}  // namespace sta
