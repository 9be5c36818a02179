#include "sta/busline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <unordered_set>

namespace sta {

namespace {

struct WorkItem {
  AgentId traveler;
  Path edges;
};

std::int64_t d_of(const Path& p, const RoadNetwork& net) {
  std::int64_t d = 0;
  for (EdgeId e : p) d += net.edge(e).d_ms;
  return d;
}

}  // namespace

std::int64_t BusLine::coverage_ms(const RoadNetwork& network) const {
  std::int64_t total = 0;
  for (const RideSegment& s : assignments) total += d_of(s.edges, network);
  return total;
}

int max_edge_occupancy(const BusLine& line) {
  std::map<EdgeId, int> occupancy;
  for (const RideSegment& s : line.assignments)
    for (EdgeId e : s.edges) occupancy[e]++;
  int worst = 0;
  for (const auto& [e, c] : occupancy) worst = std::max(worst, c);
  return worst;
}

std::vector<BusLine> build_lines(const std::vector<Path>& paths, const RoadNetwork& network,
                                 int capacity) {
  if (capacity < 1) throw ValidationError("bus capacity must be at least 1");
  for (size_t i = 0; i < paths.size(); ++i)
    if (paths[i].empty())
      throw ValidationError("traveler " + std::to_string(i) + ": empty path");

  std::vector<WorkItem> pending;
  for (size_t i = 0; i < paths.size(); ++i)
    pending.push_back({static_cast<AgentId>(i), paths[i]});

  std::vector<BusLine> lines;
  std::vector<std::int64_t> path_count(static_cast<size_t>(network.num_edges()), 0);
  std::vector<char> on_line(static_cast<size_t>(network.num_edges()), 0);
  std::vector<char> vertex_used(static_cast<size_t>(network.num_vertices()), 0);

  while (!pending.empty()) {
    std::fill(path_count.begin(), path_count.end(), 0);
    for (const WorkItem& w : pending)
      for (EdgeId e : w.edges) path_count[static_cast<size_t>(e)]++;

    // Seed at the most used edge, smaller id on ties.
    EdgeId seed = kNoEdge;
    for (EdgeId e = 0; e < network.num_edges(); ++e) {
      if (path_count[static_cast<size_t>(e)] <= 0) continue;
      if (seed == kNoEdge || path_count[static_cast<size_t>(e)] > path_count[static_cast<size_t>(seed)])
        seed = e;
    }
    if (seed == kNoEdge) throw std::logic_error("pending paths but no used edge");

    BusLine line;
    line.edges = {seed};
    vertex_used[static_cast<size_t>(network.edge(seed).tail)] = 1;
    vertex_used[static_cast<size_t>(network.edge(seed).head)] = 1;

    // Extend forward, then backward, along the largest path counts; the
    // line stays a simple path and stops at unused edges.
    for (;;) {
      const Vertex head = network.edge(line.edges.back()).head;
      EdgeId next = kNoEdge;
      for (EdgeId e : network.out_edges(head)) {
        if (path_count[static_cast<size_t>(e)] <= 0) continue;
        if (vertex_used[static_cast<size_t>(network.edge(e).head)]) continue;
        if (next == kNoEdge ||
            path_count[static_cast<size_t>(e)] > path_count[static_cast<size_t>(next)])
          next = e;
      }
      if (next == kNoEdge) break;
      line.edges.push_back(next);
      vertex_used[static_cast<size_t>(network.edge(next).head)] = 1;
    }
    for (;;) {
      const Vertex tail = network.edge(line.edges.front()).tail;
      EdgeId prev = kNoEdge;
      for (EdgeId e : network.in_edges(tail)) {
        if (path_count[static_cast<size_t>(e)] <= 0) continue;
        if (vertex_used[static_cast<size_t>(network.edge(e).tail)]) continue;
        if (prev == kNoEdge ||
            path_count[static_cast<size_t>(e)] > path_count[static_cast<size_t>(prev)])
          prev = e;
      }
      if (prev == kNoEdge) break;
      line.edges.insert(line.edges.begin(), prev);
      vertex_used[static_cast<size_t>(network.edge(prev).tail)] = 1;
    }
    line.tau_ms = d_of(line.edges, network);
    for (EdgeId e : line.edges) on_line[static_cast<size_t>(e)] = 1;

    // Admit overlapping travelers in decreasing overlap order while the
    // seat capacity holds on every line edge, then slice the covered runs
    // out of their paths.
    std::vector<std::pair<std::int64_t, size_t>> overlap_order;  // (d-overlap, pending index)
    for (size_t i = 0; i < pending.size(); ++i) {
      std::int64_t overlap = 0;
      bool touches = false;
      for (EdgeId e : pending[i].edges) {
        if (!on_line[static_cast<size_t>(e)]) continue;
        touches = true;
        overlap += network.edge(e).d_ms;
      }
      if (touches) overlap_order.push_back({overlap, i});
    }
    std::stable_sort(overlap_order.begin(), overlap_order.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });

    std::vector<int> occupancy(static_cast<size_t>(network.num_edges()), 0);
    std::vector<char> admitted(pending.size(), 0);
    for (const auto& [overlap, i] : overlap_order) {
      const WorkItem& w = pending[i];
      bool fits = true;
      for (EdgeId e : w.edges)
        if (on_line[static_cast<size_t>(e)] &&
            occupancy[static_cast<size_t>(e)] + 1 > capacity) {
          fits = false;
          break;
        }
      if (!fits) continue;
      admitted[i] = 1;
      for (EdgeId e : w.edges)
        if (on_line[static_cast<size_t>(e)]) occupancy[static_cast<size_t>(e)]++;
    }

    std::vector<WorkItem> next_pending;
    for (size_t i = 0; i < pending.size(); ++i) {
      WorkItem& w = pending[i];
      if (!admitted[i]) {
        next_pending.push_back(std::move(w));
        continue;
      }
      // covered runs become ride segments, uncovered runs go back in
      Path run;
      bool run_on_line = false;
      auto flush = [&]() {
        if (run.empty()) return;
        if (run_on_line)
          line.assignments.push_back({w.traveler, run});
        else
          next_pending.push_back({w.traveler, run});
        run.clear();
      };
      for (EdgeId e : w.edges) {
        const bool here = on_line[static_cast<size_t>(e)] != 0;
        if (!run.empty() && here != run_on_line) flush();
        run_on_line = here;
        run.push_back(e);
      }
      flush();
    }
    pending = std::move(next_pending);

    for (EdgeId e : line.edges) on_line[static_cast<size_t>(e)] = 0;
    for (EdgeId e : line.edges) {
      vertex_used[static_cast<size_t>(network.edge(e).tail)] = 0;
      vertex_used[static_cast<size_t>(network.edge(e).head)] = 0;
    }
    if (line.assignments.empty())
      throw std::logic_error("line admitted nobody; construction cannot progress");
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<char> knapsack01(std::span<const std::int64_t> weights,
                             std::span<const std::int64_t> values, std::int64_t capacity) {
  if (weights.size() != values.size()) throw ValidationError("weights and values differ in size");
  if (capacity < 0) capacity = 0;
  if (capacity > 20'000'000) throw ValidationError("knapsack budget grid too large");
  const size_t n = weights.size();
  const size_t w_max = static_cast<size_t>(capacity) + 1;
  std::vector<std::int64_t> best(w_max, 0);
  std::vector<std::vector<char>> take(n, std::vector<char>(w_max, 0));
  for (size_t i = 0; i < n; ++i) {
    const std::int64_t wi = weights[i], vi = values[i];
    if (wi < 0 || vi < 0) throw ValidationError("knapsack needs non-negative weights and values");
    if (wi == 0) {
      if (vi > 0) {
        for (size_t w = 0; w < w_max; ++w) best[w] += vi;
        std::fill(take[i].begin(), take[i].end(), 1);
      }
      continue;
    }
    for (std::int64_t w = capacity; w >= wi; --w) {
      const std::int64_t candidate = best[static_cast<size_t>(w - wi)] + vi;
      if (candidate > best[static_cast<size_t>(w)]) {
        best[static_cast<size_t>(w)] = candidate;
        take[i][static_cast<size_t>(w)] = 1;
      }
    }
  }
  std::vector<char> chosen(n, 0);
  std::int64_t w = capacity;
  for (size_t i = n; i-- > 0;) {
    if (take[i][static_cast<size_t>(w)]) {
      chosen[i] = 1;
      if (weights[i] > 0) w -= weights[i];
    }
  }
  return chosen;
}

LinePlan select_lines(std::vector<BusLine> candidates, const std::vector<Path>& paths,
                      const RoadNetwork& network, double budget_h, double freq_per_min,
                      double window_min) {
  if (budget_h < 0.0) throw ValidationError("budget must be non-negative");
  if (freq_per_min <= 0.0 || window_min <= 0.0)
    throw ValidationError("frequency and window must be positive");

  LinePlan plan;
  plan.freq_per_min = freq_per_min;
  plan.window_min = window_min;
  plan.budget_h = budget_h;

  const double departures = window_min * freq_per_min;
  std::vector<std::int64_t> weights, values;
  for (const BusLine& line : candidates) {
    const double bus_ms = departures * static_cast<double>(line.tau_ms);
    weights.push_back(static_cast<std::int64_t>(std::ceil(bus_ms / 1000.0)));  // 1 s cells
    values.push_back(line.coverage_ms(network));
  }
  const auto capacity_cells = static_cast<std::int64_t>(std::floor(budget_h * 3600.0));
  plan.selected = knapsack01(weights, values, capacity_cells);

  plan.lines = std::move(candidates);
  plan.covered_ms_per_traveler.assign(paths.size(), 0);
  for (size_t i = 0; i < plan.lines.size(); ++i) {
    if (!plan.selected[i]) continue;
    plan.bus_time_ms += departures * static_cast<double>(plan.lines[i].tau_ms);
    for (const RideSegment& s : plan.lines[i].assignments) {
      const std::int64_t d = d_of(s.edges, network);
      plan.coverage_ms += d;
      plan.covered_ms_per_traveler[static_cast<size_t>(s.traveler)] += d;
    }
  }
  for (const Path& p : paths) plan.baseline_ms += d_of(p, network);
  return plan;
}

double tvot(const LinePlan& plan, const std::vector<Path>& paths, const RoadNetwork& network) {
  if (plan.covered_ms_per_traveler.size() != paths.size())
    throw ValidationError("plan does not match the path set");
  double feeder_ms = 0.0;
  for (size_t i = 0; i < paths.size(); ++i) {
    const std::int64_t residue = d_of(paths[i], network) - plan.covered_ms_per_traveler[i];
    if (residue < 0) throw std::logic_error("coverage exceeds a traveler's path length");
    feeder_ms += static_cast<double>(residue);
  }
  return (plan.bus_time_ms + feeder_ms) / 3'600'000.0;
}

}  // namespace sta
