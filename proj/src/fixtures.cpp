#include "sta/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace sta {

namespace {

// splitmix64; deterministic regardless of platform or standard library.
struct SplitMix {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

std::int64_t fixture_d(Cost load_one_cost) { return std::llround(load_one_cost); }

}  // namespace

FixtureInstance fig2_instance(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ValidationError("epsilon must lie strictly between 0 and 1");

  enum : Vertex { s1, s2, u1, u2, v1, v2, t1, t2, n };
  std::vector<StepTable> tables;
  std::vector<Edge> edges;
  auto add = [&](Vertex tail, Vertex head, StepTable table) {
    edges.push_back({tail, head, fixture_d(table.cost(1))});
    tables.push_back(std::move(table));
  };
  add(s1, u1, StepTable::constant(0.0));      // 0
  add(s2, u2, StepTable::constant(0.0));      // 1
  add(s1, u2, StepTable::constant(epsilon));  // 2
  add(s2, u1, StepTable::constant(epsilon));  // 3
  add(u1, v1, StepTable::drop(1.0, 2, 0.0));  // 4, bold top
  add(u2, v2, StepTable::drop(1.0, 2, 0.0));  // 5, bold bottom
  add(v1, t1, StepTable::constant(0.0));      // 6
  add(v2, t1, StepTable::constant(0.0));      // 7
  add(v1, t2, StepTable::constant(0.0));      // 8
  add(v2, t2, StepTable::constant(0.0));      // 9

  FixtureInstance f{RoadNetwork(n, std::move(edges)),
                    DemandSet({{0, s1, t1}, {1, s2, t2}}),
                    CostModel::step_tables(std::move(tables)),
                    {}};
  // blue = agent 0, red = agent 1
  const Path blue_top{0, 4, 6}, blue_bottom{2, 5, 7};
  const Path red_bottom{1, 5, 9}, red_top{3, 4, 8};
  f.expected_trace = {
      {"A", StrategyProfile{{blue_top, red_bottom}}, {1.0, 1.0}},
      {"B", StrategyProfile{{blue_bottom, red_top}}, {1.0 + epsilon, 1.0 + epsilon}},
  };
  return f;
}

FixtureInstance fig3_instance() {
  enum : Vertex { h0, h1, h2, h3, h4, s3, t3, s4, t4, n };
  std::vector<StepTable> tables;
  std::vector<Edge> edges;
  auto add = [&](Vertex tail, Vertex head, StepTable table) {
    edges.push_back({tail, head, fixture_d(table.cost(1))});
    tables.push_back(std::move(table));
  };
  add(h0, h1, StepTable::drop(5.0, 3, 1.0));  // 0, bold
  add(h1, h2, StepTable::drop(5.0, 3, 1.0));  // 1, bold
  add(h2, h3, StepTable::constant(10.0));     // 2
  add(h3, h4, StepTable::drop(7.0, 3, 1.0));  // 3, bold
  add(h0, h4, StepTable::constant(20.0));     // 4, top
  add(s3, h0, StepTable::constant(0.0));      // 5, red early up
  add(h1, t3, StepTable::constant(10.0));     // 6, red early down
  add(s3, h3, StepTable::constant(9.0));      // 7, red late up
  add(h4, t3, StepTable::constant(0.0));      // 8, red late down
  add(s4, h1, StepTable::constant(0.0));      // 9, orange early up
  add(h2, t4, StepTable::constant(10.0));     // 10, orange early down
  add(s4, h3, StepTable::constant(9.0));      // 11, orange late up
  add(h4, t4, StepTable::constant(0.0));      // 12, orange late down

  FixtureInstance f{RoadNetwork(n, std::move(edges)),
                    DemandSet({{0, h0, h4}, {1, h0, h4}, {2, s3, t3}, {3, s4, t4}}),
                    CostModel::step_tables(std::move(tables)),
                    {}};
  // blue = agents 0 and 1 (one group), red = agent 2, orange = agent 3
  const Path blue_top{4}, blue_horizontal{0, 1, 2, 3};
  const Path red_early{5, 0, 6}, red_late{7, 3, 8};
  const Path orange_early{9, 1, 10}, orange_late{11, 3, 12};
  f.expected_trace = {
      {"A", StrategyProfile{{blue_top, blue_top, red_early, orange_early}},
       {20.0, 20.0, 15.0, 15.0}},
      {"B", StrategyProfile{{blue_horizontal, blue_horizontal, red_early, orange_early}},
       {19.0, 19.0, 11.0, 11.0}},
      {"C", StrategyProfile{{blue_horizontal, blue_horizontal, red_late, orange_late}},
       {21.0, 21.0, 10.0, 10.0}},
      {"D", StrategyProfile{{blue_top, blue_top, red_late, orange_late}},
       {20.0, 20.0, 16.0, 16.0}},
  };
  return f;
}

namespace {

RoadNetwork grid_network(int width, int height, SplitMix& rng) {
  if (width < 2 || height < 2) throw ValidationError("grid needs width and height >= 2");
  std::vector<Edge> edges;
  auto id = [width](int x, int y) { return static_cast<Vertex>(y * width + x); };
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (x + 1 < width) {
        edges.push_back({id(x, y), id(x + 1, y), rng.uniform(100, 1000)});
        edges.push_back({id(x + 1, y), id(x, y), rng.uniform(100, 1000)});
      }
      if (y + 1 < height) {
        edges.push_back({id(x, y), id(x, y + 1), rng.uniform(100, 1000)});
        edges.push_back({id(x, y + 1), id(x, y), rng.uniform(100, 1000)});
      }
    }
  }
  return RoadNetwork(static_cast<Vertex>(width * height), std::move(edges));
}

DemandSet grid_demand(int width, int height, AgentId num_agents, DemandPattern pattern,
                      SplitMix& rng) {
  if (num_agents < 1) throw ValidationError("need at least one agent");
  const Vertex n = static_cast<Vertex>(width * height);
  std::vector<Agent> agents;
  agents.reserve(static_cast<size_t>(num_agents));
  if (pattern == DemandPattern::uniform) {
    while (static_cast<AgentId>(agents.size()) < num_agents) {
      const Vertex o = static_cast<Vertex>(rng.uniform(0, n - 1));
      const Vertex d = static_cast<Vertex>(rng.uniform(0, n - 1));
      if (o != d) agents.push_back({0, o, d});
    }
    return DemandSet(std::move(agents));
  }
  // clustered: a few origin/destination hotspots with local scatter
  const int clusters = 8;
  std::vector<std::pair<Vertex, Vertex>> hubs;
  for (int c = 0; c < clusters; ++c)
    hubs.push_back({static_cast<Vertex>(rng.uniform(0, n - 1)),
                    static_cast<Vertex>(rng.uniform(0, n - 1))});
  auto scatter = [&](Vertex hub) {
    const int radius = std::max(1, std::min(width, height) / 8);
    const int hx = static_cast<int>(hub) % width, hy = static_cast<int>(hub) / width;
    const int x = std::clamp(hx + static_cast<int>(rng.uniform(-radius, radius)), 0, width - 1);
    const int y = std::clamp(hy + static_cast<int>(rng.uniform(-radius, radius)), 0, height - 1);
    return static_cast<Vertex>(y * width + x);
  };
  while (static_cast<AgentId>(agents.size()) < num_agents) {
    const auto& hub = hubs[static_cast<size_t>(rng.uniform(0, clusters - 1))];
    const Vertex o = scatter(hub.first);
    const Vertex d = scatter(hub.second);
    if (o != d) agents.push_back({0, o, d});
  }
  return DemandSet(std::move(agents));
}

}  // namespace

FixtureInstance grid_instance(int width, int height, AgentId num_agents, DemandPattern pattern,
                              std::uint64_t seed, double r) {
  SplitMix rng{seed};
  RoadNetwork network = grid_network(width, height, rng);
  DemandSet demand = grid_demand(width, height, num_agents, pattern, rng);
  CostModel model = CostModel::selfish_share(r, network);
  return {std::move(network), std::move(demand), std::move(model), {}};
}

FixtureInstance random_step_instance(int width, int height, AgentId num_agents,
                                     std::uint64_t seed) {
  SplitMix rng{seed};
  RoadNetwork network = grid_network(width, height, rng);
  DemandSet demand = grid_demand(width, height, num_agents, DemandPattern::uniform, rng);
  std::vector<StepTable> tables;
  tables.reserve(static_cast<size_t>(network.num_edges()));
  for (EdgeId e = 0; e < network.num_edges(); ++e) {
    std::vector<StepTable::Point> pts;
    Cost cost = static_cast<Cost>(rng.uniform(0, 1000));
    pts.push_back({0, cost});
    std::int64_t threshold = 0;
    const int drops = static_cast<int>(rng.uniform(0, 3));
    for (int i = 0; i < drops && cost > 0; ++i) {
      threshold += rng.uniform(1, 4);
      cost = static_cast<Cost>(rng.uniform(0, static_cast<std::int64_t>(cost)));
      pts.push_back({threshold, cost});
    }
    tables.emplace_back(std::move(pts));
  }
  CostModel model = CostModel::step_tables(std::move(tables));
  return {std::move(network), std::move(demand), std::move(model), {}};
}

}  // namespace sta
