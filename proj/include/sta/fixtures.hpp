#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sta/game.hpp"

namespace sta {

// A ready-to-run instance. When the dynamics outcome is known in advance,
// expected_trace lists the repeating configurations with their per-agent
// costs, starting from the initial assignment.
struct FixtureInstance {
  RoadNetwork network;
  DemandSet demand;
  CostModel model;

  struct Configuration {
    std::string label;
    StrategyProfile profile;
    std::vector<Cost> agent_costs;
  };
  std::vector<Configuration> expected_trace;
};

// Two agents racing for two synergistic edges: simultaneous impact-aware
// best response oscillates between configurations A and B forever.
// epsilon must lie strictly between 0 and 1.
FixtureInstance fig2_instance(double epsilon);

// Four agents (one group of two plus two singletons) on a corridor with
// three synergistic trunk edges: group-simultaneous group-impact-aware best
// response cycles through configurations A, B, C, D.
FixtureInstance fig3_instance();

enum class DemandPattern { uniform, clustered };

// 4-neighbour grid digraph with d uniform in [100, 1000] ms and O-D pairs
// sampled by the pattern; fully deterministic under the seed. The cost
// model defaults to the selfish-share family with parameter r.
FixtureInstance grid_instance(int width, int height, AgentId num_agents, DemandPattern pattern,
                              std::uint64_t seed, double r = 0.0);

// Grid topology with random integer-valued synergistic step tables; meant
// for property suites that want exact arithmetic.
FixtureInstance random_step_instance(int width, int height, AgentId num_agents,
                                     std::uint64_t seed);

}  // namespace sta
