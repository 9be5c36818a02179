#pragma once

#include <vector>

#include "sta/graph.hpp"

namespace sta {

struct Agent {
  AgentId id = 0;
  Vertex origin = kNoVertex;
  Vertex destination = kNoVertex;
};

// Agents with their O-D pairs, partitioned into groups of equivalent agents
// (identical O-D pair). Groups are ordered by their smallest member id.
class DemandSet {
 public:
  DemandSet() = default;
  explicit DemandSet(std::vector<Agent> agents);

  AgentId num_agents() const { return static_cast<AgentId>(agents_.size()); }
  const Agent& agent(AgentId i) const { return agents_[static_cast<size_t>(i)]; }
  const std::vector<Agent>& agents() const { return agents_; }

  const std::vector<std::vector<AgentId>>& groups() const { return groups_; }
  int group_of(AgentId i) const { return group_of_[static_cast<size_t>(i)]; }

  // Throws unless every destination is reachable from its origin.
  void validate_reachable(const RoadNetwork& network) const;

 private:
  std::vector<Agent> agents_;
  std::vector<std::vector<AgentId>> groups_;
  std::vector<int> group_of_;
};

}  // namespace sta
