#include "sta/demand.hpp"

#include <map>
#include <string>
#include <utility>

namespace sta {

DemandSet::DemandSet(std::vector<Agent> agents) : agents_(std::move(agents)) {
  group_of_.resize(agents_.size(), -1);
  std::map<std::pair<Vertex, Vertex>, int> index;
  for (size_t i = 0; i < agents_.size(); ++i) {
    Agent& a = agents_[i];
    a.id = static_cast<AgentId>(i);
    if (a.origin == a.destination)
      throw ValidationError("agent " + std::to_string(i) + ": origin equals destination (" +
                            std::to_string(a.origin) + ")");
    if (a.origin < 0 || a.destination < 0)
      throw ValidationError("agent " + std::to_string(i) + ": negative vertex id");
    auto [it, fresh] = index.try_emplace({a.origin, a.destination}, static_cast<int>(groups_.size()));
    if (fresh) groups_.emplace_back();
    group_of_[i] = it->second;
    groups_[static_cast<size_t>(it->second)].push_back(a.id);
  }
}

void DemandSet::validate_reachable(const RoadNetwork& network) const {
  for (const Agent& a : agents_) {
    if (a.origin >= network.num_vertices() || a.destination >= network.num_vertices())
      throw ValidationError("agent " + std::to_string(a.id) + ": vertex out of range");
    if (!network.reachable(a.origin, a.destination))
      throw ValidationError("agent " + std::to_string(a.id) + ": destination " +
                            std::to_string(a.destination) + " unreachable from origin " +
                            std::to_string(a.origin));
  }
}

}  // namespace sta
