#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sta/cch.hpp"
#include "sta/dijkstra.hpp"
#include "sta/game.hpp"

namespace sta {

enum class Variant {
  sequential_aware,
  simultaneous_aware,
  sequential_blind,
  simultaneous_blind,
  group_simultaneous_group_aware,
};

std::string variant_name(Variant v);
std::optional<Variant> parse_variant(const std::string& name);

struct DynamicsConfig {
  Variant variant = Variant::simultaneous_blind;
  int max_rounds = 1000;  // best-response rounds after the initial assignment
  bool record_trace = true;
  int threads = 0;  // query workers for simultaneous blind rounds; 0 = auto, 1 = serial
};

struct RoundReport {
  int round = 0;
  double phi = 0.0;    // potential after the round
  double delta = 0.0;  // anticipated decrease relative to the previous round
  int switches = 0;
  double customize_ms = 0.0;
  double query_ms = 0.0;
  std::uint64_t loads_hash = 0;
  std::vector<Cost> agent_costs;  // actual cost per agent; recorded for small k
};

struct DynamicsResult {
  enum class Outcome { converged, cycle, round_limit };
  Outcome outcome = Outcome::round_limit;
  int rounds = 0;  // rounds run, counting the initial assignment and the confirming round
  int cycle_period = 0;
  int first_repeat_round = -1;
  StrategyProfile profile;
  LoadVector loads;
  std::vector<RoundReport> trace;
};

enum class CostMode { blind, aware };

struct BestResponse {
  Path path;         // the chosen path; the current one if nothing strictly better exists
  Cost anticipated;  // its cost under the mode's semantics
  bool switched;
};

// Minimum-anticipated-cost response of one agent. Keeps the current path
// unless a strictly cheaper one exists.
BestResponse best_response(AgentId agent, const StrategyProfile& profile, const LoadVector& loads,
                           const GameInstance& game, CostMode mode);

// Shared response of one O-D group under group-impact-aware costs.
BestResponse group_best_response(int group, const StrategyProfile& profile,
                                 const LoadVector& loads, const GameInstance& game);

struct EquilibriumCheck {
  bool equilibrium = true;
  AgentId deviator = -1;  // first agent (by id) with a strictly improving response
};

EquilibriumCheck is_equilibrium(const StrategyProfile& profile, const GameInstance& game,
                                CostMode mode);

// Iterated best response. Round 0 assigns every agent its zero-load
// shortest path; later rounds follow the configured variant. Stops on a
// zero-switch round (converged), a repeated profile (cycle), or the round
// budget. Rosenthal-potential invariants are checked every round for the
// variants whose convergence proof guarantees them.
class DynamicsEngine {
 public:
  DynamicsEngine(const GameInstance& game, DynamicsConfig config);

  StrategyProfile initial_profile();
  // One best-response round; returns the new profile and its report.
  std::pair<StrategyProfile, RoundReport> run_round(const StrategyProfile& from);
  DynamicsResult run();

 private:
  struct Decision {
    AgentId agent;
    Path path;
  };
  std::vector<Decision> blind_round(const StrategyProfile& profile, const LoadVector& loads,
                                    bool sequential, LoadVector& working_loads,
                                    StrategyProfile& working_profile, RoundReport& report);
  std::vector<Decision> aware_round(const StrategyProfile& profile, const LoadVector& loads,
                                    bool sequential, LoadVector& working_loads,
                                    StrategyProfile& working_profile, RoundReport& report);
  std::vector<Decision> group_round(const StrategyProfile& profile, const LoadVector& loads,
                                    RoundReport& report);
  void customize_blind(const LoadVector& loads, RoundReport& report);

  const GameInstance& game_;
  DynamicsConfig config_;
  int query_threads_ = 1;
  std::optional<MetricIndependentIndex> cch_;
  std::optional<CustomizedIndex> customized_;
  Dijkstra dijkstra_;
};

DynamicsResult run_dynamics(const GameInstance& game, const DynamicsConfig& config);

}  // namespace sta
