#include "sta/dynamics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace sta {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

constexpr AgentId kCostTraceLimit = 64;

bool is_blind(Variant v) {
  return v == Variant::sequential_blind || v == Variant::simultaneous_blind;
}

bool is_sequential(Variant v) {
  return v == Variant::sequential_blind || v == Variant::sequential_aware;
}

// Membership flags for the agent's current path, reusable across agents.
class OverlayMetric {
 public:
  explicit OverlayMetric(size_t num_edges) : on_path_(num_edges, 0) {}

  void set_path(std::span<const EdgeId> path) {
    for (EdgeId e : marked_) on_path_[static_cast<size_t>(e)] = 0;
    marked_.assign(path.begin(), path.end());
    for (EdgeId e : marked_) on_path_[static_cast<size_t>(e)] = 1;
  }
  bool on_path(EdgeId e) const { return on_path_[static_cast<size_t>(e)] != 0; }

 private:
  std::vector<char> on_path_;
  std::vector<EdgeId> marked_;
};

}  // namespace

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::sequential_aware: return "seq-aware";
    case Variant::simultaneous_aware: return "sim-aware";
    case Variant::sequential_blind: return "seq-blind";
    case Variant::simultaneous_blind: return "sim-blind";
    case Variant::group_simultaneous_group_aware: return "group-aware";
  }
  return "?";
}

std::optional<Variant> parse_variant(const std::string& name) {
  if (name == "seq-aware") return Variant::sequential_aware;
  if (name == "sim-aware") return Variant::simultaneous_aware;
  if (name == "seq-blind") return Variant::sequential_blind;
  if (name == "sim-blind") return Variant::simultaneous_blind;
  if (name == "group-aware") return Variant::group_simultaneous_group_aware;
  return std::nullopt;
}

BestResponse best_response(AgentId agent, const StrategyProfile& profile, const LoadVector& loads,
                           const GameInstance& game, CostMode mode) {
  const Agent& a = game.demand.agent(agent);
  const Path& current = profile.paths[static_cast<size_t>(agent)];
  Dijkstra search(game.network);
  PathResult found;
  Cost current_cost, candidate_cost;
  if (mode == CostMode::blind) {
    found = search.run(a.origin, a.destination, [&](EdgeId e) {
      return game.model.cost(e, loads[static_cast<size_t>(e)]);
    });
    current_cost = path_cost_blind(current, loads, game.model);
    candidate_cost = path_cost_blind(found.path, loads, game.model);
  } else {
    OverlayMetric overlay(loads.size());
    overlay.set_path(current);
    found = search.run(a.origin, a.destination, [&](EdgeId e) {
      const std::int64_t l = loads[static_cast<size_t>(e)];
      return game.model.cost(e, overlay.on_path(e) ? l : l + 1);
    });
    current_cost = path_cost_blind(current, loads, game.model);
    candidate_cost = path_cost_aware(found.path, loads, game.model, current);
  }
  if (found.path != current && candidate_cost < current_cost)
    return {std::move(found.path), candidate_cost, true};
  return {current, current_cost, false};
}

BestResponse group_best_response(int group, const StrategyProfile& profile,
                                 const LoadVector& loads, const GameInstance& game) {
  const auto& members = game.demand.groups()[static_cast<size_t>(group)];
  const auto size = static_cast<std::int64_t>(members.size());
  const Path& current = profile.paths[static_cast<size_t>(members.front())];
  for (AgentId m : members)
    if (profile.paths[static_cast<size_t>(m)] != current)
      throw std::logic_error("group members diverged onto different paths");
  const Agent& a = game.demand.agent(members.front());
  OverlayMetric overlay(loads.size());
  overlay.set_path(current);
  Dijkstra search(game.network);
  PathResult found = search.run(a.origin, a.destination, [&](EdgeId e) {
    const std::int64_t l = loads[static_cast<size_t>(e)];
    return game.model.cost(e, overlay.on_path(e) ? l : l + size);
  });
  const Cost current_cost = path_cost_blind(current, loads, game.model);
  const Cost candidate_cost =
      path_cost_group_aware(found.path, loads, game.model, size, current);
  if (found.path != current && candidate_cost < current_cost)
    return {std::move(found.path), candidate_cost, true};
  return {current, current_cost, false};
}

EquilibriumCheck is_equilibrium(const StrategyProfile& profile, const GameInstance& game,
                                CostMode mode) {
  const LoadVector loads = compute_loads(profile, game.network, game.demand);
  for (AgentId i = 0; i < game.demand.num_agents(); ++i)
    if (best_response(i, profile, loads, game, mode).switched) return {false, i};
  return {true, -1};
}

DynamicsEngine::DynamicsEngine(const GameInstance& game, DynamicsConfig config)
    : game_(game), config_(config), dijkstra_(game.network) {
  if (config_.max_rounds < 1) throw ValidationError("max_rounds must be at least 1");
  if (game_.model.num_edges() != game_.network.num_edges())
    throw ValidationError("cost model covers " + std::to_string(game_.model.num_edges()) +
                          " edges, network has " + std::to_string(game_.network.num_edges()));
  if (game_.model.min_cost() < 0.0)
    throw ValidationError("cost model admits negative costs; routing requires >= 0");
  game_.demand.validate_reachable(game_.network);

  if (is_blind(config_.variant)) cch_ = cch_preprocess(game_.network);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  query_threads_ =
      config_.threads == 0 ? static_cast<int>(std::min(hw, 8u)) : std::max(1, config_.threads);
}

void DynamicsEngine::customize_blind(const LoadVector& loads, RoundReport& report) {
  std::vector<Cost> metric(loads.size());
  for (size_t e = 0; e < loads.size(); ++e)
    metric[e] = game_.model.cost(static_cast<EdgeId>(e), loads[e]);
  const auto start = Clock::now();
  customized_ = cch_customize(*cch_, metric);
  report.customize_ms += ms_since(start);
}

std::vector<DynamicsEngine::Decision> DynamicsEngine::blind_round(
    const StrategyProfile& profile, const LoadVector& loads, bool sequential,
    LoadVector& working_loads, StrategyProfile& working_profile, RoundReport& report) {
  std::vector<Decision> switched;
  const AgentId k = game_.demand.num_agents();

  if (sequential) {
    bool dirty = true;
    for (AgentId i = 0; i < k; ++i) {
      if (dirty) {
        customize_blind(working_loads, report);
        dirty = false;
      }
      const Agent& a = game_.demand.agent(i);
      const auto start = Clock::now();
      CchQuery query(*customized_);
      PathResult found = query.run(a.origin, a.destination);
      report.query_ms += ms_since(start);
      Path& current = working_profile.paths[static_cast<size_t>(i)];
      const Cost current_cost = path_cost_blind(current, working_loads, game_.model);
      const Cost candidate_cost = path_cost_blind(found.path, working_loads, game_.model);
      if (found.path != current && candidate_cost < current_cost) {
        for (EdgeId e : current) working_loads[static_cast<size_t>(e)]--;
        for (EdgeId e : found.path) working_loads[static_cast<size_t>(e)]++;
        current = found.path;
        switched.push_back({i, std::move(found.path)});
        dirty = true;
      }
    }
    return switched;
  }

  customize_blind(loads, report);
  std::vector<Path> candidates(static_cast<size_t>(k));
  const auto start = Clock::now();
  const int threads =
      std::min<int>(query_threads_, std::max<int>(1, static_cast<int>(k) / 64));
  auto worker = [&](AgentId begin, AgentId end) {
    CchQuery query(*customized_);
    for (AgentId i = begin; i < end; ++i) {
      const Agent& a = game_.demand.agent(i);
      candidates[static_cast<size_t>(i)] = query.run(a.origin, a.destination).path;
    }
  };
  if (threads <= 1) {
    worker(0, k);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(threads));
    const AgentId chunk = (k + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const AgentId begin = t * chunk, end = std::min<AgentId>(k, begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        try {
          worker(begin, end);
        } catch (...) {
          errors[static_cast<size_t>(t)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors)
      if (err) std::rethrow_exception(err);
  }
  report.query_ms += ms_since(start);

  for (AgentId i = 0; i < k; ++i) {
    Path& current = working_profile.paths[static_cast<size_t>(i)];
    Path& cand = candidates[static_cast<size_t>(i)];
    if (cand == current) continue;
    const Cost current_cost = path_cost_blind(current, loads, game_.model);
    const Cost candidate_cost = path_cost_blind(cand, loads, game_.model);
    if (candidate_cost < current_cost) switched.push_back({i, std::move(cand)});
  }
  for (const Decision& d : switched) {
    Path& current = working_profile.paths[static_cast<size_t>(d.agent)];
    for (EdgeId e : current) working_loads[static_cast<size_t>(e)]--;
    for (EdgeId e : d.path) working_loads[static_cast<size_t>(e)]++;
    current = d.path;
  }
  return switched;
}

std::vector<DynamicsEngine::Decision> DynamicsEngine::aware_round(
    const StrategyProfile& profile, const LoadVector& loads, bool sequential,
    LoadVector& working_loads, StrategyProfile& working_profile, RoundReport& report) {
  const AgentId k = game_.demand.num_agents();
  const size_t m = loads.size();
  std::vector<Cost> stay(m), join(m);
  const auto refresh_edge = [&](size_t e) {
    stay[e] = game_.model.cost(static_cast<EdgeId>(e), working_loads[e]);
    join[e] = game_.model.cost(static_cast<EdgeId>(e), working_loads[e] + 1);
  };
  const auto t_setup = Clock::now();
  for (size_t e = 0; e < m; ++e) refresh_edge(e);
  report.customize_ms += ms_since(t_setup);

  OverlayMetric overlay(m);
  std::vector<Decision> switched;
  for (AgentId i = 0; i < k; ++i) {
    const Agent& a = game_.demand.agent(i);
    Path& current = working_profile.paths[static_cast<size_t>(i)];
    overlay.set_path(current);
    const auto start = Clock::now();
    PathResult found = dijkstra_.run(a.origin, a.destination, [&](EdgeId e) {
      return overlay.on_path(e) ? stay[static_cast<size_t>(e)] : join[static_cast<size_t>(e)];
    });
    report.query_ms += ms_since(start);
    Cost current_cost = 0.0, candidate_cost = 0.0;
    for (EdgeId e : current) current_cost += stay[static_cast<size_t>(e)];
    for (EdgeId e : found.path)
      candidate_cost +=
          overlay.on_path(e) ? stay[static_cast<size_t>(e)] : join[static_cast<size_t>(e)];
    if (found.path != current && candidate_cost < current_cost) {
      if (sequential) {
        for (EdgeId e : current) working_loads[static_cast<size_t>(e)]--;
        for (EdgeId e : found.path) working_loads[static_cast<size_t>(e)]++;
        for (EdgeId e : current) refresh_edge(static_cast<size_t>(e));
        for (EdgeId e : found.path) refresh_edge(static_cast<size_t>(e));
        current = found.path;
      }
      switched.push_back({i, std::move(found.path)});
    }
  }
  if (!sequential) {
    for (const Decision& d : switched) {
      Path& current = working_profile.paths[static_cast<size_t>(d.agent)];
      for (EdgeId e : current) working_loads[static_cast<size_t>(e)]--;
      for (EdgeId e : d.path) working_loads[static_cast<size_t>(e)]++;
      current = d.path;
    }
  }
  return switched;
}

std::vector<DynamicsEngine::Decision> DynamicsEngine::group_round(const StrategyProfile& profile,
                                                                  const LoadVector& loads,
                                                                  RoundReport& report) {
  // Every group evaluates against the round-start loads, knowing its
  // members move together; all group switches apply at once.
  std::vector<Decision> switched;
  const auto start = Clock::now();
  for (int g = 0; g < static_cast<int>(game_.demand.groups().size()); ++g) {
    BestResponse r = group_best_response(g, profile, loads, game_);
    if (r.switched)
      for (AgentId member : game_.demand.groups()[static_cast<size_t>(g)])
        switched.push_back({member, r.path});
  }
  report.query_ms += ms_since(start);
  return switched;
}

std::pair<StrategyProfile, RoundReport> DynamicsEngine::run_round(const StrategyProfile& from) {
  const LoadVector loads = count_loads(from, game_.network.num_edges());
  StrategyProfile working = from;
  LoadVector working_loads = loads;
  RoundReport report;

  std::vector<Decision> switched;
  switch (config_.variant) {
    case Variant::sequential_blind:
    case Variant::simultaneous_blind:
      switched = blind_round(from, loads, is_sequential(config_.variant), working_loads, working,
                             report);
      break;
    case Variant::sequential_aware:
    case Variant::simultaneous_aware:
      switched = aware_round(from, loads, is_sequential(config_.variant), working_loads, working,
                             report);
      break;
    case Variant::group_simultaneous_group_aware: {
      switched = group_round(from, loads, report);
      for (const Decision& d : switched) {
        Path& current = working.paths[static_cast<size_t>(d.agent)];
        for (EdgeId e : current) working_loads[static_cast<size_t>(e)]--;
        for (EdgeId e : d.path) working_loads[static_cast<size_t>(e)]++;
        current = d.path;
      }
      break;
    }
  }

  report.switches = static_cast<int>(switched.size());
  if (count_loads(working, game_.network.num_edges()) != working_loads)
    throw std::logic_error("incremental load bookkeeping diverged");
  report.phi = potential(working_loads, game_.model);
  report.delta = anticipated_decrease(loads, working_loads, game_.model).total;
  report.loads_hash = load_hash(working_loads);
  if (game_.demand.num_agents() <= kCostTraceLimit) {
    for (AgentId i = 0; i < game_.demand.num_agents(); ++i)
      report.agent_costs.push_back(
          path_cost_blind(working.paths[static_cast<size_t>(i)], working_loads, game_.model));
  }
  return {std::move(working), std::move(report)};
}

StrategyProfile DynamicsEngine::initial_profile() {
  std::vector<Cost> metric(static_cast<size_t>(game_.network.num_edges()));
  for (size_t e = 0; e < metric.size(); ++e)
    metric[e] = game_.model.cost(static_cast<EdgeId>(e), 0);
  StrategyProfile profile;
  profile.paths.resize(static_cast<size_t>(game_.demand.num_agents()));
  if (is_blind(config_.variant)) {
    customized_ = cch_customize(*cch_, metric);
    CchQuery query(*customized_);
    for (AgentId i = 0; i < game_.demand.num_agents(); ++i) {
      const Agent& a = game_.demand.agent(i);
      profile.paths[static_cast<size_t>(i)] = query.run(a.origin, a.destination).path;
    }
  } else {
    for (AgentId i = 0; i < game_.demand.num_agents(); ++i) {
      const Agent& a = game_.demand.agent(i);
      profile.paths[static_cast<size_t>(i)] =
          dijkstra_.run(a.origin, a.destination, std::span<const Cost>(metric)).path;
    }
  }
  return profile;
}

DynamicsResult run_dynamics(const GameInstance& game, const DynamicsConfig& config) {
  return DynamicsEngine(game, config).run();
}

DynamicsResult DynamicsEngine::run() {
  DynamicsResult result;

  const auto t0 = Clock::now();
  StrategyProfile profile = initial_profile();
  RoundReport round0;
  round0.round = 0;
  round0.query_ms = ms_since(t0);
  LoadVector loads = count_loads(profile, game_.network.num_edges());
  round0.switches = static_cast<int>(game_.demand.num_agents());
  round0.phi = potential(loads, game_.model);
  round0.delta = anticipated_decrease(LoadVector(loads.size(), 0), loads, game_.model).total;
  round0.loads_hash = load_hash(loads);
  if (game_.demand.num_agents() <= kCostTraceLimit)
    for (AgentId i = 0; i < game_.demand.num_agents(); ++i)
      round0.agent_costs.push_back(
          path_cost_blind(profile.paths[static_cast<size_t>(i)], loads, game_.model));
  if (config_.record_trace) result.trace.push_back(round0);

  std::vector<StrategyProfile> history{profile};
  std::unordered_multimap<std::uint64_t, int> seen{{profile_hash(profile), 0}};
  double phi_prev = round0.phi;
  LoadVector loads_prev = loads;

  // Which invariants are theorems for this run: the potential-vs-delta
  // bound needs non-increasing costs; strict decrease and the loads
  // convergence certificate hold for blind variants on synergistic models
  // and for sequential impact-aware on any model (exact potential).
  const bool synergistic = game_.model.synergistic();
  const bool check_delta_bound = synergistic;
  const bool check_strict_decrease = (is_blind(config_.variant) && synergistic) ||
                                     config_.variant == Variant::sequential_aware;

  result.outcome = DynamicsResult::Outcome::round_limit;
  result.rounds = config_.max_rounds + 1;
  for (int round = 1; round <= config_.max_rounds; ++round) {
    auto [next, report] = run_round(profile);
    report.round = round;

    // A violation here means the implementation is wrong, not the input.
    const LoadVector next_loads = count_loads(next, game_.network.num_edges());
    const double tol = 1e-9 * std::max(1.0, std::abs(phi_prev));
    if (check_delta_bound && phi_prev - report.phi < report.delta - tol)
      throw std::logic_error("potential drop fell below the anticipated decrease");
    if (check_strict_decrease) {
      if (report.switches > 0 && report.phi >= phi_prev + tol)
        throw std::logic_error("potential failed to decrease on a switching round");
      if ((report.switches == 0) == (next_loads != loads_prev))
        throw std::logic_error("zero-switch round disagrees with load-vector change");
    }
    loads_prev = next_loads;

    if (config_.record_trace) result.trace.push_back(report);
    profile = std::move(next);
    phi_prev = report.phi;

    if (report.switches == 0) {
      result.outcome = DynamicsResult::Outcome::converged;
      result.rounds = round + 1;
      break;
    }

    const std::uint64_t h = profile_hash(profile);
    bool repeated = false;
    for (auto [it, end] = seen.equal_range(h); it != end; ++it) {
      if (history[static_cast<size_t>(it->second)] == profile) {
        result.outcome = DynamicsResult::Outcome::cycle;
        result.cycle_period = round - it->second;
        result.first_repeat_round = round;
        result.rounds = round + 1;
        repeated = true;
        break;
      }
    }
    if (repeated) break;
    seen.emplace(h, round);
    history.push_back(profile);
  }

  result.profile = std::move(profile);
  result.loads = count_loads(result.profile, game_.network.num_edges());
  return result;
}

}  // namespace sta
