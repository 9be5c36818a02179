#include "sta/optima.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>

namespace sta {

std::vector<Path> enumerate_paths(const RoadNetwork& network, Vertex s, Vertex t, int cap,
                                  bool* truncated) {
  if (truncated != nullptr) *truncated = false;
  std::vector<Path> out;
  std::vector<char> visited(static_cast<size_t>(network.num_vertices()), 0);
  Path current;
  std::function<bool(Vertex)> dfs = [&](Vertex v) {  // returns false once capped
    if (v == t) {
      if (static_cast<int>(out.size()) >= cap) {
        if (truncated != nullptr) *truncated = true;
        return false;
      }
      out.push_back(current);
      return true;
    }
    visited[static_cast<size_t>(v)] = 1;
    for (EdgeId e : network.out_edges(v)) {
      const Vertex w = network.edge(e).head;
      if (visited[static_cast<size_t>(w)]) continue;
      current.push_back(e);
      const bool keep_going = dfs(w);
      current.pop_back();
      if (!keep_going) {
        visited[static_cast<size_t>(v)] = 0;
        return false;
      }
    }
    visited[static_cast<size_t>(v)] = 0;
    return true;
  };
  dfs(s);
  return out;
}

OptimumResult brute_force_optimum(const GameInstance& game, int path_cap,
                                  std::uint64_t max_profiles) {
  const AgentId k = game.demand.num_agents();
  OptimumResult result;
  std::vector<std::vector<Path>> options(static_cast<size_t>(k));
  std::uint64_t combinations = 1;
  for (AgentId i = 0; i < k; ++i) {
    const Agent& a = game.demand.agent(i);
    bool truncated = false;
    options[static_cast<size_t>(i)] =
        enumerate_paths(game.network, a.origin, a.destination, path_cap, &truncated);
    result.truncated |= truncated;
    if (options[static_cast<size_t>(i)].empty())
      throw ValidationError("agent " + std::to_string(i) + ": no path from " +
                            std::to_string(a.origin) + " to " + std::to_string(a.destination));
    if (combinations > max_profiles / options[static_cast<size_t>(i)].size() + 1)
      combinations = max_profiles + 1;  // saturate
    else
      combinations *= options[static_cast<size_t>(i)].size();
  }
  if (combinations > max_profiles)
    throw ValidationError("profile space exceeds the enumeration guard (" +
                          std::to_string(max_profiles) + " profiles)");

  LoadVector loads(static_cast<size_t>(game.network.num_edges()), 0);
  std::vector<size_t> pick(static_cast<size_t>(k), 0);
  for (AgentId i = 0; i < k; ++i)
    for (EdgeId e : options[static_cast<size_t>(i)][0]) loads[static_cast<size_t>(e)]++;

  double best = std::numeric_limits<double>::infinity();
  std::vector<size_t> best_pick;
  const auto evaluate = [&]() {
    double total = 0.0;
    for (AgentId i = 0; i < k; ++i)
      for (EdgeId e : options[static_cast<size_t>(i)][pick[static_cast<size_t>(i)]])
        total += game.model.cost(e, loads[static_cast<size_t>(e)]);
    return total;
  };

  // Odometer over profiles in lexicographic order; loads maintained by the
  // one agent whose path changes. Strict improvement keeps the first
  // minimizer, which is the lexicographically smallest one.
  for (;;) {
    result.profiles_enumerated++;
    const double total = evaluate();
    if (total < best) {
      best = total;
      best_pick = pick;
    }
    AgentId spin = k - 1;
    while (spin >= 0) {
      const size_t i = static_cast<size_t>(spin);
      for (EdgeId e : options[i][pick[i]]) loads[static_cast<size_t>(e)]--;
      if (++pick[i] < options[i].size()) {
        for (EdgeId e : options[i][pick[i]]) loads[static_cast<size_t>(e)]++;
        break;
      }
      pick[i] = 0;
      for (EdgeId e : options[i][0]) loads[static_cast<size_t>(e)]++;
      --spin;
    }
    if (spin < 0) break;
  }

  result.total_cost = best;
  result.profile.paths.resize(static_cast<size_t>(k));
  for (AgentId i = 0; i < k; ++i)
    result.profile.paths[static_cast<size_t>(i)] =
        options[static_cast<size_t>(i)][best_pick[static_cast<size_t>(i)]];
  return result;
}

ReducedInstance reduce_sat(const SatInstance& sat) {
  sat.validate();
  const int n = sat.num_vars;
  const int m = static_cast<int>(sat.clauses.size());
  const double high = 3.0 * n;

  // Clause i owns vertices a_i = 2i, b_i = 2i+1 and the edge a_i -> b_i;
  // variable j owns s_j and t_j after the clause block.
  const auto a_of = [](int c) { return static_cast<Vertex>(2 * c); };
  const auto b_of = [](int c) { return static_cast<Vertex>(2 * c + 1); };
  const auto s_of = [m](int v) { return static_cast<Vertex>(2 * m + 2 * v); };
  const auto t_of = [m](int v) { return static_cast<Vertex>(2 * m + 2 * v + 1); };

  std::vector<Edge> edges;
  std::vector<StepTable> tables;
  ReducedInstance out;
  out.num_vars = n;
  out.satisfiable_cost = high;
  for (int c = 0; c < m; ++c) {
    edges.push_back({a_of(c), b_of(c), std::llround(high)});
    tables.push_back(StepTable::drop(high, 2, 0.0));
    out.clause_edges.push_back(static_cast<EdgeId>(c));
  }

  // visit order of each literal's two clauses: ascending, then aligned so a
  // clause holding both polarities of a variable sits at the same position
  // on both literal paths
  std::vector<std::array<std::array<int, 2>, 2>> visit(static_cast<size_t>(n));
  for (int v = 1; v <= n; ++v) {
    for (int side = 0; side < 2; ++side) {
      const int lit = side == 0 ? v : -v;
      std::vector<int> in_clauses;
      for (int c = 0; c < m; ++c)
        for (int l : sat.clauses[static_cast<size_t>(c)])
          if (l == lit) in_clauses.push_back(c);
      visit[static_cast<size_t>(v - 1)][static_cast<size_t>(side)] = {in_clauses[0],
                                                                      in_clauses[1]};
    }
    auto& pos = visit[static_cast<size_t>(v - 1)][0];
    auto& neg = visit[static_cast<size_t>(v - 1)][1];
    for (int slot = 0; slot < 2; ++slot) {
      const int c = pos[static_cast<size_t>(slot)];
      if (c == neg[0] && slot != 0) std::swap(neg[0], neg[1]);
      if (c == neg[1] && slot != 1) std::swap(neg[0], neg[1]);
    }
    // shared clauses must now hold the same slot on both sides
    for (int slot = 0; slot < 2; ++slot) {
      const int c = pos[static_cast<size_t>(slot)];
      if ((c == neg[0] && slot != 0) || (c == neg[1] && slot != 1))
        throw std::logic_error("literal paths could not be aligned on a shared clause");
    }
  }

  out.variable_paths.resize(static_cast<size_t>(n));
  auto connector = [&](Vertex tail, Vertex head) {
    edges.push_back({tail, head, 1});
    tables.push_back(StepTable::constant(1.0));
    return static_cast<EdgeId>(edges.size() - 1);
  };
  for (int v = 1; v <= n; ++v) {
    for (int side = 0; side < 2; ++side) {
      const auto [c1, c2] = visit[static_cast<size_t>(v - 1)][static_cast<size_t>(side)];
      Path path;
      path.push_back(connector(s_of(v - 1), a_of(c1)));
      path.push_back(static_cast<EdgeId>(c1));
      path.push_back(connector(b_of(c1), a_of(c2)));
      path.push_back(static_cast<EdgeId>(c2));
      path.push_back(connector(b_of(c2), t_of(v - 1)));
      out.variable_paths[static_cast<size_t>(v - 1)][static_cast<size_t>(side)] = path;
    }
  }

  std::vector<Agent> agents;
  for (int c = 0; c < m; ++c) agents.push_back({0, a_of(c), b_of(c)});
  for (int v = 0; v < n; ++v) agents.push_back({0, s_of(v), t_of(v)});

  out.game = GameInstance{RoadNetwork(static_cast<Vertex>(2 * m + 2 * n), std::move(edges)),
                          DemandSet(std::move(agents)),
                          CostModel::step_tables(std::move(tables))};
  return out;
}

GameInstance poa_witness(int agents, double epsilon, double delta) {
  if (agents < 1) throw ValidationError("need at least one agent");
  if (!(0.0 < delta && delta < epsilon && epsilon < 1.0))
    throw ValidationError("parameters must satisfy 0 < delta < epsilon < 1");
  // The discount on the shared edge needs at least two riders, so a single
  // agent cannot unlock it alone and all-on-a stays an equilibrium.
  const std::int64_t threshold = std::max<std::int64_t>(agents, 2);
  RoadNetwork network(2, {{0, 1, std::llround(epsilon)}, {0, 1, 1}});
  CostModel model = CostModel::step_tables(
      {StepTable::constant(epsilon), StepTable::drop(1.0, threshold, delta)});
  std::vector<Agent> demand;
  for (int i = 0; i < agents; ++i) demand.push_back({0, 0, 1});
  return {std::move(network), DemandSet(std::move(demand)), std::move(model)};
}

}  // namespace sta
