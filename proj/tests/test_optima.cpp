#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sta/dynamics.hpp"
#include "sta/optima.hpp"
#include "sta/sat.hpp"
#include "support.hpp"

using namespace sta;
using test::Rng;

namespace {

// Independent truth-table check, kept separate from the library's own.
bool oracle_satisfiable(const SatInstance& sat) {
  for (unsigned assignment = 0; assignment < (1u << sat.num_vars); ++assignment) {
    bool ok = true;
    for (const auto& clause : sat.clauses) {
      bool sat_clause = false;
      for (int lit : clause) {
        const bool v = (assignment >> (std::abs(lit) - 1)) & 1u;
        sat_clause |= lit > 0 ? v : !v;
      }
      if (!sat_clause) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("path enumeration is exhaustive and capped") {
  const RoadNetwork net(4, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}, {0, 3, 1}});
  const auto paths = enumerate_paths(net, 0, 3, 64);
  CHECK(paths.size() == 3);
  bool truncated = false;
  const auto capped = enumerate_paths(net, 0, 3, 2, &truncated);
  CHECK(capped.size() == 2);
  CHECK(truncated);
}

TEST_CASE("brute force optimum on tiny games") {
  SUBCASE("single agent takes its shortest path") {
    const RoadNetwork net(2, {{0, 1, 4}, {0, 1, 7}});
    const GameInstance game{
        net, DemandSet({{0, 0, 1}}),
        CostModel::step_tables({StepTable::constant(4.0), StepTable::constant(7.0)})};
    const OptimumResult r = brute_force_optimum(game);
    CHECK(r.total_cost == 4.0);
    CHECK(r.profile.paths[0] == Path{0});
    CHECK(r.profiles_enumerated == 2);
  }
  SUBCASE("optimum groups both agents on the synergistic edge") {
    // shared edge: 2 alone, 0 when shared; private edges cost 1 each
    const RoadNetwork net(2, {{0, 1, 2}, {0, 1, 1}, {0, 1, 1}});
    const GameInstance game{
        net, DemandSet({{0, 0, 1}, {1, 0, 1}}),
        CostModel::step_tables({StepTable::drop(2.0, 2, 0.0), StepTable::constant(1.0),
                                StepTable::constant(1.0)})};
    const OptimumResult r = brute_force_optimum(game);
    CHECK(r.total_cost == 0.0);
    CHECK(r.profile.paths[0] == Path{0});
    CHECK(r.profile.paths[1] == Path{0});
    CHECK(r.profiles_enumerated == 9);
  }
  SUBCASE("enumeration guard refuses explosive instances") {
    // 20 parallel edges and 8 agents: 20^8 > 1e7
    std::vector<Edge> edges(20, Edge{0, 1, 1});
    std::vector<StepTable> tables(20, StepTable::constant(1.0));
    std::vector<Agent> agents(8, Agent{0, 0, 1});
    const GameInstance game{RoadNetwork(2, std::move(edges)), DemandSet(std::move(agents)),
                            CostModel::step_tables(std::move(tables))};
    CHECK_THROWS_WITH_AS(brute_force_optimum(game), doctest::Contains("guard"), ValidationError);
  }
}

TEST_CASE("dimacs parsing and the variant validity rule") {
  const SatInstance sat = parse_dimacs_text("c tiny\np cnf 1 4\n1 0\n1 0\n-1 0\n-1 0\n");
  CHECK(sat.num_vars == 1);
  REQUIRE(sat.clauses.size() == 4);
  CHECK_NOTHROW(sat.validate());
  CHECK(!truth_table_satisfiable(sat));

  // x1 appearing once is rejected
  const SatInstance bad = parse_dimacs_text("p cnf 1 3\n1 0\n-1 0\n-1 0\n");
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  CHECK_THROWS_AS(parse_dimacs_text("p cnf 2 1\n"), ValidationError);
}

TEST_CASE("reduction structure for the one-variable instance") {
  SatInstance sat;
  sat.num_vars = 1;
  sat.clauses = {{1}, {1}, {-1}, {-1}};
  const ReducedInstance red = reduce_sat(sat);
  CHECK(red.clause_edges.size() == 4);
  CHECK(red.game.demand.num_agents() == 5);  // 4 clause agents + 1 variable agent
  CHECK(red.game.network.num_edges() == 4 + 6);  // 4 clause edges + 3 connectors per literal
  CHECK(red.satisfiable_cost == 3.0);
  // every clause agent is forced onto its single edge
  for (int c = 0; c < 4; ++c) {
    const Agent& a = red.game.demand.agent(c);
    CHECK(enumerate_paths(red.game.network, a.origin, a.destination, 8).size() == 1);
  }
  // the variable agent has exactly its two literal paths, three connectors each
  const Agent& v = red.game.demand.agent(4);
  const auto paths = enumerate_paths(red.game.network, v.origin, v.destination, 8);
  CHECK(paths.size() == 2);
  for (const auto& p : paths) CHECK(p.size() == 5);
  // reduced instances are synergistic
  CHECK(red.game.model.synergistic());
}

TEST_CASE("reduction is sound on hand-picked formulas") {
  SUBCASE("unsatisfiable: x and not-x forced") {
    SatInstance sat;
    sat.num_vars = 1;
    sat.clauses = {{1}, {1}, {-1}, {-1}};
    REQUIRE(!oracle_satisfiable(sat));
    const ReducedInstance red = reduce_sat(sat);
    const OptimumResult r = brute_force_optimum(red.game);
    CHECK(r.total_cost > red.satisfiable_cost);
    CHECK(r.total_cost == 3.0 + 2 * 3.0);  // two uncovered clauses pay 3n each
  }
  SUBCASE("satisfiable: complementary literals spread across clauses") {
    SatInstance sat;
    sat.num_vars = 2;
    sat.clauses = {{1, 2}, {1, -2}, {-1, 2}, {-1, -2}};
    REQUIRE(oracle_satisfiable(sat));
    const ReducedInstance red = reduce_sat(sat);
    const OptimumResult r = brute_force_optimum(red.game);
    CHECK(r.total_cost == red.satisfiable_cost);  // 3n = 6
  }
  SUBCASE("clause containing both polarities of one variable") {
    SatInstance sat;
    sat.num_vars = 1;
    sat.clauses = {{1, -1}, {1}, {-1}};
    REQUIRE(oracle_satisfiable(sat));  // but one of clauses 2,3 must go unpaid
    const ReducedInstance red = reduce_sat(sat);
    const OptimumResult r = brute_force_optimum(red.game);
    // the formula is satisfiable, yet no assignment covers clauses 2 and 3
    // at once, so the optimum exceeds 3n
    CHECK(r.total_cost > red.satisfiable_cost);
  }
}

TEST_CASE("exhaustive soundness for one- and two-variable formulas") {
  // every valid instance up to clause reordering, generated canonically:
  // each literal picks an unordered pair of clause slots, new slots are
  // allocated in first-use order
  int tested = 0;
  for (int n : {1, 2}) {
    const int num_lits = 2 * n;
    std::vector<std::array<int, 2>> choice(static_cast<size_t>(num_lits));
    std::function<void(int, int)> rec = [&](int lit, int used) {
      if (lit == num_lits) {
        SatInstance sat;
        sat.num_vars = n;
        sat.clauses.assign(static_cast<size_t>(used), {});
        for (int l = 0; l < num_lits; ++l) {
          const int var = l / 2 + 1;
          const int signed_lit = (l % 2 == 0) ? var : -var;
          sat.clauses[static_cast<size_t>(choice[static_cast<size_t>(l)][0])].push_back(signed_lit);
          sat.clauses[static_cast<size_t>(choice[static_cast<size_t>(l)][1])].push_back(signed_lit);
        }
        sat.validate();
        const ReducedInstance red = reduce_sat(sat);
        const OptimumResult r = brute_force_optimum(red.game);
        const bool satisfiable = oracle_satisfiable(sat);
        CAPTURE(tested);
        CHECK((r.total_cost == red.satisfiable_cost) == satisfiable);
        if (!satisfiable) CHECK(r.total_cost > red.satisfiable_cost);
        ++tested;
        return;
      }
      const size_t slot = static_cast<size_t>(lit);
      choice[slot] = {used, used + 1};
      rec(lit + 1, used + 2);
      for (int a = 0; a < used; ++a) {
        choice[slot] = {a, used};
        rec(lit + 1, used + 1);
      }
      for (int a = 0; a < used; ++a)
        for (int b = a + 1; b < used; ++b) {
          choice[slot] = {a, b};
          rec(lit + 1, used);
        }
    };
    rec(0, 0);
  }
  CHECK(tested == 4 + 321);
}

TEST_CASE("poa witness") {
  SUBCASE("k=5: selfish equilibrium is 100x the optimum") {
    const GameInstance game = poa_witness(5, 0.1, 0.001);
    StrategyProfile all_on_a;
    all_on_a.paths.assign(5, Path{0});
    CHECK(is_equilibrium(all_on_a, game, CostMode::aware).equilibrium);
    const OptimumResult opt = brute_force_optimum(game);
    CHECK(opt.total_cost == doctest::Approx(0.005).epsilon(1e-12));
    for (const Path& p : opt.profile.paths) CHECK(p == Path{1});
    const LoadVector loads_a = compute_loads(all_on_a, game.network, game.demand);
    double equilibrium_total = 0.0;
    for (const Path& p : all_on_a.paths)
      equilibrium_total += path_cost_blind(p, loads_a, game.model);
    CHECK(equilibrium_total == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(equilibrium_total / opt.total_cost == doctest::Approx(100.0).epsilon(1e-9));
    // no profile beats k * delta
    CHECK(opt.total_cost >= 5 * 0.001 - 1e-12);
  }
  SUBCASE("k=1 degenerates to ratio 1") {
    const GameInstance game = poa_witness(1, 0.1, 0.001);
    const OptimumResult opt = brute_force_optimum(game);
    CHECK(opt.total_cost == doctest::Approx(0.1));
    CHECK(opt.profile.paths[0] == Path{0});  // the constant edge stays optimal
    StrategyProfile on_a;
    on_a.paths = {{0}};
    CHECK(is_equilibrium(on_a, game, CostMode::aware).equilibrium);
  }
  SUBCASE("ratio scales as epsilon/delta") {
    for (double delta : {0.01, 0.005, 0.0025}) {
      const GameInstance game = poa_witness(4, 0.5, delta);
      const OptimumResult opt = brute_force_optimum(game);
      CHECK(opt.total_cost == doctest::Approx(4 * delta).epsilon(1e-12));
      CHECK((4 * 0.5) / opt.total_cost == doctest::Approx(0.5 / delta).epsilon(1e-9));
    }
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(poa_witness(3, 0.1, 0.1), ValidationError);
    CHECK_THROWS_AS(poa_witness(3, 1.5, 0.1), ValidationError);
    CHECK_THROWS_AS(poa_witness(0, 0.1, 0.01), ValidationError);
  }
  SUBCASE("all-on-b is also an aware equilibrium, so the witness bounds only the anarchy price") {
    const GameInstance game = poa_witness(5, 0.1, 0.001);
    StrategyProfile all_on_b;
    all_on_b.paths.assign(5, Path{1});
    CHECK(is_equilibrium(all_on_b, game, CostMode::aware).equilibrium);
  }
}
