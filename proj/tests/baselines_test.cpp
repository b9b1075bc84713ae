#include <catch_amalgamated.hpp>

#include <random>

#include "hybridcsp/baselines.hpp"
#include "hybridcsp/errors.hpp"
#include "hybridcsp/instances.hpp"
#include "oracles.hpp"

using namespace hybridcsp;

namespace {

ConstraintNetwork lt_cycle() {
    const VariableId x(0), y(1), z(2);
    return ConstraintNetwork(Domains(3, Domain{1, 2, 3}), {Constraint::less_than(x, y), Constraint::less_than(y, z),
                                                           Constraint::less_than(z, x)});
}

std::set<Assignment> as_set(const std::vector<Assignment>& v) {
    return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("backtracking on 4-queens", "[baselines]") {
    const ConstraintNetwork q4 = gen_nqueens(4);
    const auto truth = oracle::solutions(q4);
    REQUIRE(truth == std::set<Assignment>{{2, 4, 1, 3}, {3, 1, 4, 2}});
    const BacktrackResult r = solve_backtracking(q4);
    CHECK(r.solutions == std::vector<Assignment>{{2, 4, 1, 3}, {3, 1, 4, 2}});
    CHECK(r.nodes > 0);
}

TEST_CASE("backtracking small cases", "[baselines]") {
    const ConstraintNetwork free(Domains(2, Domain{1, 2}), {});
    CHECK(solve_backtracking(free).solutions.size() == 4);
    REQUIRE(oracle::solutions(lt_cycle()).empty());
    CHECK(solve_backtracking(lt_cycle()).solutions.empty());
}

TEST_CASE("backtracking enforces its node budget", "[baselines]") {
    CHECK_THROWS_AS(solve_backtracking(gen_nqueens(8), 100), OracleBudgetError);
}

TEST_CASE("backtracking equals exhaustive enumeration", "[baselines][property]") {
    std::mt19937_64 gen(1234);
    for (int trial = 0; trial < 200; ++trial) {
        const ConstraintNetwork net = gen_random_binary(2 + gen() % 6, 2 + static_cast<int>(gen() % 4),
                                                        0.1 * static_cast<double>(gen() % 11),
                                                        0.1 * static_cast<double>(gen() % 9), gen());
        const BacktrackResult r = solve_backtracking(net);
        REQUIRE(as_set(r.solutions) == oracle::solutions(net));
        REQUIRE(std::is_sorted(r.solutions.begin(), r.solutions.end()));
    }
}

TEST_CASE("standard group search", "[baselines]") {
    SECTION("unconstrained network is solved immediately") {
        const ConstraintNetwork net(Domains(3, Domain{1, 2}), {});
        const SolverResult r = solve_standard_gso(net, default_gso_params(net), StopCriterion::first_solution());
        CHECK(r.iterations_run == 0);
        CHECK_FALSE(r.solutions.empty());
    }
    SECTION("reported 4-queens solutions are real") {
        const ConstraintNetwork q4 = gen_nqueens(4);
        const auto truth = oracle::solutions(q4);
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            GsoParams p = default_gso_params(q4);
            p.max_iters = 300;
            p.rng_seed = seed;
            const SolverResult r = solve_standard_gso(q4, p, StopCriterion::max_iterations());
            for (const Assignment& s : r.solutions) {
                CHECK(truth.contains(s));
            }
        }
    }
    SECTION("no root propagation: a wipeout instance still iterates") {
        GsoParams p = default_gso_params(lt_cycle());
        p.max_iters = 20;
        const SolverResult r = solve_standard_gso(lt_cycle(), p, StopCriterion::max_iterations());
        CHECK(r.stop_reason == StopReason::iteration_cap);
        CHECK(r.trace.rows.size() == 20);
        CHECK(r.solutions.empty());
    }
    SECTION("trace differs from the adaptive-mutation solver") {
        const ConstraintNetwork q8 = gen_nqueens(8);
        GsoParams p = default_gso_params(q8);
        p.max_iters = 50;
        const SolverResult a = solve(q8, p, StopCriterion::max_iterations());
        const SolverResult g = solve_standard_gso(q8, p, StopCriterion::max_iterations());
        CHECK(trace_to_csv(a.trace) != trace_to_csv(g.trace));
    }
}

TEST_CASE("particle swarm", "[baselines]") {
    SECTION("defaults") {
        const PsoParams p = default_pso_params(gen_nqueens(6));
        CHECK(p.inertia == 0.729);
        CHECK(p.cognitive == 1.49445);
        CHECK(p.social == 1.49445);
        CHECK(p.v_max == 3.0);
        CHECK_NOTHROW(p.validate());
    }
    SECTION("validation") {
        PsoParams p;
        p.inertia = 1.5;
        CHECK_THROWS_AS(p.validate(), ConfigError);
        p = PsoParams{};
        p.v_max = 0.0;
        CHECK_THROWS_AS(p.validate(), ConfigError);
        p = PsoParams{};
        p.social = -1.0;
        CHECK_THROWS_AS(p.validate(), ConfigError);
    }
    SECTION("zero coefficients freeze the swarm after the first step") {
        const ConstraintNetwork q6 = gen_nqueens(6);
        PsoParams p = default_pso_params(q6);
        p.inertia = 0.0;
        p.cognitive = 0.0;
        p.social = 0.0;
        p.max_iters = 5;
        const SolverResult five = solve_pso(q6, p, StopCriterion::max_iterations());
        p.max_iters = 40;
        const SolverResult forty = solve_pso(q6, p, StopCriterion::max_iterations());
        REQUIRE(five.final_population.size() == forty.final_population.size());
        for (std::size_t i = 0; i < five.final_population.size(); ++i) {
            CHECK(five.final_population[i].position == forty.final_population[i].position);
        }
        const auto rows = forty.trace.rows;
        for (const TraceRow& row : rows) {
            CHECK(row.mean_fitness == rows.front().mean_fitness);
        }
    }
    SECTION("unconstrained network is solved immediately") {
        const ConstraintNetwork net(Domains(3, Domain{1, 2}), {});
        const SolverResult r = solve_pso(net, default_pso_params(net), StopCriterion::first_solution());
        CHECK(r.iterations_run == 0);
        CHECK_FALSE(r.solutions.empty());
    }
    SECTION("deterministic and sound") {
        const ConstraintNetwork q6 = gen_nqueens(6);
        const auto truth = oracle::solutions(q6);
        PsoParams p = default_pso_params(q6);
        p.max_iters = 300;
        p.rng_seed = 5;
        const SolverResult a = solve_pso(q6, p, StopCriterion::max_iterations());
        const SolverResult b = solve_pso(q6, p, StopCriterion::max_iterations());
        CHECK(a.solutions == b.solutions);
        REQUIRE(a.trace.rows.size() == b.trace.rows.size());
        for (std::size_t i = 0; i < a.trace.rows.size(); ++i) {
            CHECK(a.trace.rows[i].best_fitness == b.trace.rows[i].best_fitness);
            CHECK(a.trace.rows[i].mean_fitness == b.trace.rows[i].mean_fitness);
        }
        for (const Assignment& s : a.solutions) {
            CHECK(truth.contains(s));
        }
    }
}

TEST_CASE("all solvers share the trace schema", "[baselines]") {
    const ConstraintNetwork q5 = gen_nqueens(5);
    GsoParams g = default_gso_params(q5);
    g.max_iters = 30;
    PsoParams p = default_pso_params(q5);
    p.max_iters = 30;
    for (const SolverResult& r : {solve(q5, g, StopCriterion::max_iterations()),
                                  solve_standard_gso(q5, g, StopCriterion::max_iterations()),
                                  solve_pso(q5, p, StopCriterion::max_iterations())}) {
        const ConvergenceTrace back = parse_trace_csv(trace_to_csv(r.trace));
        CHECK(back.rows.size() == 30);
        CHECK(back.initial.has_value());
        CHECK(trace_to_csv(back) == trace_to_csv(r.trace));
    }
}
