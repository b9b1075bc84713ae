#include <benchmark/benchmark.h>

#include "hybridcsp/baselines.hpp"
#include "hybridcsp/hybrid_solver.hpp"
#include "hybridcsp/instances.hpp"
#include "hybridcsp/propagation.hpp"

using namespace hybridcsp;

namespace {

void BM_Evaluate(benchmark::State& state) {
    const ConstraintNetwork net = gen_nqueens(static_cast<std::size_t>(state.range(0)));
    Assignment a(net.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = static_cast<int>(1 + (2 * i) % a.size());
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate(net, a));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(net.constraints().size()));
}
BENCHMARK(BM_Evaluate)->Arg(8)->Arg(32)->Arg(128);

void BM_Ac3Random(benchmark::State& state) {
    const ConstraintNetwork net = gen_random_binary(static_cast<std::size_t>(state.range(0)), 10, 0.5, 0.4, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ac3(net));
    }
}
BENCHMARK(BM_Ac3Random)->Arg(10)->Arg(20)->Arg(40);

void BM_Decode(benchmark::State& state) {
    const ConstraintNetwork net = gen_nqueens(static_cast<std::size_t>(state.range(0)));
    std::vector<double> pos(net.size());
    for (std::size_t i = 0; i < pos.size(); ++i) {
        pos[i] = static_cast<double>(i) + 0.5;
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(decode(pos, net.domains()));
    }
}
BENCHMARK(BM_Decode)->Arg(8)->Arg(128);

void BM_DirectionFromAngles(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::vector<double> angles(n - 1, 0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(direction_from_angles(angles, n));
    }
}
BENCHMARK(BM_DirectionFromAngles)->Arg(8)->Arg(128);

template <typename Solve>
void run_solver(benchmark::State& state, Solve&& solve_once) {
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_once(seed++));
    }
}

void BM_SolveApmQueens8(benchmark::State& state) {
    const ConstraintNetwork q8 = gen_nqueens(8);
    run_solver(state, [&](std::uint64_t seed) {
        GsoParams p = default_gso_params(q8);
        p.max_iters = 100;
        p.rng_seed = seed;
        return solve(q8, p, StopCriterion::max_iterations());
    });
}
BENCHMARK(BM_SolveApmQueens8)->Unit(benchmark::kMillisecond);

void BM_SolveGsoQueens8(benchmark::State& state) {
    const ConstraintNetwork q8 = gen_nqueens(8);
    run_solver(state, [&](std::uint64_t seed) {
        GsoParams p = default_gso_params(q8);
        p.max_iters = 100;
        p.rng_seed = seed;
        return solve_standard_gso(q8, p, StopCriterion::max_iterations());
    });
}
BENCHMARK(BM_SolveGsoQueens8)->Unit(benchmark::kMillisecond);

void BM_SolvePsoQueens8(benchmark::State& state) {
    const ConstraintNetwork q8 = gen_nqueens(8);
    run_solver(state, [&](std::uint64_t seed) {
        PsoParams p = default_pso_params(q8);
        p.max_iters = 100;
        p.rng_seed = seed;
        return solve_pso(q8, p, StopCriterion::max_iterations());
    });
}
BENCHMARK(BM_SolvePsoQueens8)->Unit(benchmark::kMillisecond);

void BM_BacktrackQueens8(benchmark::State& state) {
    const ConstraintNetwork q8 = gen_nqueens(8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_backtracking(q8));
    }
}
BENCHMARK(BM_BacktrackQueens8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
