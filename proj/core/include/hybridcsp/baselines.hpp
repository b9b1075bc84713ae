#ifndef HYBRIDCSP_BASELINES_HPP
#define HYBRIDCSP_BASELINES_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hybridcsp/csp.hpp"
#include "hybridcsp/hybrid_solver.hpp"

namespace hybridcsp {

/// Standard group search: no root propagation and three-point scanning at
/// the producer instead of adaptive mutation. Otherwise the same loop as solve().
SolverResult solve_standard_gso(const ConstraintNetwork& network, const GsoParams& params,
                                const StopCriterion& stop);

struct PsoParams {
    std::size_t pop_size = 48;
    double inertia = 0.729;
    double cognitive = 1.49445;
    double social = 1.49445;
    double v_max = 1.0;
    std::size_t max_iters = 1000;
    std::uint64_t rng_seed = 1;

    void validate() const;
};

/// Standard coefficients with v_max set to half the widest domain.
PsoParams default_pso_params(const ConstraintNetwork& network);

/// Global-best PSO over the same continuous relaxation and decoder as the
/// group-search solvers.
SolverResult solve_pso(const ConstraintNetwork& network, const PsoParams& params, const StopCriterion& stop);

struct BacktrackResult {
    /// All solutions, in lexicographic order of (variable index, domain order).
    std::vector<Assignment> solutions;
    std::size_t nodes = 0;
};

inline constexpr std::size_t kDefaultNodeBudget = 100'000'000;

/// Chronological backtracking without heuristics. Throws OracleBudgetError
/// once more than node_budget nodes have been visited.
BacktrackResult solve_backtracking(const ConstraintNetwork& network,
                                   std::size_t node_budget = kDefaultNodeBudget);

}  // namespace hybridcsp

#endif  // HYBRIDCSP_BASELINES_HPP
