#ifndef HYBRIDCSP_HYBRID_SOLVER_HPP
#define HYBRIDCSP_HYBRID_SOLVER_HPP

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "hybridcsp/csp.hpp"
#include "hybridcsp/gso.hpp"
#include "hybridcsp/random.hpp"
#include "hybridcsp/trace.hpp"

namespace hybridcsp {

enum class StopMode {
    first_solution,
    n_solutions,
    max_iterations,
    /// Iteration cap, with an early exit once `known_solution_count`
    /// solutions have been collected (when that count is supplied).
    exhaust_population,
};

/// When to end a run. GsoParams::max_iters is always a hard cap on top of it.
struct StopCriterion {
    StopMode mode = StopMode::max_iterations;
    std::size_t count = 1;
    std::optional<std::size_t> known_solution_count;

    static StopCriterion first_solution() { return {StopMode::first_solution, 1, std::nullopt}; }
    static StopCriterion n_solutions(std::size_t n) { return {StopMode::n_solutions, n, std::nullopt}; }
    static StopCriterion max_iterations() { return {StopMode::max_iterations, 1, std::nullopt}; }
    static StopCriterion exhaust_population(std::optional<std::size_t> known = std::nullopt) {
        return {StopMode::exhaust_population, 1, known};
    }

    /// Throws ConfigError if count is zero in n-solutions mode.
    void validate() const;
};

enum class StopReason {
    none,
    unsatisfiable,
    first_solution,
    solution_count,
    iteration_cap,
    all_solutions_found,
};

std::string_view to_string(StopReason reason);

struct BestFound {
    Assignment assignment;
    std::size_t fitness = 0;
};

struct SolverResult {
    /// Distinct solutions, lexicographically ordered.
    std::vector<Assignment> solutions;
    /// Empty only when there was no population (root wipeout).
    std::optional<BestFound> best;
    ConvergenceTrace trace;
    std::size_t iterations_run = 0;
    StopReason stop_reason = StopReason::none;
    /// Population at termination.
    std::vector<Member> final_population;
};

struct SearchState {
    std::size_t iteration = 0;
    std::size_t solutions_found = 0;
    std::size_t max_iters = 0;
};

struct StopDecision {
    bool halt = false;
    StopReason reason = StopReason::none;
};

/// Solution-count criteria take precedence over the iteration cap.
StopDecision stop_check(const SearchState& state, const StopCriterion& stop);

struct Initialization {
    std::vector<Member> population;
    /// Root domains after arc consistency.
    Domains root_domains;
    bool unsatisfiable = false;
};

/// Root AC-3, then pop_size random members over the pruned domains. Members
/// that violate constraints are filtered once to record their consistency
/// flag and kept in the population. On root wipeout the population is empty
/// and `unsatisfiable` is set.
Initialization initialize_population(const ConstraintNetwork& network, const GsoParams& params, Rng& rng);

/// Group search with adaptive polynomial mutation at the producer and
/// arc-consistency filtered initialization. Deterministic in params.rng_seed.
/// Throws ConfigError on invalid parameters before any iteration.
SolverResult solve(const ConstraintNetwork& network, const GsoParams& params, const StopCriterion& stop);

}  // namespace hybridcsp

#endif  // HYBRIDCSP_HYBRID_SOLVER_HPP
