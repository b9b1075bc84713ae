#ifndef HYBRIDCSP_SRC_RUN_RECORDER_HPP
#define HYBRIDCSP_SRC_RUN_RECORDER_HPP

#include <chrono>
#include <set>
#include <span>

#include "hybridcsp/hybrid_solver.hpp"

namespace hybridcsp::detail {

/// Solution harvesting, best-so-far tracking and trace rows shared by the
/// population-based solvers.
class RunRecorder {
public:
    RunRecorder(const StopCriterion& stop, std::size_t max_iters)
        : stop_(stop), max_iters_(max_iters), start_(std::chrono::steady_clock::now()) {}

    void harvest(const Assignment& a, std::size_t fitness) {
        if (fitness == 0) {
            solutions_.insert(a);
        }
        if (!best_ || fitness < best_->fitness) {
            best_ = BestFound{a, fitness};
        }
    }

    /// Row for the population state after `iteration` completed iterations;
    /// iteration 0 is the initial population.
    void record(std::size_t iteration, std::span<const std::size_t> fitness) {
        TraceRow row;
        row.iteration = iteration;
        std::size_t sum = 0;
        for (std::size_t f : fitness) {
            sum += f;
        }
        row.best_fitness = best_ ? best_->fitness : 0;
        row.mean_fitness = fitness.empty() ? 0.0 : static_cast<double>(sum) / static_cast<double>(fitness.size());
        row.solutions_found = solutions_.size();
        row.elapsed_ms = elapsed_ms();
        if (iteration == 0) {
            trace_.initial = row;
        } else {
            trace_.rows.push_back(row);
        }
    }

    StopDecision check(std::size_t iteration) const {
        return stop_check({iteration, solutions_.size(), max_iters_}, stop_);
    }

    std::int64_t elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_)
            .count();
    }

    SolverResult finish(std::size_t iterations, StopReason reason, std::vector<Member> population) {
        SolverResult r;
        r.solutions.assign(solutions_.begin(), solutions_.end());
        r.best = best_;
        r.trace = std::move(trace_);
        r.iterations_run = iterations;
        r.stop_reason = reason;
        r.final_population = std::move(population);
        return r;
    }

private:
    StopCriterion stop_;
    std::size_t max_iters_;
    std::chrono::steady_clock::time_point start_;
    std::set<Assignment> solutions_;
    std::optional<BestFound> best_;
    ConvergenceTrace trace_;
};

enum class ProducerMode { adaptive_mutation, three_point };

/// The group-search loop. `root_propagation` enables AC-3 at the root and
/// member filtering at initialization.
SolverResult run_group_search(const ConstraintNetwork& network, const GsoParams& params,
                              const StopCriterion& stop, ProducerMode producer_mode, bool root_propagation);

}  // namespace hybridcsp::detail

#endif  // HYBRIDCSP_SRC_RUN_RECORDER_HPP
