#include "hybridcsp/baselines.hpp"

#include <algorithm>

#include "hybridcsp/errors.hpp"
#include "run_recorder.hpp"

namespace hybridcsp {

SolverResult solve_standard_gso(const ConstraintNetwork& network, const GsoParams& params,
                                const StopCriterion& stop) {
    return detail::run_group_search(network, params, stop, detail::ProducerMode::three_point, false);
}

void PsoParams::validate() const {
    if (pop_size == 0) {
        throw ConfigError("pop_size must be positive");
    }
    if (!(inertia >= 0.0 && inertia <= 1.0)) {
        throw ConfigError("inertia must lie in [0, 1]");
    }
    if (!(cognitive >= 0.0) || !(social >= 0.0)) {
        throw ConfigError("c1 and c2 must be non-negative");
    }
    if (!(v_max > 0.0)) {
        throw ConfigError("v_max must be positive");
    }
    if (max_iters == 0) {
        throw ConfigError("max_iters must be positive");
    }
}

PsoParams default_pso_params(const ConstraintNetwork& network) {
    PsoParams p;
    std::size_t widest = 1;
    for (const Domain& d : network.domains()) {
        widest = std::max(widest, d.size());
    }
    p.v_max = 0.5 * static_cast<double>(widest);
    return p;
}

namespace {

struct Particle {
    Member state;
    std::vector<double> velocity;
    std::vector<double> best_position;
    std::size_t best_fitness = 0;
};

}  // namespace

SolverResult solve_pso(const ConstraintNetwork& network, const PsoParams& params, const StopCriterion& stop) {
    params.validate();
    stop.validate();

    detail::RunRecorder recorder(stop, params.max_iters);
    Rng rng(params.rng_seed);
    const Domains& domains = network.domains();
    const SearchBounds bounds = SearchBounds::from_domains(domains);
    const std::size_t n = network.size();

    std::vector<Particle> swarm(params.pop_size);
    for (Particle& p : swarm) {
        p.state.position.resize(n);
        p.velocity.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            p.state.position[j] = rng.uniform(bounds.lower[j], bounds.upper[j]);
        }
        for (std::size_t j = 0; j < n; ++j) {
            p.velocity[j] = rng.uniform(-params.v_max, params.v_max);
        }
    }

    std::vector<std::size_t> fitness(swarm.size());
    auto evaluate_swarm = [&] {
        for (std::size_t i = 0; i < swarm.size(); ++i) {
            Particle& p = swarm[i];
            p.state.decoded = decode(p.state.position, domains);
            p.state.fitness = evaluate(network, p.state.decoded);
            fitness[i] = p.state.fitness;
            recorder.harvest(p.state.decoded, p.state.fitness);
        }
    };

    evaluate_swarm();
    for (Particle& p : swarm) {
        p.best_position = p.state.position;
        p.best_fitness = p.state.fitness;
    }
    auto global_best = [&] {
        std::size_t g = 0;
        for (std::size_t i = 1; i < swarm.size(); ++i) {
            if (swarm[i].best_fitness < swarm[g].best_fitness) {
                g = i;
            }
        }
        return g;
    };
    recorder.record(0, fitness);

    std::size_t k = 0;
    StopDecision decision = recorder.check(k);
    while (!decision.halt) {
        const std::vector<double> gbest = swarm[global_best()].best_position;
        for (Particle& p : swarm) {
            for (std::size_t j = 0; j < n; ++j) {
                const double r1 = rng.uniform();
                const double r2 = rng.uniform();
                double v = params.inertia * p.velocity[j] +
                           params.cognitive * r1 * (p.best_position[j] - p.state.position[j]) +
                           params.social * r2 * (gbest[j] - p.state.position[j]);
                v = std::clamp(v, -params.v_max, params.v_max);
                p.velocity[j] = v;
                p.state.position[j] += v;
            }
            bounds.clamp(p.state.position);
        }
        evaluate_swarm();
        for (Particle& p : swarm) {
            if (p.state.fitness < p.best_fitness) {
                p.best_fitness = p.state.fitness;
                p.best_position = p.state.position;
            }
        }
        ++k;
        recorder.record(k, fitness);
        decision = recorder.check(k);
    }

    std::vector<Member> population;
    population.reserve(swarm.size());
    for (Particle& p : swarm) {
        population.push_back(std::move(p.state));
    }
    return recorder.finish(k, decision.reason, std::move(population));
}

namespace {

class Backtracker {
public:
    Backtracker(const ConstraintNetwork& network, std::size_t budget)
        : network_(network), budget_(budget), values_(network.size()) {}

    BacktrackResult run() {
        extend(0);
        return std::move(result_);
    }

private:
    // True if values_[var] is compatible with every earlier variable.
    bool consistent(std::size_t var) const {
        for (VariableId other : network_.neighbors(VariableId(var))) {
            if (other.index >= var) {
                break;
            }
            for (std::size_t ci : network_.constraints_between(VariableId(var), other)) {
                const Constraint& c = network_.constraints()[ci];
                if (!c.admits(values_[c.first().index], values_[c.second().index])) {
                    return false;
                }
            }
        }
        return true;
    }

    void extend(std::size_t var) {
        if (var == values_.size()) {
            result_.solutions.push_back(values_);
            return;
        }
        for (int v : network_.domain(VariableId(var))) {
            if (++result_.nodes > budget_) {
                throw OracleBudgetError("backtracking exceeded its budget of " + std::to_string(budget_) +
                                        " nodes");
            }
            values_[var] = v;
            if (consistent(var)) {
                extend(var + 1);
            }
        }
    }

    const ConstraintNetwork& network_;
    std::size_t budget_;
    Assignment values_;
    BacktrackResult result_;
};

}  // namespace

BacktrackResult solve_backtracking(const ConstraintNetwork& network, std::size_t node_budget) {
    return Backtracker(network, node_budget).run();
}

}  // namespace hybridcsp
