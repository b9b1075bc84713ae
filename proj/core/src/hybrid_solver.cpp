#include "hybridcsp/hybrid_solver.hpp"

#include <numbers>

#include "hybridcsp/errors.hpp"
#include "hybridcsp/propagation.hpp"
#include "run_recorder.hpp"

namespace hybridcsp {

void StopCriterion::validate() const {
    if (mode == StopMode::n_solutions && count == 0) {
        throw ConfigError("n-solutions stop needs a count of at least 1");
    }
}

std::string_view to_string(StopReason reason) {
    switch (reason) {
        case StopReason::none:
            return "none";
        case StopReason::unsatisfiable:
            return "unsatisfiable";
        case StopReason::first_solution:
            return "first-solution";
        case StopReason::solution_count:
            return "solution-count";
        case StopReason::iteration_cap:
            return "iteration-cap";
        case StopReason::all_solutions_found:
            return "all-solutions-found";
    }
    return "none";
}

StopDecision stop_check(const SearchState& state, const StopCriterion& stop) {
    switch (stop.mode) {
        case StopMode::first_solution:
            if (state.solutions_found >= 1) {
                return {true, StopReason::first_solution};
            }
            break;
        case StopMode::n_solutions:
            if (state.solutions_found >= stop.count) {
                return {true, StopReason::solution_count};
            }
            break;
        case StopMode::exhaust_population:
            if (stop.known_solution_count && state.solutions_found >= *stop.known_solution_count) {
                return {true, StopReason::all_solutions_found};
            }
            break;
        case StopMode::max_iterations:
            break;
    }
    if (state.iteration >= state.max_iters) {
        return {true, StopReason::iteration_cap};
    }
    return {false, StopReason::none};
}

namespace {

Member random_member(const SearchBounds& bounds, Rng& rng) {
    const std::size_t n = bounds.size();
    Member m;
    m.position.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        m.position[j] = rng.uniform(bounds.lower[j], bounds.upper[j]);
    }
    m.head_angle.resize(n > 1 ? n - 1 : 1);
    for (double& a : m.head_angle) {
        a = rng.uniform(-std::numbers::pi, std::numbers::pi);
    }
    return m;
}

// Assigns the member's values one variable at a time with propagation;
// false as soon as a value is filtered out or a domain wipes out.
bool consistent_under_propagation(const ConstraintNetwork& network, const Domains& root,
                                  const Assignment& values) {
    Domains current = root;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!current[i].contains(values[i])) {
            return false;
        }
        PropagationResult r = assign_and_propagate(network, current, VariableId(i), values[i]);
        if (r.wipeout) {
            return false;
        }
        current = std::move(r.domains);
    }
    return true;
}

Initialization initialize(const ConstraintNetwork& network, const GsoParams& params, Rng& rng,
                          bool root_propagation) {
    Initialization init;
    if (root_propagation) {
        PropagationResult root = ac3(network);
        if (root.wipeout) {
            init.unsatisfiable = true;
            init.root_domains = std::move(root.domains);
            return init;
        }
        init.root_domains = std::move(root.domains);
    } else {
        init.root_domains = network.domains();
    }

    const SearchBounds bounds = SearchBounds::from_domains(init.root_domains);
    init.population.reserve(params.pop_size);
    for (std::size_t i = 0; i < params.pop_size; ++i) {
        init.population.push_back(random_member(bounds, rng));
    }
    for (Member& m : init.population) {
        m.decoded = decode(m.position, init.root_domains);
        m.fitness = evaluate(network, m.decoded);
        if (root_propagation && m.fitness > 0) {
            m.consistent = consistent_under_propagation(network, init.root_domains, m.decoded);
        }
    }
    return init;
}

std::size_t producer_index(const std::vector<Member>& population) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < population.size(); ++i) {
        if (population[i].fitness < population[best].fitness) {
            best = i;
        }
    }
    return best;
}

Member three_point_step(const Member& producer, const GsoParams& params, const SearchBounds& bounds,
                        const ConstraintNetwork& network, const Domains& domains, Rng& rng) {
    const ThreePointCandidates c = producer_scan_three_point(producer, params, bounds, rng);
    Member best = producer;
    for (const auto* candidate : {&c.zero, &c.right, &c.left}) {
        Assignment decoded = decode(*candidate, domains);
        const std::size_t fitness = evaluate(network, decoded);
        if (fitness < best.fitness) {
            best.position = *candidate;
            best.decoded = std::move(decoded);
            best.fitness = fitness;
        }
    }
    return best;
}

}  // namespace

Initialization initialize_population(const ConstraintNetwork& network, const GsoParams& params, Rng& rng) {
    params.validate();
    return initialize(network, params, rng, true);
}

namespace detail {

SolverResult run_group_search(const ConstraintNetwork& network, const GsoParams& params,
                              const StopCriterion& stop, ProducerMode producer_mode, bool root_propagation) {
    params.validate();
    stop.validate();

    RunRecorder recorder(stop, params.max_iters);
    Rng rng(params.rng_seed);
    Initialization init = initialize(network, params, rng, root_propagation);
    if (init.unsatisfiable) {
        return recorder.finish(0, StopReason::unsatisfiable, {});
    }

    const Domains& domains = init.root_domains;
    const SearchBounds bounds = SearchBounds::from_domains(domains);
    std::vector<Member>& population = init.population;
    std::vector<std::size_t> fitness(population.size());

    auto harvest_all = [&] {
        for (std::size_t i = 0; i < population.size(); ++i) {
            recorder.harvest(population[i].decoded, population[i].fitness);
            fitness[i] = population[i].fitness;
        }
    };

    harvest_all();
    recorder.record(0, fitness);

    std::size_t k = 0;
    StopDecision decision = recorder.check(k);
    while (!decision.halt) {
        const std::size_t p = producer_index(population);
        if (producer_mode == ProducerMode::adaptive_mutation) {
            population[p] = producer_step_apm(population[p], params, bounds, k, params.max_iters, network,
                                              domains, rng);
        } else {
            population[p] = three_point_step(population[p], params, bounds, network, domains, rng);
        }
        const std::vector<double> producer_position = population[p].position;

        for (std::size_t i = 0; i < population.size(); ++i) {
            if (i == p) {
                continue;
            }
            Member& m = population[i];
            if (rng.uniform() < params.scrounger_prob) {
                m.position = scrounge(m, producer_position, rng);
            } else {
                RangeMove move = range_step(m, params, bounds, rng);
                m.position = std::move(move.position);
                m.head_angle = std::move(move.head_angle);
            }
            m.decoded = decode(m.position, domains);
            m.fitness = evaluate(network, m.decoded);
        }

        harvest_all();
        ++k;
        recorder.record(k, fitness);
        decision = recorder.check(k);
    }
    return recorder.finish(k, decision.reason, std::move(population));
}

}  // namespace detail

SolverResult solve(const ConstraintNetwork& network, const GsoParams& params, const StopCriterion& stop) {
    return detail::run_group_search(network, params, stop, detail::ProducerMode::adaptive_mutation, true);
}

}  // namespace hybridcsp
