#include "hybridcsp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

#include "hybridcsp/errors.hpp"
#include "hybridcsp/instances.hpp"
#include "hybridcsp/spatial.hpp"

namespace hybridcsp {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

template <typename T>
bool parse_unsigned(std::string_view s, T& out) {
    s = trim(s);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_real(std::string_view s, double& out) {
    const std::string copy(trim(s));
    if (copy.empty()) {
        return false;
    }
    char* end = nullptr;
    out = std::strtod(copy.c_str(), &end);
    return end == copy.c_str() + copy.size() && std::isfinite(out);
}

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

std::string format_optional(const std::optional<double>& value) {
    return value ? format_number(*value) : std::string("NA");
}

double real_param(const std::string& key, const std::string& value) {
    double out = 0.0;
    if (!parse_real(value, out)) {
        throw ConfigError("parameter '" + key + "' expects a number, got '" + value + "'");
    }
    return out;
}

std::size_t count_param(const std::string& key, const std::string& value) {
    std::size_t out = 0;
    if (!parse_unsigned(value, out)) {
        throw ConfigError("parameter '" + key + "' expects a non-negative integer, got '" + value + "'");
    }
    return out;
}

bool bool_param(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") {
        return true;
    }
    if (value == "false" || value == "0") {
        return false;
    }
    throw ConfigError("parameter '" + key + "' expects true or false, got '" + value + "'");
}

constexpr std::string_view kGsoKeys[] = {"pop_size", "scrounger_prob", "l_max",     "theta_max",
                                         "alpha_max", "eta",           "ranging_a", "truncate_normal"};
constexpr std::string_view kPsoKeys[] = {"pop_size", "w", "c1", "c2", "v_max"};

bool known_key(Algorithm algorithm, std::string_view key) {
    if (algorithm == Algorithm::pso) {
        return std::find(std::begin(kPsoKeys), std::end(kPsoKeys), key) != std::end(kPsoKeys);
    }
    if (algorithm == Algorithm::backtrack) {
        return false;
    }
    return std::find(std::begin(kGsoKeys), std::end(kGsoKeys), key) != std::end(kGsoKeys);
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::apm_cpgso:
            return "apm-cpgso";
        case Algorithm::gso:
            return "gso";
        case Algorithm::pso:
            return "pso";
        case Algorithm::backtrack:
            return "backtrack";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
    for (Algorithm a : {Algorithm::apm_cpgso, Algorithm::gso, Algorithm::pso, Algorithm::backtrack}) {
        if (to_string(a) == name) {
            return a;
        }
    }
    throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected apm-cpgso, gso, pso or backtrack)");
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
    text = trim(text);
    std::vector<std::uint64_t> seeds;
    if (const auto dots = text.find(".."); dots != std::string_view::npos) {
        std::uint64_t lo = 0;
        std::uint64_t hi = 0;
        if (!parse_unsigned(text.substr(0, dots), lo) || !parse_unsigned(text.substr(dots + 2), hi) || hi < lo) {
            throw ConfigError("bad seed range '" + std::string(text) + "'");
        }
        if (hi - lo >= 1'000'000) {
            throw ConfigError("seed range '" + std::string(text) + "' is too large");
        }
        for (std::uint64_t s = lo; s <= hi; ++s) {
            seeds.push_back(s);
        }
        return seeds;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        std::uint64_t s = 0;
        if (!parse_unsigned(item, s)) {
            throw ConfigError("bad seed '" + std::string(item) + "' in '" + std::string(text) + "'");
        }
        seeds.push_back(s);
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return seeds;
}

StopCriterion parse_stop(std::string_view text) {
    text = trim(text);
    if (text == "first") {
        return StopCriterion::first_solution();
    }
    if (text == "iters") {
        return StopCriterion::max_iterations();
    }
    if (text == "exhaust") {
        return StopCriterion::exhaust_population();
    }
    std::size_t n = 0;
    if (text.starts_with("count:") && parse_unsigned(text.substr(6), n) && n >= 1) {
        return StopCriterion::n_solutions(n);
    }
    if (text.starts_with("exhaust:") && parse_unsigned(text.substr(8), n)) {
        return StopCriterion::exhaust_population(n);
    }
    throw ConfigError("bad stop mode '" + std::string(text) + "' (expected first, count:N, iters or exhaust[:N])");
}

std::map<std::string, std::string> parse_param_overrides(std::string_view text) {
    std::map<std::string, std::string> out;
    text = trim(text);
    if (text.empty()) {
        return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos || trim(item.substr(0, eq)).empty()) {
            throw ConfigError("bad parameter override '" + std::string(item) + "' (expected key=value)");
        }
        out[std::string(trim(item.substr(0, eq)))] = std::string(trim(item.substr(eq + 1)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

void RunConfig::validate() const {
    if (seeds.empty()) {
        throw ConfigError("seed list is empty");
    }
    if (max_iters == 0) {
        throw ConfigError("max-iters must be positive");
    }
    stop.validate();
    if (pop_size && *pop_size == 0) {
        throw ConfigError("pop-size must be positive");
    }
    if (scrounger_prob && !(*scrounger_prob >= 0.0 && *scrounger_prob <= 1.0)) {
        throw ConfigError("scrounger-prob must lie in [0, 1]");
    }
    if (eta && !(*eta > 0.0)) {
        throw ConfigError("eta must be positive");
    }
    for (const auto& [key, value] : params) {
        if (!known_key(algorithm, key)) {
            throw ConfigError("unknown parameter '" + key + "' for algorithm " + std::string(to_string(algorithm)));
        }
        if (key == "pop_size") {
            count_param(key, value);
        } else if (key == "truncate_normal") {
            bool_param(key, value);
        } else {
            real_param(key, value);
        }
    }
}

ConstraintNetwork load_instance(const std::string& instance) {
    if (std::filesystem::is_regular_file(instance)) {
        return read_instance_file(instance);
    }
    std::size_t n = 0;
    if (instance.starts_with("queens") && parse_unsigned(std::string_view(instance).substr(6), n) && n >= 1) {
        return gen_nqueens(n);
    }
    std::uint64_t seed = 0;
    if (instance.starts_with("airport-s") && parse_unsigned(std::string_view(instance).substr(9), seed)) {
        return gen_spatial_graph(airport_spec(), seed).network;
    }
    throw ParseError("instance '" + instance + "' is neither a readable file nor a built-in name");
}

GsoParams make_gso_params(const ConstraintNetwork& network, const RunConfig& config, std::uint64_t seed) {
    GsoParams p = default_gso_params(network);
    p.max_iters = config.max_iters;
    p.rng_seed = seed;
    if (config.pop_size) {
        p.pop_size = *config.pop_size;
    }
    if (config.scrounger_prob) {
        p.scrounger_prob = *config.scrounger_prob;
    }
    if (config.eta) {
        p.mutation_eta = *config.eta;
    }
    for (const auto& [key, value] : config.params) {
        if (key == "pop_size") {
            p.pop_size = count_param(key, value);
        } else if (key == "scrounger_prob") {
            p.scrounger_prob = real_param(key, value);
        } else if (key == "l_max") {
            p.l_max = real_param(key, value);
        } else if (key == "theta_max") {
            p.theta_max = real_param(key, value);
        } else if (key == "alpha_max") {
            p.alpha_max = real_param(key, value);
        } else if (key == "eta") {
            p.mutation_eta = real_param(key, value);
        } else if (key == "ranging_a") {
            p.ranging_a = real_param(key, value);
        } else if (key == "truncate_normal") {
            p.truncate_normal = bool_param(key, value);
        } else {
            throw ConfigError("unknown parameter '" + key + "' for group search");
        }
    }
    p.validate();
    return p;
}

PsoParams make_pso_params(const ConstraintNetwork& network, const RunConfig& config, std::uint64_t seed) {
    PsoParams p = default_pso_params(network);
    p.max_iters = config.max_iters;
    p.rng_seed = seed;
    if (config.pop_size) {
        p.pop_size = *config.pop_size;
    }
    for (const auto& [key, value] : config.params) {
        if (key == "pop_size") {
            p.pop_size = count_param(key, value);
        } else if (key == "w") {
            p.inertia = real_param(key, value);
        } else if (key == "c1") {
            p.cognitive = real_param(key, value);
        } else if (key == "c2") {
            p.social = real_param(key, value);
        } else if (key == "v_max") {
            p.v_max = real_param(key, value);
        } else {
            throw ConfigError("unknown parameter '" + key + "' for pso");
        }
    }
    p.validate();
    return p;
}

SolverResult run_single(const ConstraintNetwork& network, const RunConfig& config, std::uint64_t seed) {
    switch (config.algorithm) {
        case Algorithm::apm_cpgso:
            return solve(network, make_gso_params(network, config, seed), config.stop);
        case Algorithm::gso:
            return solve_standard_gso(network, make_gso_params(network, config, seed), config.stop);
        case Algorithm::pso:
            return solve_pso(network, make_pso_params(network, config, seed), config.stop);
        case Algorithm::backtrack: {
            const auto start = std::chrono::steady_clock::now();
            BacktrackResult bt = solve_backtracking(network);
            SolverResult r;
            r.stop_reason = bt.solutions.empty() ? StopReason::unsatisfiable : StopReason::all_solutions_found;
            if (!bt.solutions.empty()) {
                r.best = BestFound{bt.solutions.front(), 0};
                TraceRow row;
                row.iteration = 0;
                row.best_fitness = 0;
                row.mean_fitness = 0.0;
                row.solutions_found = bt.solutions.size();
                row.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - start)
                                     .count();
                r.trace.initial = row;
            }
            r.solutions = std::move(bt.solutions);
            return r;
        }
    }
    throw ConfigError("unknown algorithm");
}

std::vector<SeedOutcome> run_seeds(const ConstraintNetwork& network, const RunConfig& config) {
    std::vector<SeedOutcome> outcomes(config.seeds.size());
    std::size_t workers = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, outcomes.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < outcomes.size(); i = next++) {
            outcomes[i].seed = config.seeds[i];
            try {
                outcomes[i].result = run_single(network, config, config.seeds[i]);
            } catch (const std::exception& e) {
                outcomes[i].error = e.what();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    return outcomes;
}

SummaryRow summarize(std::string_view algorithm, std::string_view instance, std::span<const ConvergenceTrace> traces) {
    SummaryRow s;
    s.algorithm = algorithm;
    s.instance = instance;
    s.seeds_run = traces.size();
    std::size_t successes = 0;
    std::vector<double> first_solution;
    std::vector<double> best;
    double wall = 0.0;
    double solutions = 0.0;
    for (const ConvergenceTrace& t : traces) {
        const std::vector<TraceRow> rows = t.all_rows();
        if (rows.empty()) {
            continue;
        }
        const TraceRow& last = rows.back();
        best.push_back(static_cast<double>(last.best_fitness));
        s.max_best_fitness = std::max(s.max_best_fitness.value_or(0), last.best_fitness);
        wall += static_cast<double>(last.elapsed_ms);
        solutions += static_cast<double>(last.solutions_found);
        if (last.solutions_found > 0) {
            ++successes;
            for (const TraceRow& row : rows) {
                if (row.solutions_found > 0) {
                    first_solution.push_back(static_cast<double>(row.iteration));
                    break;
                }
            }
        }
    }
    if (s.seeds_run > 0) {
        s.success_rate = static_cast<double>(successes) / static_cast<double>(s.seeds_run);
        s.mean_wall_ms = wall / static_cast<double>(s.seeds_run);
        s.mean_solutions_found = solutions / static_cast<double>(s.seeds_run);
    }
    if (!best.empty()) {
        double sum = 0.0;
        for (double b : best) {
            sum += b;
        }
        s.mean_best_fitness = sum / static_cast<double>(best.size());
    }
    if (!first_solution.empty()) {
        s.median_iterations_to_first_solution = quantile(first_solution, 0.5);
    }
    return s;
}

std::string summary_csv(std::span<const SummaryRow> rows) {
    std::ostringstream out;
    out << kSummaryHeader << '\n';
    for (const SummaryRow& r : rows) {
        out << r.algorithm << ',' << r.instance << ',' << r.seeds_run << ',' << format_number(r.success_rate) << ','
            << (r.max_best_fitness ? std::to_string(*r.max_best_fitness) : std::string("NA")) << ','
            << format_optional(r.mean_best_fitness) << ',' << format_optional(r.median_iterations_to_first_solution)
            << ',' << format_number(r.mean_wall_ms) << ',' << format_number(r.mean_solutions_found) << '\n';
    }
    return out.str();
}

std::string trace_file_name(std::string_view instance, Algorithm algorithm, std::uint64_t seed) {
    return std::string(instance) + "." + std::string(to_string(algorithm)) + ".seed" + std::to_string(seed) +
           ".trace.csv";
}

namespace {

std::string instance_label(const ConstraintNetwork& network, const std::string& instance) {
    if (!network.name().empty()) {
        return network.name();
    }
    return std::filesystem::path(instance).stem().string();
}

struct Prepared {
    ConstraintNetwork network;
    std::string label;
};

Prepared prepare(const RunConfig& config) {
    config.validate();
    ConstraintNetwork network = load_instance(config.instance);
    // Surface parameter errors before any run starts.
    if (config.algorithm == Algorithm::pso) {
        make_pso_params(network, config, config.seeds.front());
    } else if (config.algorithm != Algorithm::backtrack) {
        make_gso_params(network, config, config.seeds.front());
    }
    std::string label = instance_label(network, config.instance);
    return {std::move(network), std::move(label)};
}

RunReport execute(const Prepared& prepared, const RunConfig& config) {
    std::filesystem::create_directories(config.out_dir);
    const std::vector<SeedOutcome> outcomes = run_seeds(prepared.network, config);
    RunReport report;
    std::vector<ConvergenceTrace> traces;
    for (const SeedOutcome& o : outcomes) {
        if (!o.result) {
            report.errors.push_back("seed " + std::to_string(o.seed) + ": " + o.error);
            continue;
        }
        const std::filesystem::path file =
            config.out_dir / trace_file_name(prepared.label, config.algorithm, o.seed);
        write_file_atomically(file, trace_to_csv(o.result->trace));
        report.trace_files.push_back(file);
        traces.push_back(o.result->trace);
    }
    report.summary = summarize(to_string(config.algorithm), prepared.label, traces);
    report.summary_file =
        config.out_dir / (prepared.label + "." + std::string(to_string(config.algorithm)) + ".summary.csv");
    const SummaryRow rows[] = {report.summary};
    write_file_atomically(report.summary_file, summary_csv(rows));
    return report;
}

}  // namespace

RunReport run(const RunConfig& config) {
    return execute(prepare(config), config);
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) {
        throw OutOfRangeError("quantile of an empty sample");
    }
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<CurvePoint> convergence_curve(std::string_view algorithm, std::span<const ConvergenceTrace> traces,
                                          std::size_t max_iters) {
    std::vector<std::vector<TraceRow>> all;
    for (const ConvergenceTrace& t : traces) {
        std::vector<TraceRow> rows = t.all_rows();
        if (!rows.empty()) {
            all.push_back(std::move(rows));
        }
    }
    std::vector<CurvePoint> out;
    if (all.empty()) {
        return out;
    }
    std::vector<std::size_t> cursor(all.size(), 0);
    for (std::size_t it = 0; it <= max_iters; ++it) {
        std::vector<double> values;
        for (std::size_t r = 0; r < all.size(); ++r) {
            const auto& rows = all[r];
            while (cursor[r] + 1 < rows.size() && rows[cursor[r] + 1].iteration <= it) {
                ++cursor[r];
            }
            values.push_back(static_cast<double>(rows[cursor[r]].best_fitness));
        }
        out.push_back({std::string(algorithm), it, quantile(values, 0.5), quantile(values, 0.25),
                       quantile(values, 0.75)});
    }
    return out;
}

std::string curves_csv(std::span<const CurvePoint> points) {
    std::ostringstream out;
    out << kCurveHeader << '\n';
    for (const CurvePoint& p : points) {
        out << p.algorithm << ',' << p.iteration << ',' << format_number(p.median) << ',' << format_number(p.q25)
            << ',' << format_number(p.q75) << '\n';
    }
    return out.str();
}

std::string comparison_table_csv(std::span<const SummaryRow> rows) {
    std::ostringstream out;
    out << kTableHeader << '\n';
    for (const SummaryRow& r : rows) {
        out << r.algorithm << ',' << (r.max_best_fitness ? std::to_string(*r.max_best_fitness) : std::string("NA"))
            << ',' << format_optional(r.mean_best_fitness) << ',' << format_number(r.mean_wall_ms) << '\n';
    }
    return out.str();
}

CompareReport compare(const std::vector<RunConfig>& configs) {
    if (configs.empty()) {
        throw ConfigError("compare needs at least one algorithm");
    }
    const RunConfig& ref = configs.front();
    for (const RunConfig& c : configs) {
        if (c.instance != ref.instance) {
            throw ConfigError("compare configs target different instances");
        }
        if (c.stop.mode != ref.stop.mode || c.stop.count != ref.stop.count ||
            c.stop.known_solution_count != ref.stop.known_solution_count) {
            throw ConfigError("compare configs use different stop modes");
        }
        if (c.seeds != ref.seeds || c.max_iters != ref.max_iters) {
            throw ConfigError("compare configs must share seeds and max-iters");
        }
    }
    std::vector<Prepared> prepared;
    for (const RunConfig& c : configs) {
        prepared.push_back(prepare(c));
    }

    CompareReport report;
    std::vector<SummaryRow> table;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        RunReport r = execute(prepared[i], configs[i]);
        std::vector<ConvergenceTrace> traces;
        for (const auto& file : r.trace_files) {
            traces.push_back(parse_trace_csv(read_text_file(file)));
        }
        const auto curve = convergence_curve(to_string(configs[i].algorithm), traces, configs[i].max_iters);
        report.curves.insert(report.curves.end(), curve.begin(), curve.end());
        table.push_back(r.summary);
        report.runs.push_back(std::move(r));
    }
    const std::string& label = prepared.front().label;
    report.curves_file = ref.out_dir / (label + ".compare.curves.csv");
    report.table_file = ref.out_dir / (label + ".compare.table.csv");
    write_file_atomically(report.curves_file, curves_csv(report.curves));
    write_file_atomically(report.table_file, comparison_table_csv(table));
    return report;
}

double sign_test_p_value(std::size_t wins, std::size_t losses) {
    const std::size_t n = wins + losses;
    if (wins == 0) {
        return 1.0;
    }
    // sum_{k >= wins} C(n, k) / 2^n, accumulated in log space.
    double p = 0.0;
    for (std::size_t k = wins; k <= n; ++k) {
        const double log_term = std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
                                std::lgamma(static_cast<double>(n - k) + 1.0) - static_cast<double>(n) * std::log(2.0);
        p += std::exp(log_term);
    }
    return std::min(1.0, p);
}

}  // namespace hybridcsp
