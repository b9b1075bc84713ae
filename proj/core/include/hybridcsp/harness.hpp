#ifndef HYBRIDCSP_HARNESS_HPP
#define HYBRIDCSP_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hybridcsp/baselines.hpp"
#include "hybridcsp/csp.hpp"
#include "hybridcsp/hybrid_solver.hpp"

namespace hybridcsp {

enum class Algorithm { apm_cpgso, gso, pso, backtrack };

std::string_view to_string(Algorithm algorithm);
/// Throws ConfigError for an unknown name.
Algorithm parse_algorithm(std::string_view name);

/// "a..b" (inclusive) or "a,b,c". Throws ConfigError when malformed or empty.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

/// "first", "count:N", "iters", or "exhaust" / "exhaust:N" (N = known
/// solution count). Throws ConfigError when malformed.
StopCriterion parse_stop(std::string_view text);

/// "key=val,key=val". Throws ConfigError when malformed.
std::map<std::string, std::string> parse_param_overrides(std::string_view text);

struct RunConfig {
    /// Instance file path, or a built-in name: queensN, airport-sSEED.
    std::string instance;
    Algorithm algorithm = Algorithm::apm_cpgso;
    std::vector<std::uint64_t> seeds{1};
    StopCriterion stop = StopCriterion::max_iterations();
    std::size_t max_iters = 1000;
    std::optional<std::size_t> pop_size;
    std::optional<double> scrounger_prob;
    std::optional<double> eta;
    /// Extra overrides by parameter name, see apply_overrides().
    std::map<std::string, std::string> params;
    std::filesystem::path out_dir = ".";
    /// Worker threads for independent seeds; 0 picks the hardware count.
    std::size_t threads = 0;

    /// Checks everything that does not need the instance. Throws ConfigError.
    void validate() const;
};

/// Loads a path or built-in name. Throws ParseError when neither resolves.
ConstraintNetwork load_instance(const std::string& instance);

/// Defaults for the network, then RunConfig fields, then `params`.
/// Keys: pop_size, scrounger_prob, l_max, theta_max, alpha_max, eta,
/// ranging_a, truncate_normal. Throws ConfigError on unknown keys or bad values.
GsoParams make_gso_params(const ConstraintNetwork& network, const RunConfig& config, std::uint64_t seed);

/// Keys: pop_size, w, c1, c2, v_max.
PsoParams make_pso_params(const ConstraintNetwork& network, const RunConfig& config, std::uint64_t seed);

/// One run of config.algorithm. Backtracking reports its solutions with a
/// single iteration-0 trace row (no rows when there is no solution).
SolverResult run_single(const ConstraintNetwork& network, const RunConfig& config, std::uint64_t seed);

struct SeedOutcome {
    std::uint64_t seed = 0;
    std::optional<SolverResult> result;
    std::string error;
};

/// Runs every seed, possibly concurrently; results are in seed-list order.
std::vector<SeedOutcome> run_seeds(const ConstraintNetwork& network, const RunConfig& config);

struct SummaryRow {
    std::string algorithm;
    std::string instance;
    std::size_t seeds_run = 0;
    double success_rate = 0.0;
    std::optional<std::size_t> max_best_fitness;
    std::optional<double> mean_best_fitness;
    std::optional<double> median_iterations_to_first_solution;
    double mean_wall_ms = 0.0;
    double mean_solutions_found = 0.0;
};

/// Pure fold over per-seed traces. A run succeeds when its last row reports
/// at least one solution.
SummaryRow summarize(std::string_view algorithm, std::string_view instance, std::span<const ConvergenceTrace> traces);

inline constexpr std::string_view kSummaryHeader =
    "algorithm,instance,seeds_run,success_rate,max_best_fitness,mean_best_fitness,"
    "median_iterations_to_first_solution,mean_wall_ms,mean_solutions_found";

std::string summary_csv(std::span<const SummaryRow> rows);

/// "<instance>.<algo>.seed<k>.trace.csv"
std::string trace_file_name(std::string_view instance, Algorithm algorithm, std::uint64_t seed);

struct RunReport {
    std::vector<std::filesystem::path> trace_files;
    std::filesystem::path summary_file;
    SummaryRow summary;
    std::vector<std::string> errors;
};

/// Runs all seeds and writes one trace CSV per seed plus a summary CSV.
/// Throws ParseError (bad instance) or ConfigError (bad configuration)
/// before any run starts.
RunReport run(const RunConfig& config);

struct CurvePoint {
    std::string algorithm;
    std::size_t iteration = 0;
    double median = 0.0;
    double q25 = 0.0;
    double q75 = 0.0;
};

/// Best fitness per iteration 0..max_iters across runs; a run that stopped
/// early carries its last row forward. Runs without rows are skipped.
std::vector<CurvePoint> convergence_curve(std::string_view algorithm, std::span<const ConvergenceTrace> traces,
                                          std::size_t max_iters);

inline constexpr std::string_view kCurveHeader = "algorithm,iteration,median_best_fitness,q25,q75";
inline constexpr std::string_view kTableHeader = "algorithm,max,means,running_time_ms";

std::string curves_csv(std::span<const CurvePoint> points);
std::string comparison_table_csv(std::span<const SummaryRow> rows);

struct CompareReport {
    std::vector<RunReport> runs;
    std::vector<CurvePoint> curves;
    std::filesystem::path curves_file;
    std::filesystem::path table_file;
};

/// Runs every config with the shared seeds and writes the long-format curve
/// CSV and the comparison table next to the per-run artifacts. Throws
/// ConfigError when configs differ in instance, stop mode, seeds or cap.
CompareReport compare(const std::vector<RunConfig>& configs);

/// Linear-interpolated quantile (q in [0, 1]) of a non-empty sample.
double quantile(std::vector<double> values, double q);

/// One-sided sign test: P(X >= wins) for X ~ Binomial(wins + losses, 1/2).
double sign_test_p_value(std::size_t wins, std::size_t losses);

}  // namespace hybridcsp

#endif  // HYBRIDCSP_HARNESS_HPP
