#ifndef HYBRIDCSP_TRACE_HPP
#define HYBRIDCSP_TRACE_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hybridcsp {

struct TraceRow {
    std::size_t iteration = 0;
    std::size_t best_fitness = 0;
    double mean_fitness = 0.0;
    std::size_t solutions_found = 0;
    std::int64_t elapsed_ms = 0;

    friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

/// Per-iteration convergence record. `initial` is the state after population
/// initialization (iteration 0); `rows` has one entry per completed iteration.
struct ConvergenceTrace {
    std::optional<TraceRow> initial;
    std::vector<TraceRow> rows;

    /// initial (if any) followed by rows.
    std::vector<TraceRow> all_rows() const;
};

inline constexpr std::string_view kTraceHeader =
    "iteration,best_fitness,mean_fitness,solutions_found,elapsed_ms";

/// CSV with kTraceHeader. mean_fitness is printed with 6 decimals.
void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace);
std::string trace_to_csv(const ConvergenceTrace& trace);

/// Parses write_trace_csv output. A row with iteration 0 becomes `initial`.
/// Throws ParseError on a malformed document.
ConvergenceTrace parse_trace_csv(std::string_view text);

}  // namespace hybridcsp

#endif  // HYBRIDCSP_TRACE_HPP
