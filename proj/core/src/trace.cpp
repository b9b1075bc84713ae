#include "hybridcsp/trace.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "hybridcsp/errors.hpp"

namespace hybridcsp {

std::vector<TraceRow> ConvergenceTrace::all_rows() const {
    std::vector<TraceRow> out;
    out.reserve(rows.size() + 1);
    if (initial) {
        out.push_back(*initial);
    }
    out.insert(out.end(), rows.begin(), rows.end());
    return out;
}

void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace) {
    out << kTraceHeader << '\n';
    char mean[64];
    for (const TraceRow& row : trace.all_rows()) {
        std::snprintf(mean, sizeof(mean), "%.6f", row.mean_fitness);
        out << row.iteration << ',' << row.best_fitness << ',' << mean << ',' << row.solutions_found << ','
            << row.elapsed_ms << '\n';
    }
}

std::string trace_to_csv(const ConvergenceTrace& trace) {
    std::ostringstream out;
    write_trace_csv(out, trace);
    return out.str();
}

namespace {

template <typename T>
T parse_integer(std::string_view field, std::size_t line, std::string_view column) {
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError("trace line " + std::to_string(line) + ": " + std::string(column) +
                         " is not an integer: '" + std::string(field) + "'");
    }
    return value;
}

double parse_decimal(std::string_view field, std::size_t line) {
    std::string copy(field);
    char* end = nullptr;
    const double value = std::strtod(copy.c_str(), &end);
    if (copy.empty() || end != copy.c_str() + copy.size()) {
        throw ParseError("trace line " + std::to_string(line) + ": mean_fitness is not a decimal: '" + copy + "'");
    }
    return value;
}

}  // namespace

ConvergenceTrace parse_trace_csv(std::string_view text) {
    ConvergenceTrace trace;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool header_seen = false;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        if (!header_seen) {
            if (line != kTraceHeader) {
                throw ParseError("trace line 1: unexpected header '" + std::string(line) + "'");
            }
            header_seen = true;
            continue;
        }
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }
        if (fields.size() != 5) {
            throw ParseError("trace line " + std::to_string(line_no) + ": expected 5 fields, got " +
                             std::to_string(fields.size()));
        }
        TraceRow row;
        row.iteration = parse_integer<std::size_t>(fields[0], line_no, "iteration");
        row.best_fitness = parse_integer<std::size_t>(fields[1], line_no, "best_fitness");
        row.mean_fitness = parse_decimal(fields[2], line_no);
        row.solutions_found = parse_integer<std::size_t>(fields[3], line_no, "solutions_found");
        row.elapsed_ms = parse_integer<std::int64_t>(fields[4], line_no, "elapsed_ms");
        if (row.iteration == 0 && !trace.initial && trace.rows.empty()) {
            trace.initial = row;
        } else {
            trace.rows.push_back(row);
        }
    }
    if (!header_seen) {
        throw ParseError("trace line 1: missing header");
    }
    return trace;
}

}  // namespace hybridcsp
