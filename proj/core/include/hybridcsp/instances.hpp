#ifndef HYBRIDCSP_INSTANCES_HPP
#define HYBRIDCSP_INSTANCES_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hybridcsp/csp.hpp"

namespace hybridcsp {

/// n queens, one per column; variable i holds the row of queen i in {1..n}.
/// Every pair gets not-equal and abs-diff-not-equal(|i - j|).
ConstraintNetwork gen_nqueens(std::size_t n);

/// One variable per vertex with domain {1..colors}, not-equal per edge.
/// Duplicate edges (in either orientation) are collapsed.
ConstraintNetwork gen_graph_coloring(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                     int colors);

/// Random binary CSP over domains {1..domain_size}: each pair is constrained
/// with probability density, and a constrained pair forbids each value pair
/// with probability tightness. Constraints are extensional.
ConstraintNetwork gen_random_binary(std::size_t n, int domain_size, double density, double tightness,
                                    std::uint64_t seed);

inline constexpr int kSchemaVersion = 1;

/// Canonical text form: fixed key order, constraints sorted by scope then
/// kind then payload.
std::string serialize_instance(const ConstraintNetwork& network);

/// Throws VersionError for an unsupported schema_version and ParseError
/// (naming the line or field) for anything else malformed.
ConstraintNetwork parse_instance(std::string_view text);

/// Same network with constraints in canonical order.
ConstraintNetwork canonicalize(const ConstraintNetwork& network);

ConstraintNetwork read_instance_file(const std::filesystem::path& path);

/// Writes the canonical form through a temporary file and a rename.
void write_instance_file(const std::filesystem::path& path, const ConstraintNetwork& network);

/// Writes `contents` to path via a sibling temporary file and rename.
void write_file_atomically(const std::filesystem::path& path, std::string_view contents);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace hybridcsp

#endif  // HYBRIDCSP_INSTANCES_HPP
