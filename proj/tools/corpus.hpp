#ifndef HYBRIDCSP_TOOLS_CORPUS_HPP
#define HYBRIDCSP_TOOLS_CORPUS_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "hybridcsp/csp.hpp"

namespace hybridcsp::corpus {

struct Entry {
    /// Relative path inside the corpus directory, e.g. "basic/queens4.json".
    std::string path;
    ConstraintNetwork network;
};

/// basic/: small hand-checkable instances.
std::vector<Entry> basic_instances();
/// random/: 20 random binary instances used for solver comparisons.
std::vector<Entry> random_suite();
/// wipeout/: 20 instances that arc consistency refutes at the root.
std::vector<Entry> wipeout_suite();
std::vector<Entry> all_instances();

inline constexpr const char* kGoldenHeader = "file,variables,constraints,solutions";

/// One line per entry with its solution count from exhaustive backtracking.
std::string golden_csv(const std::vector<Entry>& entries);

/// Writes every instance plus golden.csv under `dir`. Returns the written paths.
std::vector<std::filesystem::path> write_corpus(const std::filesystem::path& dir);

}  // namespace hybridcsp::corpus

#endif  // HYBRIDCSP_TOOLS_CORPUS_HPP
