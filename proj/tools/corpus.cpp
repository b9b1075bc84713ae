#include "corpus.hpp"

#include <sstream>
#include <utility>

#include "hybridcsp/baselines.hpp"
#include "hybridcsp/instances.hpp"
#include "hybridcsp/spatial.hpp"

namespace hybridcsp::corpus {

namespace {

Entry entry(std::string dir, ConstraintNetwork network) {
    std::string path = std::move(dir) + "/" + network.name() + ".json";
    return {std::move(path), std::move(network)};
}

Domains uniform_domains(std::size_t n, int lo, int hi) {
    return Domains(n, Domain::range(lo, hi));
}

ConstraintNetwork less_than_cycle(std::size_t length, int values) {
    std::vector<Constraint> constraints;
    for (std::size_t i = 0; i < length; ++i) {
        constraints.push_back(Constraint::less_than(VariableId(i), VariableId((i + 1) % length)));
    }
    return ConstraintNetwork(uniform_domains(length, 1, values), std::move(constraints),
                             "lt-cycle-" + std::to_string(length) + "-d" + std::to_string(values),
                             {"lt-cycle", 0, {{"length", std::to_string(length)}, {"values", std::to_string(values)}}});
}

// x0 = x1 = ... = x_{len-1} with disjoint end domains.
ConstraintNetwork equality_chain(std::size_t length) {
    Domains domains(length, Domain::range(1, 4));
    domains.front() = Domain{1, 2};
    domains.back() = Domain{3, 4};
    std::vector<Constraint> constraints;
    for (std::size_t i = 0; i + 1 < length; ++i) {
        constraints.push_back(Constraint::equal(VariableId(i), VariableId(i + 1)));
    }
    return ConstraintNetwork(std::move(domains), std::move(constraints), "eq-chain-" + std::to_string(length),
                             {"eq-chain", 0, {{"length", std::to_string(length)}}});
}

ConstraintNetwork named(ConstraintNetwork network, std::string name) {
    const auto cs = network.constraints();
    return ConstraintNetwork(network.domains(), {cs.begin(), cs.end()}, std::move(name), network.metadata());
}

}  // namespace

std::vector<Entry> basic_instances() {
    std::vector<Entry> out;
    for (std::size_t n = 1; n <= 8; ++n) {
        out.push_back(entry("basic", gen_nqueens(n)));
    }
    const std::vector<std::pair<std::size_t, std::size_t>> triangle{{0, 1}, {1, 2}, {0, 2}};
    out.push_back(entry("basic", named(gen_graph_coloring(3, triangle, 3), "triangle-c3")));
    out.push_back(entry("basic", named(gen_graph_coloring(3, triangle, 2), "triangle-c2")));
    std::vector<std::pair<std::size_t, std::size_t>> petersen;
    for (std::size_t i = 0; i < 5; ++i) {
        petersen.emplace_back(i, (i + 1) % 5);
        petersen.emplace_back(i, i + 5);
        petersen.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    out.push_back(entry("basic", named(gen_graph_coloring(10, petersen, 3), "petersen-c3")));
    out.push_back(entry("basic", less_than_cycle(3, 3)));
    out.push_back(entry("basic", gen_random_binary(8, 8, 0.3, 0.3, 7)));
    out.push_back(entry("basic", named(gen_spatial_graph(airport_spec(), 1).network, "airport-s1")));
    return out;
}

std::vector<Entry> random_suite() {
    std::vector<Entry> out;
    for (std::uint64_t seed = 1001; seed <= 1020; ++seed) {
        out.push_back(entry("random", gen_random_binary(12, 6, 0.6, 0.35, seed)));
    }
    return out;
}

std::vector<Entry> wipeout_suite() {
    std::vector<Entry> out;
    for (std::size_t length = 3; length <= 12; ++length) {
        out.push_back(entry("wipeout", less_than_cycle(length, 2 + static_cast<int>(length % 4))));
    }
    for (std::size_t length = 2; length <= 6; ++length) {
        out.push_back(entry("wipeout", equality_chain(length)));
    }
    for (std::size_t n = 2; n <= 6; ++n) {
        out.push_back(entry("wipeout", gen_random_binary(n, 3, 1.0, 1.0, 100 + n)));
    }
    return out;
}

std::vector<Entry> all_instances() {
    std::vector<Entry> out = basic_instances();
    for (auto* part : {&random_suite, &wipeout_suite}) {
        auto more = part();
        out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    }
    return out;
}

std::string golden_csv(const std::vector<Entry>& entries) {
    std::ostringstream out;
    out << kGoldenHeader << '\n';
    for (const Entry& e : entries) {
        const BacktrackResult bt = solve_backtracking(e.network);
        out << e.path << ',' << e.network.size() << ',' << e.network.constraints().size() << ','
            << bt.solutions.size() << '\n';
    }
    return out.str();
}

std::vector<std::filesystem::path> write_corpus(const std::filesystem::path& dir) {
    const std::vector<Entry> entries = all_instances();
    std::vector<std::filesystem::path> written;
    for (const Entry& e : entries) {
        const std::filesystem::path path = dir / e.path;
        std::filesystem::create_directories(path.parent_path());
        write_instance_file(path, e.network);
        written.push_back(path);
    }
    written.push_back(dir / "golden.csv");
    write_file_atomically(written.back(), golden_csv(entries));
    return written;
}

}  // namespace hybridcsp::corpus
