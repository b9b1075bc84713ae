// hybridcsp command-line harness.
//
// Exit codes: 0 ok, 2 bad instance or input, 3 bad configuration, 4 a run
// failed or an internal error occurred.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "corpus.hpp"
#include "hybridcsp/errors.hpp"
#include "hybridcsp/harness.hpp"
#include "hybridcsp/instances.hpp"
#include "hybridcsp/spatial.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;
constexpr int kExitInternal = 4;

struct CommonOptions {
    std::string instance;
    std::string seeds = "1";
    std::string stop = "iters";
    std::size_t max_iters = 1000;
    std::optional<std::size_t> pop_size;
    std::optional<double> scrounger_prob;
    std::optional<double> eta;
    std::string out_dir;
    std::string params;
    std::size_t threads = 0;
};

void add_common(CLI::App& cmd, CommonOptions& o) {
    cmd.add_option("--instance", o.instance, "Instance file, or queensN / airport-sSEED")->required();
    cmd.add_option("--seeds", o.seeds, "Seed list: a..b or a,b,c");
    cmd.add_option("--stop", o.stop, "first | count:N | iters | exhaust[:N]");
    cmd.add_option("--max-iters", o.max_iters, "Iteration cap");
    cmd.add_option("--pop-size", o.pop_size, "Population size");
    cmd.add_option("--scrounger-prob", o.scrounger_prob, "Probability a non-producer scrounges");
    cmd.add_option("--eta", o.eta, "Polynomial mutation distribution index");
    cmd.add_option("--out-dir", o.out_dir, "Output directory (default $HYBRIDCSP_OUT_DIR or .)");
    cmd.add_option("--params", o.params, "Extra overrides key=val,...");
    cmd.add_option("--threads", o.threads, "Worker threads for seeds (0 = all cores)");
}

hybridcsp::RunConfig make_config(const CommonOptions& o, const std::string& algo) {
    hybridcsp::RunConfig c;
    c.instance = o.instance;
    c.algorithm = hybridcsp::parse_algorithm(algo);
    c.seeds = hybridcsp::parse_seed_list(o.seeds);
    c.stop = hybridcsp::parse_stop(o.stop);
    c.max_iters = o.max_iters;
    c.pop_size = o.pop_size;
    c.scrounger_prob = o.scrounger_prob;
    c.eta = o.eta;
    if (!o.params.empty()) {
        c.params = hybridcsp::parse_param_overrides(o.params);
    }
    if (!o.out_dir.empty()) {
        c.out_dir = o.out_dir;
    } else if (const char* env = std::getenv("HYBRIDCSP_OUT_DIR"); env != nullptr && *env != '\0') {
        c.out_dir = env;
    }
    c.threads = o.threads;
    return c;
}

void print_summary(const hybridcsp::RunReport& report) {
    const hybridcsp::SummaryRow rows[] = {report.summary};
    std::cout << hybridcsp::summary_csv(rows);
    std::cerr << "wrote " << report.trace_files.size() << " trace file(s) and " << report.summary_file.string()
              << '\n';
}

int report_errors(const std::vector<std::string>& errors) {
    for (const auto& e : errors) {
        std::cerr << "error: " << e << '\n';
    }
    return errors.empty() ? kExitOk : kExitInternal;
}

int cmd_run(const CommonOptions& o, const std::string& algo) {
    const hybridcsp::RunReport report = hybridcsp::run(make_config(o, algo));
    print_summary(report);
    return report_errors(report.errors);
}

int cmd_compare(const CommonOptions& o, const std::vector<std::string>& algos) {
    std::vector<hybridcsp::RunConfig> configs;
    for (const auto& a : algos) {
        configs.push_back(make_config(o, a));
    }
    const hybridcsp::CompareReport report = hybridcsp::compare(configs);
    std::vector<hybridcsp::SummaryRow> rows;
    std::vector<std::string> errors;
    for (const auto& r : report.runs) {
        rows.push_back(r.summary);
        errors.insert(errors.end(), r.errors.begin(), r.errors.end());
    }
    std::cout << hybridcsp::comparison_table_csv(rows);
    std::cerr << "wrote " << report.curves_file.string() << " and " << report.table_file.string() << '\n';
    return report_errors(errors);
}

struct GenOptions {
    std::string kind;
    std::size_t n = 8;
    int domain = 8;
    double p1 = 0.3;
    double p2 = 0.3;
    std::uint64_t seed = 1;
    std::string edges;
    int colors = 3;
    std::string out;
};

std::vector<std::pair<std::size_t, std::size_t>> parse_edges(const std::string& text) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string::npos) {
            end = text.size();
        }
        const std::string item = text.substr(pos, end - pos);
        const std::size_t dash = item.find('-');
        if (dash == std::string::npos) {
            throw hybridcsp::ConfigError("bad edge '" + item + "' (expected u-v)");
        }
        try {
            edges.emplace_back(std::stoul(item.substr(0, dash)), std::stoul(item.substr(dash + 1)));
        } catch (const std::exception&) {
            throw hybridcsp::ConfigError("bad edge '" + item + "' (expected u-v)");
        }
        pos = end + 1;
    }
    return edges;
}

int cmd_gen(const GenOptions& g) {
    std::optional<hybridcsp::ConstraintNetwork> net;
    if (g.kind == "queens") {
        net = hybridcsp::gen_nqueens(g.n);
    } else if (g.kind == "random") {
        net = hybridcsp::gen_random_binary(g.n, g.domain, g.p1, g.p2, g.seed);
    } else if (g.kind == "coloring") {
        net = hybridcsp::gen_graph_coloring(g.n, parse_edges(g.edges), g.colors);
    } else if (g.kind == "airport") {
        net = hybridcsp::gen_spatial_graph(hybridcsp::airport_spec(), g.seed).network;
    } else {
        throw hybridcsp::ConfigError("unknown generator '" + g.kind + "' (expected queens, random, coloring, airport)");
    }
    if (g.out.empty() || g.out == "-") {
        std::cout << hybridcsp::serialize_instance(*net);
    } else {
        hybridcsp::write_instance_file(g.out, *net);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid group-search / arc-consistency CSP solver and benchmark harness"};
    app.require_subcommand(1);

    CommonOptions run_opts;
    std::string algo = "apm-cpgso";
    CLI::App* run = app.add_subcommand("run", "Run one algorithm over a seed list");
    add_common(*run, run_opts);
    run->add_option("--algo", algo, "apm-cpgso | gso | pso | backtrack");

    CommonOptions cmp_opts;
    std::vector<std::string> algos;
    CLI::App* cmp = app.add_subcommand("compare", "Run several algorithms with shared seeds");
    add_common(*cmp, cmp_opts);
    cmp->add_option("--algo", algos, "Algorithm; repeat for each series")->required();

    GenOptions gen_opts;
    CLI::App* gen = app.add_subcommand("gen", "Write a generated instance");
    gen->add_option("kind", gen_opts.kind, "queens | random | coloring | airport")->required();
    gen->add_option("--n", gen_opts.n, "Variables (queens, random) or vertices (coloring)");
    gen->add_option("--domain", gen_opts.domain, "Domain size (random)");
    gen->add_option("--p1", gen_opts.p1, "Density (random)");
    gen->add_option("--p2", gen_opts.p2, "Tightness (random)");
    gen->add_option("--seed", gen_opts.seed, "Generator seed (random, airport)");
    gen->add_option("--edges", gen_opts.edges, "Edge list u-v,u-v (coloring)");
    gen->add_option("--colors", gen_opts.colors, "Colors (coloring)");
    gen->add_option("-o,--out", gen_opts.out, "Output file (default stdout)");

    std::string corpus_dir = "corpus";
    CLI::App* gen_corpus = app.add_subcommand("gen-corpus", "Regenerate the bundled instance corpus");
    gen_corpus->add_option("--out-dir", corpus_dir, "Corpus directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) {
            return cmd_run(run_opts, algo);
        }
        if (*cmp) {
            return cmd_compare(cmp_opts, algos);
        }
        if (*gen) {
            return cmd_gen(gen_opts);
        }
        if (*gen_corpus) {
            const auto files = hybridcsp::corpus::write_corpus(corpus_dir);
            std::cerr << "wrote " << files.size() << " files under " << corpus_dir << '\n';
            return kExitOk;
        }
    } catch (const hybridcsp::ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const hybridcsp::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const hybridcsp::GenerationError& e) {
        std::cerr << "generation error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}
