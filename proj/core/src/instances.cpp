#include "hybridcsp/instances.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "hybridcsp/errors.hpp"
#include "hybridcsp/random.hpp"

namespace hybridcsp {

namespace {

using nlohmann::json;

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", value);
    return buf;
}

}  // namespace

ConstraintNetwork gen_nqueens(std::size_t n) {
    if (n == 0) {
        throw ConfigError("n-queens needs n >= 1");
    }
    Domains domains(n, Domain::range(1, static_cast<int>(n)));
    std::vector<Constraint> constraints;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            constraints.push_back(Constraint::not_equal(VariableId(i), VariableId(j)));
            constraints.push_back(
                Constraint::abs_diff_not_equal(VariableId(i), VariableId(j), static_cast<int>(j - i)));
        }
    }
    InstanceMetadata meta{"nqueens", 0, {{"n", std::to_string(n)}}};
    return ConstraintNetwork(std::move(domains), std::move(constraints), "queens" + std::to_string(n),
                             std::move(meta));
}

ConstraintNetwork gen_graph_coloring(std::size_t vertices,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& edges, int colors) {
    if (vertices == 0 || colors < 1) {
        throw ConfigError("graph coloring needs at least one vertex and one color");
    }
    std::set<std::pair<std::size_t, std::size_t>> unique;
    for (auto [a, b] : edges) {
        if (a >= vertices || b >= vertices) {
            throw ConfigError("edge endpoint out of range");
        }
        if (a == b) {
            throw ConfigError("self-loop on vertex " + std::to_string(a));
        }
        unique.insert({std::min(a, b), std::max(a, b)});
    }
    std::vector<Constraint> constraints;
    for (auto [a, b] : unique) {
        constraints.push_back(Constraint::not_equal(VariableId(a), VariableId(b)));
    }
    InstanceMetadata meta{"graph-coloring",
                          0,
                          {{"colors", std::to_string(colors)},
                           {"edges", std::to_string(unique.size())},
                           {"vertices", std::to_string(vertices)}}};
    return ConstraintNetwork(Domains(vertices, Domain::range(1, colors)), std::move(constraints),
                             "coloring-v" + std::to_string(vertices) + "-c" + std::to_string(colors),
                             std::move(meta));
}

ConstraintNetwork gen_random_binary(std::size_t n, int domain_size, double density, double tightness,
                                    std::uint64_t seed) {
    if (n == 0 || domain_size < 1) {
        throw ConfigError("random binary CSP needs n >= 1 and domain_size >= 1");
    }
    if (!(density >= 0.0 && density <= 1.0) || !(tightness >= 0.0 && tightness <= 1.0)) {
        throw ConfigError("density and tightness must lie in [0, 1]");
    }
    Rng rng(seed);
    std::vector<Constraint> constraints;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!(rng.uniform() < density)) {
                continue;
            }
            std::vector<ValuePair> allowed;
            for (int u = 1; u <= domain_size; ++u) {
                for (int v = 1; v <= domain_size; ++v) {
                    if (!(rng.uniform() < tightness)) {
                        allowed.emplace_back(u, v);
                    }
                }
            }
            constraints.push_back(Constraint::allowed_tuples(VariableId(i), VariableId(j), std::move(allowed)));
        }
    }
    InstanceMetadata meta{"random-binary",
                          seed,
                          {{"d", std::to_string(domain_size)},
                           {"n", std::to_string(n)},
                           {"p1", format_real(density)},
                           {"p2", format_real(tightness)}}};
    std::string name = "rb-n" + std::to_string(n) + "-d" + std::to_string(domain_size) + "-p" +
                       format_real(density) + "-t" + format_real(tightness) + "-s" + std::to_string(seed);
    return ConstraintNetwork(Domains(n, Domain::range(1, domain_size)), std::move(constraints), std::move(name),
                             std::move(meta));
}

namespace {

auto constraint_key(const Constraint& c) {
    return std::make_tuple(c.first().index, c.second().index, std::string(to_string(c.kind())), c.offset(),
                           std::vector<ValuePair>(c.tuples().begin(), c.tuples().end()));
}

std::string quoted(std::string_view s) {
    return json(std::string(s)).dump();
}

}  // namespace

ConstraintNetwork canonicalize(const ConstraintNetwork& network) {
    std::vector<Constraint> constraints(network.constraints().begin(), network.constraints().end());
    std::stable_sort(constraints.begin(), constraints.end(),
                     [](const Constraint& a, const Constraint& b) { return constraint_key(a) < constraint_key(b); });
    return ConstraintNetwork(network.domains(), std::move(constraints), network.name(), network.metadata());
}

std::string serialize_instance(const ConstraintNetwork& network) {
    const ConstraintNetwork canon = canonicalize(network);
    std::ostringstream out;
    out << "{\n";
    out << "  \"schema_version\": " << kSchemaVersion << ",\n";
    out << "  \"name\": " << quoted(canon.name()) << ",\n";
    out << "  \"n\": " << canon.size() << ",\n";
    out << "  \"domains\": [\n";
    for (std::size_t i = 0; i < canon.size(); ++i) {
        out << "    [";
        const Domain& d = canon.domains()[i];
        for (std::size_t k = 0; k < d.size(); ++k) {
            out << (k ? ", " : "") << d[k];
        }
        out << "]" << (i + 1 < canon.size() ? "," : "") << "\n";
    }
    out << "  ],\n";
    out << "  \"constraints\": [";
    const auto constraints = canon.constraints();
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        const Constraint& c = constraints[i];
        out << (i ? ",\n    " : "\n    ");
        out << "{\"scope\": [" << c.first().index << ", " << c.second().index << "], \"kind\": "
            << quoted(to_string(c.kind()));
        if (c.kind() == RelationKind::abs_diff_not_equal) {
            out << ", \"offset\": " << c.offset();
        } else if (c.kind() == RelationKind::allowed_tuples) {
            out << ", \"tuples\": [";
            const auto tuples = c.tuples();
            for (std::size_t t = 0; t < tuples.size(); ++t) {
                out << (t ? ", " : "") << "[" << tuples[t].first << ", " << tuples[t].second << "]";
            }
            out << "]";
        }
        out << "}";
    }
    out << (constraints.empty() ? "],\n" : "\n  ],\n");
    const InstanceMetadata& meta = canon.metadata();
    out << "  \"metadata\": {\"generator\": " << quoted(meta.generator) << ", \"seed\": " << meta.seed
        << ", \"parameters\": {";
    bool first = true;
    for (const auto& [key, value] : meta.parameters) {
        out << (first ? "" : ", ") << quoted(key) << ": " << quoted(value);
        first = false;
    }
    out << "}}\n";
    out << "}\n";
    return out.str();
}

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
    throw ParseError("instance field '" + field + "': " + what);
}

const json& require(const json& object, const std::string& key, const std::string& path) {
    const auto it = object.find(key);
    if (it == object.end()) {
        field_error(path.empty() ? key : path + "." + key, "missing");
    }
    return *it;
}

int as_int(const json& value, const std::string& path) {
    if (!value.is_number_integer()) {
        field_error(path, "expected an integer");
    }
    if (value.is_number_unsigned()) {
        const auto u = value.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
            field_error(path, "integer out of range");
        }
        return static_cast<int>(u);
    }
    const auto s = value.get<std::int64_t>();
    if (s < std::numeric_limits<int>::min() || s > std::numeric_limits<int>::max()) {
        field_error(path, "integer out of range");
    }
    return static_cast<int>(s);
}

void reject_unknown_keys(const json& object, std::initializer_list<std::string_view> allowed,
                         const std::string& path) {
    for (const auto& [key, _] : object.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            field_error(path.empty() ? key : path + "." + key, "unknown field");
        }
    }
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace

ConstraintNetwork parse_instance(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // nlohmann reports the byte just past the offending character.
        const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("instance line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": malformed JSON");
    }
    if (!doc.is_object()) {
        throw ParseError("instance line 1: document is not an object");
    }
    const json& version = require(doc, "schema_version", "");
    if (!version.is_number_integer() || as_int(version, "schema_version") != kSchemaVersion) {
        throw VersionError("unsupported schema_version " + version.dump() + " (supported: " +
                           std::to_string(kSchemaVersion) + ")");
    }
    reject_unknown_keys(doc, {"schema_version", "name", "n", "domains", "constraints", "metadata"}, "");

    const json& name = require(doc, "name", "");
    if (!name.is_string()) {
        field_error("name", "expected a string");
    }
    const int n = as_int(require(doc, "n", ""), "n");
    if (n < 1) {
        field_error("n", "must be at least 1");
    }

    const json& domains_json = require(doc, "domains", "");
    if (!domains_json.is_array() || domains_json.size() != static_cast<std::size_t>(n)) {
        field_error("domains", "expected an array of " + std::to_string(n) + " value lists");
    }
    Domains domains;
    for (std::size_t i = 0; i < domains_json.size(); ++i) {
        const std::string path = "domains[" + std::to_string(i) + "]";
        const json& values = domains_json[i];
        if (!values.is_array()) {
            field_error(path, "expected an array of integers");
        }
        if (values.empty()) {
            field_error(path, "domain is empty");
        }
        std::vector<int> vs;
        for (std::size_t k = 0; k < values.size(); ++k) {
            vs.push_back(as_int(values[k], path + "[" + std::to_string(k) + "]"));
        }
        domains.emplace_back(std::move(vs));
    }

    const json& constraints_json = require(doc, "constraints", "");
    if (!constraints_json.is_array()) {
        field_error("constraints", "expected an array");
    }
    std::vector<Constraint> constraints;
    for (std::size_t i = 0; i < constraints_json.size(); ++i) {
        const std::string path = "constraints[" + std::to_string(i) + "]";
        const json& cj = constraints_json[i];
        if (!cj.is_object()) {
            field_error(path, "expected an object");
        }
        reject_unknown_keys(cj, {"scope", "kind", "offset", "tuples"}, path);
        const json& scope = require(cj, "scope", path);
        if (!scope.is_array() || scope.size() != 2) {
            field_error(path + ".scope", "expected two variable indices");
        }
        const int a = as_int(scope[0], path + ".scope[0]");
        const int b = as_int(scope[1], path + ".scope[1]");
        if (a < 0 || a >= n || b < 0 || b >= n) {
            field_error(path + ".scope", "variable index out of range");
        }
        if (a == b) {
            field_error(path + ".scope", "scope variables must be distinct");
        }
        const json& kind_json = require(cj, "kind", path);
        RelationKind kind{};
        if (!kind_json.is_string() || !parse_relation_kind(kind_json.get<std::string>(), kind)) {
            field_error(path + ".kind", "unknown relation kind " + kind_json.dump());
        }
        const VariableId x(static_cast<std::size_t>(a));
        const VariableId y(static_cast<std::size_t>(b));
        const bool has_offset = cj.contains("offset");
        const bool has_tuples = cj.contains("tuples");
        if (has_offset && kind != RelationKind::abs_diff_not_equal) {
            field_error(path + ".offset", "only valid for abs-diff-not-equal");
        }
        if (has_tuples && kind != RelationKind::allowed_tuples) {
            field_error(path + ".tuples", "only valid for allowed-tuples");
        }
        switch (kind) {
            case RelationKind::equal:
                constraints.push_back(Constraint::equal(x, y));
                break;
            case RelationKind::not_equal:
                constraints.push_back(Constraint::not_equal(x, y));
                break;
            case RelationKind::less_than:
                constraints.push_back(Constraint::less_than(x, y));
                break;
            case RelationKind::abs_diff_not_equal:
                constraints.push_back(
                    Constraint::abs_diff_not_equal(x, y, as_int(require(cj, "offset", path), path + ".offset")));
                break;
            case RelationKind::allowed_tuples: {
                const json& tj = require(cj, "tuples", path);
                if (!tj.is_array()) {
                    field_error(path + ".tuples", "expected an array of pairs");
                }
                std::vector<ValuePair> tuples;
                for (std::size_t t = 0; t < tj.size(); ++t) {
                    const std::string tpath = path + ".tuples[" + std::to_string(t) + "]";
                    if (!tj[t].is_array() || tj[t].size() != 2) {
                        field_error(tpath, "expected a pair of integers");
                    }
                    tuples.emplace_back(as_int(tj[t][0], tpath + "[0]"), as_int(tj[t][1], tpath + "[1]"));
                }
                constraints.push_back(Constraint::allowed_tuples(x, y, std::move(tuples)));
                break;
            }
        }
    }

    InstanceMetadata meta;
    if (const auto it = doc.find("metadata"); it != doc.end()) {
        const json& mj = *it;
        if (!mj.is_object()) {
            field_error("metadata", "expected an object");
        }
        reject_unknown_keys(mj, {"generator", "seed", "parameters"}, "metadata");
        if (const auto g = mj.find("generator"); g != mj.end()) {
            if (!g->is_string()) {
                field_error("metadata.generator", "expected a string");
            }
            meta.generator = g->get<std::string>();
        }
        if (const auto s = mj.find("seed"); s != mj.end()) {
            if (!s->is_number_unsigned()) {
                field_error("metadata.seed", "expected a non-negative integer");
            }
            meta.seed = s->get<std::uint64_t>();
        }
        if (const auto p = mj.find("parameters"); p != mj.end()) {
            if (!p->is_object()) {
                field_error("metadata.parameters", "expected an object");
            }
            for (const auto& [key, value] : p->items()) {
                if (!value.is_string()) {
                    field_error("metadata.parameters." + key, "expected a string");
                }
                meta.parameters[key] = value.get<std::string>();
            }
        }
    }

    return canonicalize(ConstraintNetwork(std::move(domains), std::move(constraints), name.get<std::string>(),
                                          std::move(meta)));
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ConstraintNetwork read_instance_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    try {
        return parse_instance(text);
    } catch (const VersionError& e) {
        throw VersionError(path.string() + ": " + e.what());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_file_atomically(const std::filesystem::path& path, std::string_view contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write '" + tmp.string() + "'");
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) {
            throw Error("failed writing '" + tmp.string() + "'");
        }
    }
    std::filesystem::rename(tmp, path);
}

void write_instance_file(const std::filesystem::path& path, const ConstraintNetwork& network) {
    write_file_atomically(path, serialize_instance(network));
}

}  // namespace hybridcsp
