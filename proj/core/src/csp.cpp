#include "hybridcsp/csp.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <limits>

#include "hybridcsp/errors.hpp"

namespace hybridcsp {

namespace {

void normalize(std::vector<int>& values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
}

constexpr std::array<std::pair<RelationKind, std::string_view>, 5> kKindNames{{
    {RelationKind::equal, "equal"},
    {RelationKind::not_equal, "not-equal"},
    {RelationKind::less_than, "less-than"},
    {RelationKind::abs_diff_not_equal, "abs-diff-not-equal"},
    {RelationKind::allowed_tuples, "allowed-tuples"},
}};

}  // namespace

Domain::Domain(std::initializer_list<int> values) : values_(values) {
    normalize(values_);
}

Domain::Domain(std::vector<int> values) : values_(std::move(values)) {
    normalize(values_);
}

Domain Domain::range(int lo, int hi) {
    Domain d;
    for (int v = lo; v <= hi; ++v) {
        d.values_.push_back(v);
    }
    return d;
}

bool Domain::contains(int value) const {
    return std::binary_search(values_.begin(), values_.end(), value);
}

std::string_view to_string(RelationKind kind) {
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) {
            return name;
        }
    }
    return "unknown";
}

bool parse_relation_kind(std::string_view name, RelationKind& out) {
    for (const auto& [k, n] : kKindNames) {
        if (n == name) {
            out = k;
            return true;
        }
    }
    return false;
}

Constraint::Constraint(VariableId x, VariableId y, RelationKind kind)
    : first_(x), second_(y), kind_(kind) {}

Constraint Constraint::equal(VariableId x, VariableId y) {
    return Constraint(x, y, RelationKind::equal);
}

Constraint Constraint::not_equal(VariableId x, VariableId y) {
    return Constraint(x, y, RelationKind::not_equal);
}

Constraint Constraint::less_than(VariableId x, VariableId y) {
    return Constraint(x, y, RelationKind::less_than);
}

Constraint Constraint::abs_diff_not_equal(VariableId x, VariableId y, int offset) {
    Constraint c(x, y, RelationKind::abs_diff_not_equal);
    c.offset_ = offset;
    return c;
}

Constraint Constraint::allowed_tuples(VariableId x, VariableId y, std::vector<ValuePair> tuples) {
    Constraint c(x, y, RelationKind::allowed_tuples);
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    c.tuples_ = std::move(tuples);
    return c;
}

bool Constraint::admits(int u, int v) const {
    switch (kind_) {
        case RelationKind::equal:
            return u == v;
        case RelationKind::not_equal:
            return u != v;
        case RelationKind::less_than:
            return u < v;
        case RelationKind::abs_diff_not_equal: {
            const long long diff = static_cast<long long>(u) - static_cast<long long>(v);
            return std::llabs(diff) != static_cast<long long>(offset_);
        }
        case RelationKind::allowed_tuples:
            return std::binary_search(tuples_.begin(), tuples_.end(), ValuePair{u, v});
    }
    return false;
}

bool check_pair(const Constraint& c, int u, int v) {
    return c.admits(u, v);
}

ConstraintNetwork::ConstraintNetwork(Domains domains, std::vector<Constraint> constraints,
                                     std::string name, InstanceMetadata metadata)
    : domains_(std::move(domains)),
      constraints_(std::move(constraints)),
      name_(std::move(name)),
      metadata_(std::move(metadata)) {
    if (domains_.empty()) {
        throw ConfigError("constraint network needs at least one variable");
    }
    for (std::size_t i = 0; i < domains_.size(); ++i) {
        if (domains_[i].empty()) {
            throw ConfigError("domain of variable " + std::to_string(i) + " is empty");
        }
    }
    neighbors_.resize(domains_.size());
    for (std::size_t ci = 0; ci < constraints_.size(); ++ci) {
        const Constraint& c = constraints_[ci];
        const std::size_t a = c.first().index;
        const std::size_t b = c.second().index;
        if (a >= domains_.size() || b >= domains_.size()) {
            throw ConfigError("constraint " + std::to_string(ci) + " references a variable out of range");
        }
        if (a == b) {
            throw ConfigError("constraint " + std::to_string(ci) + " has a non-distinct scope");
        }
        by_pair_[{std::min(a, b), std::max(a, b)}].push_back(ci);
    }
    for (const auto& [pair, _] : by_pair_) {
        neighbors_[pair.first].push_back(VariableId(pair.second));
        neighbors_[pair.second].push_back(VariableId(pair.first));
    }
    for (auto& list : neighbors_) {
        std::sort(list.begin(), list.end());
    }
}

std::span<const std::size_t> ConstraintNetwork::constraints_between(VariableId x, VariableId y) const {
    const auto it = by_pair_.find({std::min(x.index, y.index), std::max(x.index, y.index)});
    if (it == by_pair_.end()) {
        return {};
    }
    return it->second;
}

std::span<const VariableId> ConstraintNetwork::neighbors(VariableId x) const {
    return neighbors_.at(x.index);
}

std::size_t ConstraintNetwork::assignment_space() const {
    std::size_t total = 1;
    for (const Domain& d : domains_) {
        if (total > std::numeric_limits<std::size_t>::max() / d.size()) {
            return std::numeric_limits<std::size_t>::max();
        }
        total *= d.size();
    }
    return total;
}

std::size_t evaluate(const ConstraintNetwork& network, std::span<const int> a) {
    if (a.size() != network.size()) {
        throw InvalidAssignmentError("assignment has " + std::to_string(a.size()) +
                                     " values, network has " + std::to_string(network.size()) +
                                     " variables");
    }
    std::size_t violated = 0;
    for (const Constraint& c : network.constraints()) {
        if (!c.admits(a[c.first().index], a[c.second().index])) {
            ++violated;
        }
    }
    return violated;
}

bool is_solution(const ConstraintNetwork& network, std::span<const int> a) {
    return evaluate(network, a) == 0;
}

}  // namespace hybridcsp
