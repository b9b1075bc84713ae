#include "hybridcsp/propagation.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "hybridcsp/errors.hpp"

namespace hybridcsp {

namespace {

using Arc = std::pair<std::size_t, std::size_t>;

// Filters domains[xi] in place against domains[xj]; appends removed values.
bool revise_in_place(const ConstraintNetwork& network, std::size_t xi, std::size_t xj,
                     Domains& domains, std::vector<Removal>* removals) {
    const auto between = network.constraints_between(VariableId(xi), VariableId(xj));
    const auto constraints = network.constraints();
    const Domain& dj = domains[xj];

    auto supported = [&](int u) {
        for (int v : dj) {
            bool ok = true;
            for (std::size_t ci : between) {
                const Constraint& c = constraints[ci];
                const bool admitted = c.first().index == xi ? c.admits(u, v) : c.admits(v, u);
                if (!admitted) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                return true;
            }
        }
        return false;
    };

    std::vector<int> kept;
    kept.reserve(domains[xi].size());
    bool changed = false;
    for (int u : domains[xi]) {
        if (supported(u)) {
            kept.push_back(u);
        } else {
            changed = true;
            if (removals != nullptr) {
                removals->push_back({VariableId(xi), u});
            }
        }
    }
    if (changed) {
        domains[xi] = Domain(std::move(kept));
    }
    return changed;
}

}  // namespace

ReviseResult revise(const ConstraintNetwork& network, VariableId xi, VariableId xj,
                    const Domains& domains) {
    if (xi.index >= network.size() || xj.index >= network.size() ||
        network.constraints_between(xi, xj).empty() || xi == xj) {
        throw NoArcError("no constraint between variables " + std::to_string(xi.index) + " and " +
                         std::to_string(xj.index));
    }
    if (domains.size() != network.size()) {
        throw DimensionError("domain vector does not match the network");
    }
    Domains work = domains;
    const bool changed = revise_in_place(network, xi.index, xj.index, work, nullptr);
    return {changed, std::move(work[xi.index])};
}

PropagationResult ac3(const ConstraintNetwork& network, Domains domains, ArcOrder order) {
    const std::size_t n = network.size();
    if (domains.size() != n) {
        throw DimensionError("domain vector does not match the network");
    }

    std::vector<Arc> seed;
    for (std::size_t i = 0; i < n; ++i) {
        for (VariableId j : network.neighbors(VariableId(i))) {
            seed.emplace_back(i, j.index);
        }
    }
    if (order == ArcOrder::reversed) {
        std::reverse(seed.begin(), seed.end());
    }

    std::deque<Arc> queue(seed.begin(), seed.end());
    std::set<Arc> queued(seed.begin(), seed.end());

    PropagationResult result;
    while (!queue.empty()) {
        const auto [xi, xj] = queue.front();
        queue.pop_front();
        queued.erase({xi, xj});
        if (!revise_in_place(network, xi, xj, domains, &result.removals)) {
            continue;
        }
        for (VariableId k : network.neighbors(VariableId(xi))) {
            if (k.index == xj) {
                continue;
            }
            if (queued.insert({k.index, xi}).second) {
                queue.emplace_back(k.index, xi);
            }
        }
    }

    for (const Domain& d : domains) {
        if (d.empty()) {
            result.wipeout = true;
            break;
        }
    }
    result.domains = std::move(domains);
    return result;
}

PropagationResult ac3(const ConstraintNetwork& network) {
    return ac3(network, network.domains());
}

PropagationResult assign_and_propagate(const ConstraintNetwork& network, const Domains& domains,
                                       VariableId var, int value) {
    if (domains.size() != network.size() || var.index >= domains.size()) {
        throw DimensionError("domain vector does not match the network");
    }
    if (!domains[var.index].contains(value)) {
        throw InvalidValueError("value " + std::to_string(value) + " is not in the domain of variable " +
                                std::to_string(var.index));
    }
    Domains restricted = domains;
    std::vector<Removal> assigned;
    for (int v : domains[var.index]) {
        if (v != value) {
            assigned.push_back({var, v});
        }
    }
    restricted[var.index] = Domain{value};
    PropagationResult result = ac3(network, std::move(restricted));
    result.removals.insert(result.removals.begin(), assigned.begin(), assigned.end());
    return result;
}

}  // namespace hybridcsp
