#ifndef HYBRIDCSP_PROPAGATION_HPP
#define HYBRIDCSP_PROPAGATION_HPP

#include <vector>

#include "hybridcsp/csp.hpp"

namespace hybridcsp {

struct Removal {
    VariableId variable;
    int value = 0;

    friend bool operator==(const Removal&, const Removal&) = default;
};

/// Output of arc-consistency filtering. Wipeout is a result state, not an error.
struct PropagationResult {
    Domains domains;
    bool wipeout = false;
    /// Every removed (variable, value), in removal order.
    std::vector<Removal> removals;
};

struct ReviseResult {
    bool changed = false;
    Domain domain;
};

/// Keeps the values of xi that have a support in D(xj) under every
/// constraint on {xi, xj} simultaneously. Throws NoArcError if the pair is
/// unconstrained.
ReviseResult revise(const ConstraintNetwork& network, VariableId xi, VariableId xj,
                    const Domains& domains);

/// Order in which the initial arc queue is seeded.
enum class ArcOrder { forward, reversed };

/// AC-3 over the arcs of the network, run to the fixpoint. The result is the
/// maximal arc-consistent sub-domain set, independent of `order`. When some
/// domain empties, propagation still runs to completion so the reported
/// domains are order-independent too.
PropagationResult ac3(const ConstraintNetwork& network, Domains domains,
                      ArcOrder order = ArcOrder::forward);

/// ac3 on the network's own initial domains.
PropagationResult ac3(const ConstraintNetwork& network);

/// ac3 on `domains` with domains[var] restricted to {value}. Throws
/// InvalidValueError if value is not in domains[var].
PropagationResult assign_and_propagate(const ConstraintNetwork& network, const Domains& domains,
                                       VariableId var, int value);

}  // namespace hybridcsp

#endif  // HYBRIDCSP_PROPAGATION_HPP
