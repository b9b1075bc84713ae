#ifndef HYBRIDCSP_CSP_HPP
#define HYBRIDCSP_CSP_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hybridcsp {

/// Dense variable index in 0..n-1.
struct VariableId {
    std::size_t index = 0;

    constexpr VariableId() = default;
    constexpr explicit VariableId(std::size_t i) : index(i) {}

    friend constexpr auto operator<=>(VariableId, VariableId) = default;
};

/// Finite integer domain. Values are kept sorted ascending without duplicates.
class Domain {
public:
    using value_type = int;
    using const_iterator = std::vector<int>::const_iterator;

    Domain() = default;
    Domain(std::initializer_list<int> values);
    explicit Domain(std::vector<int> values);

    /// {lo, lo+1, ..., hi}; empty when hi < lo.
    static Domain range(int lo, int hi);

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    bool contains(int value) const;
    int operator[](std::size_t i) const { return values_[i]; }
    const std::vector<int>& values() const { return values_; }

    const_iterator begin() const { return values_.begin(); }
    const_iterator end() const { return values_.end(); }

    friend bool operator==(const Domain&, const Domain&) = default;

private:
    std::vector<int> values_;
};

using Domains = std::vector<Domain>;

/// Closed catalog of binary relations.
enum class RelationKind {
    equal,
    not_equal,
    less_than,
    abs_diff_not_equal,  ///< |u - v| != offset
    allowed_tuples,      ///< (u, v) is one of an explicit tuple list
};

/// Catalog name used in instance files, e.g. "abs-diff-not-equal".
std::string_view to_string(RelationKind kind);
/// Inverse of to_string(); false if the name is not in the catalog.
bool parse_relation_kind(std::string_view name, RelationKind& out);

using ValuePair = std::pair<int, int>;

/// Binary constraint c = (scope, relation). The relation is evaluated on the
/// ordered pair (value of first(), value of second()).
class Constraint {
public:
    static Constraint equal(VariableId x, VariableId y);
    static Constraint not_equal(VariableId x, VariableId y);
    static Constraint less_than(VariableId x, VariableId y);
    static Constraint abs_diff_not_equal(VariableId x, VariableId y, int offset);
    static Constraint allowed_tuples(VariableId x, VariableId y, std::vector<ValuePair> tuples);

    VariableId first() const { return first_; }
    VariableId second() const { return second_; }
    RelationKind kind() const { return kind_; }
    int offset() const { return offset_; }
    /// Sorted, duplicate-free. Empty unless kind() == allowed_tuples.
    std::span<const ValuePair> tuples() const { return tuples_; }

    bool admits(int u, int v) const;

    friend bool operator==(const Constraint&, const Constraint&) = default;

private:
    Constraint(VariableId x, VariableId y, RelationKind kind);

    VariableId first_;
    VariableId second_;
    RelationKind kind_ = RelationKind::equal;
    int offset_ = 0;
    std::vector<ValuePair> tuples_;
};

/// Truth of the relation for the ordered pair (u, v) relative to c's scope order.
bool check_pair(const Constraint& c, int u, int v);

/// Provenance recorded by generators and carried through instance files.
struct InstanceMetadata {
    std::string generator;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> parameters;

    friend bool operator==(const InstanceMetadata&, const InstanceMetadata&) = default;
};

/// The CSP triple: variables 0..n-1, one domain each, binary constraints.
/// Immutable after construction.
class ConstraintNetwork {
public:
    /// Throws ConfigError if there are no variables, a domain is empty, or a
    /// scope is out of range or not distinct.
    ConstraintNetwork(Domains domains, std::vector<Constraint> constraints,
                      std::string name = {}, InstanceMetadata metadata = {});

    std::size_t size() const { return domains_.size(); }
    const Domains& domains() const { return domains_; }
    const Domain& domain(VariableId x) const { return domains_[x.index]; }
    std::span<const Constraint> constraints() const { return constraints_; }
    const std::string& name() const { return name_; }
    const InstanceMetadata& metadata() const { return metadata_; }

    /// Indices into constraints() of every constraint whose scope is {x, y}
    /// in either order.
    std::span<const std::size_t> constraints_between(VariableId x, VariableId y) const;
    /// Variables sharing at least one constraint with x, ascending.
    std::span<const VariableId> neighbors(VariableId x) const;

    /// Total number of complete assignments over the initial domains,
    /// saturating at SIZE_MAX.
    std::size_t assignment_space() const;

    friend bool operator==(const ConstraintNetwork& a, const ConstraintNetwork& b) {
        return a.domains_ == b.domains_ && a.constraints_ == b.constraints_ &&
               a.name_ == b.name_ && a.metadata_ == b.metadata_;
    }

private:
    Domains domains_;
    std::vector<Constraint> constraints_;
    std::string name_;
    InstanceMetadata metadata_;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_pair_;
    std::vector<std::vector<VariableId>> neighbors_;
};

/// One value per variable, indexed by VariableId::index.
using Assignment = std::vector<int>;

/// Number of constraints violated by a. Throws InvalidAssignmentError on a
/// length mismatch.
std::size_t evaluate(const ConstraintNetwork& network, std::span<const int> a);

bool is_solution(const ConstraintNetwork& network, std::span<const int> a);

}  // namespace hybridcsp

#endif  // HYBRIDCSP_CSP_HPP
