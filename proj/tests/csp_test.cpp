#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "hybridcsp/csp.hpp"
#include "hybridcsp/errors.hpp"
#include "hybridcsp/instances.hpp"
#include "oracles.hpp"

using namespace hybridcsp;

namespace {

ConstraintNetwork unconstrained(std::size_t n, int lo, int hi) {
    return ConstraintNetwork(Domains(n, Domain::range(lo, hi)), {});
}

}  // namespace

TEST_CASE("domain is sorted and duplicate free", "[csp]") {
    const Domain d{5, 1, 3, 1, 5};
    CHECK(d.values() == std::vector<int>{1, 3, 5});
    CHECK(d.contains(3));
    CHECK_FALSE(d.contains(2));
    CHECK(Domain::range(2, 4) == Domain{2, 3, 4});
    CHECK(Domain().empty());
}

TEST_CASE("network construction rejects malformed input", "[csp]") {
    CHECK_THROWS_AS(ConstraintNetwork({}, {}), ConfigError);
    CHECK_THROWS_AS(ConstraintNetwork({Domain{1}, Domain{}}, {}), ConfigError);
    CHECK_THROWS_AS(ConstraintNetwork({Domain{1}}, {Constraint::equal(VariableId(0), VariableId(1))}), ConfigError);
    CHECK_THROWS_AS(ConstraintNetwork({Domain{1}, Domain{2}}, {Constraint::equal(VariableId(1), VariableId(1))}),
                    ConfigError);
}

TEST_CASE("evaluate on 4-queens", "[csp]") {
    const ConstraintNetwork q4 = gen_nqueens(4);
    const Assignment all_ones{1, 1, 1, 1};
    const Assignment sol{2, 4, 1, 3};

    // Independent counts first.
    REQUIRE(oracle::queens_conflicts(all_ones) == 6);
    REQUIRE(oracle::queens_conflicts(sol) == 0);
    REQUIRE(oracle::solutions(q4).size() == 2);
    REQUIRE(oracle::solutions(q4).contains(sol));

    CHECK(evaluate(q4, all_ones) == 6);
    CHECK(evaluate(q4, sol) == 0);
    CHECK(is_solution(q4, sol));
    CHECK_FALSE(is_solution(q4, all_ones));
}

TEST_CASE("zero-constraint network has no violations", "[csp]") {
    const ConstraintNetwork net = unconstrained(3, -2, 2);
    CHECK(evaluate(net, Assignment{-2, 0, 2}) == 0);
    CHECK(is_solution(net, Assignment{1, 1, 1}));
}

TEST_CASE("evaluate rejects a length mismatch", "[csp]") {
    const ConstraintNetwork q4 = gen_nqueens(4);
    CHECK_THROWS_AS(evaluate(q4, Assignment{1, 2, 3}), InvalidAssignmentError);
    CHECK_THROWS_AS(is_solution(q4, Assignment{1, 2, 3, 4, 5}), InvalidAssignmentError);
}

TEST_CASE("check_pair relation catalog", "[csp]") {
    const VariableId x(0), y(1);
    CHECK_FALSE(check_pair(Constraint::not_equal(x, y), 3, 3));
    CHECK(check_pair(Constraint::less_than(x, y), 2, 5));
    CHECK_FALSE(check_pair(Constraint::less_than(x, y), 5, 2));
    CHECK(check_pair(Constraint::equal(x, y), 4, 4));
    CHECK_FALSE(check_pair(Constraint::abs_diff_not_equal(x, y, 2), 1, 3));
    CHECK_FALSE(check_pair(Constraint::abs_diff_not_equal(x, y, 2), 3, 1));
    CHECK(check_pair(Constraint::abs_diff_not_equal(x, y, 2), 1, 2));
    const Constraint t = Constraint::allowed_tuples(x, y, {{1, 2}, {2, 1}});
    CHECK_FALSE(check_pair(t, 2, 2));
    CHECK(check_pair(t, 2, 1));
}

TEST_CASE("relation names round trip", "[csp]") {
    for (RelationKind k : {RelationKind::equal, RelationKind::not_equal, RelationKind::less_than,
                           RelationKind::abs_diff_not_equal, RelationKind::allowed_tuples}) {
        RelationKind back{};
        REQUIRE(parse_relation_kind(to_string(k), back));
        CHECK(back == k);
    }
    RelationKind dummy{};
    CHECK_FALSE(parse_relation_kind("greater-than", dummy));
}

TEST_CASE("neighbors and constraints_between", "[csp]") {
    const ConstraintNetwork net({Domain{1, 2}, Domain{1, 2}, Domain{1, 2}},
                                {Constraint::not_equal(VariableId(2), VariableId(0)),
                                 Constraint::less_than(VariableId(0), VariableId(2))});
    CHECK(net.constraints_between(VariableId(0), VariableId(2)).size() == 2);
    CHECK(net.constraints_between(VariableId(2), VariableId(0)).size() == 2);
    CHECK(net.constraints_between(VariableId(0), VariableId(1)).empty());
    const auto nb = net.neighbors(VariableId(0));
    REQUIRE(nb.size() == 1);
    CHECK(nb[0] == VariableId(2));
    CHECK(net.neighbors(VariableId(1)).empty());
    CHECK(net.assignment_space() == 8);
}

TEST_CASE("evaluate properties on random networks", "[csp][property]") {
    std::mt19937_64 gen(20240611);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + gen() % 5;
        const int d = 2 + static_cast<int>(gen() % 4);
        const double p1 = static_cast<double>(gen() % 11) / 10.0;
        const double p2 = static_cast<double>(gen() % 11) / 10.0;
        const ConstraintNetwork net = gen_random_binary(n, d, p1, p2, gen());
        const std::size_t m = net.constraints().size();

        std::set<Assignment> sols;
        oracle::for_each_assignment(net.domains(), [&](const Assignment& a) {
            const std::size_t v = evaluate(net, a);
            // Sum of per-constraint failures, folded back to front.
            std::size_t reverse_fold = 0;
            for (std::size_t i = m; i-- > 0;) {
                const Constraint& c = net.constraints()[i];
                reverse_fold += check_pair(c, a[c.first().index], a[c.second().index]) ? 0 : 1;
            }
            REQUIRE(v == reverse_fold);
            REQUIRE(v == oracle::violations(net, a));
            REQUIRE(v <= m);
            REQUIRE(is_solution(net, a) == (v == 0));
            if (v == 0) {
                sols.insert(a);
            }
        });
        REQUIRE(sols == oracle::solutions(net));
    }
}

TEST_CASE("extensional check_pair agrees with tuple membership", "[csp][property]") {
    std::mt19937_64 gen(77);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<ValuePair> tuples;
        const int count = static_cast<int>(gen() % 12);
        for (int i = 0; i < count; ++i) {
            tuples.emplace_back(static_cast<int>(gen() % 7) - 3, static_cast<int>(gen() % 7) - 3);
        }
        const std::set<ValuePair> members(tuples.begin(), tuples.end());
        const Constraint c = Constraint::allowed_tuples(VariableId(0), VariableId(1), tuples);
        for (const auto& t : members) {
            REQUIRE(check_pair(c, t.first, t.second));
        }
        for (int i = 0; i < 50; ++i) {
            const int u = static_cast<int>(gen() % 9) - 4;
            const int v = static_cast<int>(gen() % 9) - 4;
            REQUIRE(check_pair(c, u, v) == members.contains({u, v}));
        }
    }
}
