#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "monomial/apps.hpp"
#include "monomial/derand.hpp"
#include "support.hpp"

using namespace monomial;

namespace {

Graph k3() { return parse_graph("3 3\n1 2\n2 3\n1 3\n"); }
Graph single_edge() { return parse_graph("2 1\n1 2\n"); }
Graph path3() { return parse_graph("3 2\n1 2\n2 3\n"); }

SetSystem pair_system() { return parse_set_system("a1 a2 a3\na3 a4 a5\n", 3); }

std::int64_t degree(const ExponentVec& mono) {
    std::int64_t d = 0;
    for (const auto& [var, e] : mono) d += e;
    return d;
}

Graph random_graph(SplitMix64& rng, int n) {
    Graph g;
    g.n = n;
    for (int u = 1; u <= n; ++u) {
        for (int v = u + 1; v <= n; ++v) {
            if (rng.next() % 2 == 0) g.edges.emplace_back(u, v);
        }
    }
    return g;
}

SetSystem random_sets(SplitMix64& rng, int universe, int m, int count) {
    SetSystem s;
    s.m = m;
    for (int i = 0; i < universe; ++i) s.universe.push_back("u" + std::to_string(i));
    for (int i = 0; i < count; ++i) {
        std::vector<int> member;
        while (static_cast<int>(member.size()) < m) {
            const int item = static_cast<int>(rng.next() % static_cast<std::uint64_t>(universe));
            if (std::find(member.begin(), member.end(), item) == member.end()) member.push_back(item);
        }
        s.members.push_back(std::move(member));
    }
    return s;
}

} // namespace

TEST_CASE("graph parsing and validation") {
    const Graph g = k3();
    CHECK(g.n == 3);
    CHECK(g.edges.size() == 3);
    CHECK(serialize_graph(g) == "3 3\n1 2\n2 3\n1 3\n");
    CHECK_THROWS_AS(parse_graph("3\n"), FormatError);
    CHECK_THROWS_AS(parse_graph("2 1\n1 3\n"), FormatError); // out of range
    CHECK_THROWS_AS(parse_graph("2 1\n1 1\n"), FormatError); // self-loop
    CHECK_THROWS_AS(parse_graph("2 2\n1 2\n"), FormatError); // missing edge
}

TEST_CASE("set system parsing and validation") {
    const SetSystem s = pair_system();
    CHECK(s.universe.size() == 5);
    CHECK(s.members.size() == 2);
    CHECK(serialize_set_system(s) == "a1 a2 a3\na3 a4 a5\n");
    CHECK_THROWS_AS(parse_set_system("a b\n", 3), FormatError);       // wrong size
    CHECK_THROWS_AS(parse_set_system("a a b\n", 3), FormatError);     // duplicate item
    CHECK_THROWS_AS(parse_set_system("a b\n", 2, true), ParameterError); // strict m >= 3
    CHECK(parse_set_system("a b\n\nc d\n", 2).members.size() == 2);   // blank lines skipped
}

TEST_CASE("k-path circuit expansions match walk enumeration by hand") {
    // K3, k=2: every directed edge contributes one 2-walk.
    const auto c = build_kpath_circuit(k3(), 2);
    REQUIRE(c.has_value());
    const MonomialMap m = expand(*c);
    REQUIRE(m.terms.size() == 3);
    for (const auto& [mono, coeff] : m.terms) {
        CHECK(coeff == 2);
        CHECK(degree(mono) == 2);
    }

    // Single edge, k=3: walks 1-2-1 and 2-1-2.
    const auto c2 = build_kpath_circuit(single_edge(), 3);
    REQUIRE(c2.has_value());
    const MonomialMap m2 = expand(*c2);
    REQUIRE(m2.terms.size() == 2);
    for (const auto& [mono, coeff] : m2.terms) {
        CHECK(coeff == 1);
        CHECK(degree(mono) == 3);
    }

    // k=1: the sum of all vertex variables.
    const auto c3 = build_kpath_circuit(k3(), 1);
    REQUIRE(c3.has_value());
    CHECK(expand(*c3).terms.size() == 3);

    // Edgeless graph at k >= 2 has the zero polynomial.
    Graph lonely;
    lonely.n = 2;
    CHECK_FALSE(build_kpath_circuit(lonely, 2).has_value());
    CHECK(build_kpath_circuit(lonely, 1).has_value());
}

TEST_CASE("kpath_oracle spot cases") {
    CHECK(kpath_oracle(k3(), 3, 2));
    CHECK_FALSE(kpath_oracle(single_edge(), 3, 2));
    CHECK(kpath_oracle(single_edge(), 3, 3)); // walk 1-2-1
    CHECK(kpath_oracle(k3(), 1, 2));
    CHECK_THROWS_AS(kpath_oracle(k3(), 12, 4, 10), BudgetError);
}

TEST_CASE("set packing circuit is tree-like with the right expansion") {
    SetSystem one;
    one.m = 3;
    one.universe = {"x1", "x2", "x3"};
    one.members = {{0, 1, 2}};
    const auto c1 = build_setpack_circuit(one, 1);
    REQUIRE(c1.has_value());
    const MonomialMap m1 = expand(*c1);
    CHECK(m1.terms.size() == 1);
    CHECK(m1.terms.begin()->second == 1);
    CHECK(degree(m1.terms.begin()->first) == 3);
    CHECK(circuit_stats(*c1).tree_like);

    const auto c2 = build_setpack_circuit(pair_system(), 2);
    REQUIRE(c2.has_value());
    CHECK(circuit_stats(*c2).tree_like);
    const MonomialMap m2 = expand(*c2);
    // (f(A)+f(B))^2 = f(A)^2 + 2 f(A)f(B) + f(B)^2.
    CHECK(m2.terms.size() == 3);
    int coeff2 = 0;
    for (const auto& [mono, coeff] : m2.terms) {
        CHECK(degree(mono) == 6);
        if (coeff == 2) {
            ++coeff2;
            CHECK(mono.size() == 5); // x1 x2 x3^2 x4 x5
        }
    }
    CHECK(coeff2 == 1);

    SetSystem empty;
    empty.m = 2;
    CHECK_FALSE(build_setpack_circuit(empty, 1).has_value());
}

TEST_CASE("setpack_oracle spot cases") {
    const SetSystem s = pair_system();
    CHECK_FALSE(setpack_oracle(s, 2, 2)); // element a3 covered twice
    CHECK(setpack_oracle(s, 2, 3));
    SetSystem one;
    one.m = 3;
    one.universe = {"a", "b", "c"};
    one.members = {{0, 1, 2}};
    CHECK(setpack_oracle(one, 2, 3)); // the same member twice, multiplicity 2
    CHECK_FALSE(setpack_oracle(one, 2, 2));

    SplitMix64 rng(47);
    const SetSystem big = random_sets(rng, 30, 3, 25);
    CHECK_THROWS_AS(setpack_oracle(big, 8, 2, 50), BudgetError);
}

TEST_CASE("p2_to_sets") {
    const P2System p2 = p2_to_sets(k3());
    CHECK(p2.sets.members.size() == 1); // all three P2s share the vertex set
    CHECK(p2.sets.members[0].size() == 3);

    const P2System path = p2_to_sets(path3());
    CHECK(path.sets.members.size() == 1);
    CHECK(path.centers == std::vector<int>{2});

    const P2System none = p2_to_sets(single_edge());
    CHECK(none.sets.members.empty());
}

TEST_CASE("reduction faithfulness: polynomial predicate == combinatorial predicate") {
    SplitMix64 rng(41);
    for (int rep = 0; rep < 20; ++rep) {
        const Graph g = random_graph(rng, 2 + static_cast<int>(rng.next() % 4));
        const int k = 1 + static_cast<int>(rng.next() % 4);
        const int q = 2 + static_cast<int>(rng.next() % 3);
        const auto c = build_kpath_circuit(g, k);
        const bool via_poly = c.has_value() && q_monomial_oracle(expand(*c, 200'000), q, k);
        CHECK(via_poly == kpath_oracle(g, k, q));
    }
    for (int rep = 0; rep < 20; ++rep) {
        const int m = 1 + static_cast<int>(rng.next() % 3);
        const SetSystem s = random_sets(rng, 4 + m, m, 1 + static_cast<int>(rng.next() % 4));
        const int k = 1 + static_cast<int>(rng.next() % 3);
        const int q = 2 + static_cast<int>(rng.next() % 3);
        const auto c = build_setpack_circuit(s, k);
        const bool via_poly = c.has_value() && q_monomial_oracle(expand(*c, 200'000), q, m * k);
        CHECK(via_poly == setpack_oracle(s, k, q));
    }
}

TEST_CASE("homogeneity of the application polynomials") {
    SplitMix64 rng(43);
    for (int rep = 0; rep < 10; ++rep) {
        const Graph g = random_graph(rng, 3 + static_cast<int>(rng.next() % 3));
        const int k = 1 + static_cast<int>(rng.next() % 3);
        const auto c = build_kpath_circuit(g, k);
        if (!c) continue;
        for (const auto& [mono, coeff] : expand(*c, 100'000).terms) CHECK(degree(mono) == k);
    }
    const auto sp = build_setpack_circuit(pair_system(), 3);
    REQUIRE(sp.has_value());
    for (const auto& [mono, coeff] : expand(*sp).terms) CHECK(degree(mono) == 9);
}

TEST_CASE("end-to-end: testers match oracles on the worked instances") {
    // kpath K3 q=2 k=3 yes; single edge q=2 k=3 no, q=3 k=3 yes.
    const auto ck3 = build_kpath_circuit(k3(), 3);
    REQUIRE(ck3.has_value());
    CHECK(rtm_test(*ck3, TestParams{2, 3, 64, 1}).yes);

    const auto cedge = build_kpath_circuit(single_edge(), 3);
    REQUIRE(cedge.has_value());
    CHECK_FALSE(rtm_test(*cedge, TestParams{2, 3, 128, 1}).yes);
    CHECK(rtm_test(*cedge, TestParams{3, 3, 64, 1}).yes);

    // setpack pair: q=2 k=2 no, q=3 k=2 yes; both testers.
    const auto cpair = build_setpack_circuit(pair_system(), 2);
    REQUIRE(cpair.has_value());
    CHECK_FALSE(rtm_test(*cpair, TestParams{2, 6, 128, 1}).yes);
    CHECK(rtm_test(*cpair, TestParams{3, 6, 64, 1}).yes);
    CHECK_FALSE(dtm_test(*cpair, 2, 6).yes);
    CHECK(dtm_test(*cpair, 3, 6).yes);
}
