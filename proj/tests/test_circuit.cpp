#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "monomial/circuit.hpp"
#include "monomial/errors.hpp"
#include "monomial/rtm.hpp"
#include "support.hpp"

#include <nlohmann/json.hpp>

#include <set>

using namespace monomial;
using testsupport::Builder;
using testsupport::example1_circuit;

namespace {

ExponentVec mono(std::initializer_list<std::pair<std::int32_t, std::int32_t>> items) { return ExponentVec(items); }

const MonomialMap& example1_expansion() {
    static const MonomialMap m = expand(example1_circuit());
    return m;
}

} // namespace

TEST_CASE("parse accepts the documented format and validates") {
    const std::string text = R"({"gates": [
        {"id": 0, "op": "var", "name": "x1"},
        {"id": 1, "op": "var", "name": "x2"},
        {"id": 2, "op": "mul", "in": [0, 1]}
    ], "root": 2})";
    const Circuit c = parse_circuit(text);
    CHECK(c.gates().size() == 3);
    CHECK(c.variables() == std::vector<std::string>{"x1", "x2"});
    CHECK(c.gate(c.root()).kind == GateKind::Mul);
}

TEST_CASE("parse rejections carry gate id context") {
    CHECK_THROWS_AS(parse_circuit("not json"), FormatError);
    CHECK_THROWS_AS(parse_circuit(R"({"gates": [], "root": 0})"), FormatError);
    // arity violations
    CHECK_THROWS_AS(parse_circuit(R"({"gates": [{"id":0,"op":"var","name":"x"},{"id":1,"op":"mul","in":[0]}], "root": 1})"),
                    FormatError);
    CHECK_THROWS_AS(parse_circuit(R"({"gates": [{"id":0,"op":"add","in":[]}], "root": 0})"), FormatError);
    // dangling id
    CHECK_THROWS_AS(parse_circuit(R"({"gates": [{"id":0,"op":"var","name":"x"},{"id":1,"op":"mul","in":[0,7]}], "root": 1})"),
                    FormatError);
    // duplicate id
    CHECK_THROWS_AS(parse_circuit(R"({"gates": [{"id":0,"op":"var","name":"x"},{"id":0,"op":"var","name":"y"}], "root": 0})"),
                    FormatError);
    // cycle
    CHECK_THROWS_AS(
        parse_circuit(
            R"({"gates": [{"id":0,"op":"add","in":[1]},{"id":1,"op":"add","in":[0]},{"id":2,"op":"var","name":"x"}], "root": 0})"),
        FormatError);
    // unreachable gate
    CHECK_THROWS_AS(
        parse_circuit(R"({"gates": [{"id":0,"op":"var","name":"x"},{"id":1,"op":"var","name":"y"}], "root": 0})"),
        FormatError);

    try {
        parse_circuit(R"({"gates": [{"id":0,"op":"var","name":"x"},{"id":1,"op":"mul","in":[0]}], "root": 1})");
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("gate id 1") != std::string::npos);
    }
}

TEST_CASE("serialization round-trips bit-exactly and canonicalizes sparse ids") {
    const Circuit c = example1_circuit();
    const std::string text = serialize_circuit(c);
    const Circuit back = parse_circuit(text);
    CHECK(serialize_circuit(back) == text);

    // Sparse, shuffled ids normalize to dense ids in ascending order.
    const std::string sparse = R"({"gates": [
        {"id": 90, "op": "mul", "in": [10, 20]},
        {"id": 20, "op": "var", "name": "b"},
        {"id": 10, "op": "var", "name": "a"}
    ], "root": 90})";
    const Circuit s = parse_circuit(sparse);
    const std::string canon = serialize_circuit(s);
    CHECK(serialize_circuit(parse_circuit(canon)) == canon);
    CHECK(s.variables() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("circuit_stats on basic shapes") {
    Builder b1;
    const Circuit single = b1.finish(b1.var("x1"));
    CircuitStats st = circuit_stats(single);
    CHECK(st.s == 1);
    CHECK(st.t == 0);
    CHECK(st.n == 1);
    CHECK(st.tree_like);

    Builder b2;
    const GateId x = b2.var("x1");
    const Circuit sq = b2.finish(b2.mul(x, x));
    st = circuit_stats(sq);
    CHECK(st.s == 2);
    CHECK(st.t == 1);
    CHECK(st.tree_like); // terminals are exempt from the fan-out rule

    const Circuit ex1 = example1_circuit();
    st = circuit_stats(ex1);
    CHECK(st.s == 12);
    CHECK(st.t == 9);
    CHECK(st.n == 2);
    CHECK_FALSE(st.tree_like);

    // Stable across a reparse.
    const CircuitStats st2 = circuit_stats(parse_circuit(serialize_circuit(ex1)));
    CHECK(st2.s == st.s);
    CHECK(st2.t == st.t);
    CHECK(st2.tree_like == st.tree_like);
}

TEST_CASE("tree_like is invariant under gate renumbering") {
    // Same shape as example 1 but with ids reversed via sparse encoding.
    const Circuit c = example1_circuit();
    const std::string text = serialize_circuit(c);
    // Reverse ids: id -> 100 - id.
    auto doc = nlohmann::ordered_json::parse(text);
    for (auto& g : doc["gates"]) {
        g["id"] = 100 - g["id"].get<int>();
        if (g.contains("in")) {
            for (auto& in : g["in"]) in = 100 - in.get<int>();
        }
    }
    doc["root"] = 100 - doc["root"].get<int>();
    const Circuit renumbered = parse_circuit(doc.dump());
    CHECK(circuit_stats(renumbered).tree_like == circuit_stats(c).tree_like);
    CHECK(circuit_stats(renumbered).t == circuit_stats(c).t);
}

TEST_CASE("expand: worked example and trivial cases") {
    const MonomialMap& m = example1_expansion();
    REQUIRE(m.terms.size() == 5);
    CHECK(m.terms.at(mono({{0, 5}})) == 16);
    CHECK(m.terms.at(mono({{0, 3}, {1, 1}})) == 32);
    CHECK(m.terms.at(mono({{0, 2}, {1, 1}})) == 2);
    CHECK(m.terms.at(mono({{0, 1}, {1, 2}})) == 16);
    CHECK(m.terms.at(mono({{1, 2}})) == 2);

    Builder b;
    const GateId x = b.var("x1");
    const Circuit sq = b.finish(b.mul(x, x));
    const MonomialMap msq = expand(sq);
    CHECK(msq.terms.size() == 1);
    CHECK(msq.terms.at(mono({{0, 2}})) == 1);

    Builder b2;
    const GateId y = b2.var("x1");
    const Circuit dbl = b2.finish(b2.add({y, y}));
    const MonomialMap mdbl = expand(dbl);
    CHECK(mdbl.terms.size() == 1);
    CHECK(mdbl.terms.at(mono({{0, 1}})) == 2);
}

TEST_CASE("expansion cap raises an explicit error") {
    // (x1 + x2)^16 has 17 distinct monomials.
    Builder b;
    const GateId x1 = b.var("x1");
    const GateId x2 = b.var("x2");
    GateId acc = b.add({x1, x2});
    for (int i = 0; i < 4; ++i) acc = b.mul(acc, acc);
    const Circuit c = b.finish(acc);
    CHECK_THROWS_AS(expand(c, 10), BudgetError);
    CHECK(expand(c, 17).terms.size() == 17);
}

TEST_CASE("q_monomial_oracle on the worked expansion") {
    const MonomialMap& m = example1_expansion();
    CHECK_FALSE(q_monomial_oracle(m, 2, 3));
    CHECK_FALSE(q_monomial_oracle(m, 2, 100));
    CHECK(q_monomial_oracle(m, 3, 3));      // x1^2*x2
    CHECK(q_monomial_oracle(m, 3, 2));      // x2^2
    CHECK_FALSE(q_monomial_oracle(m, 3, 1)); // every monomial has degree >= 2
    CHECK(q_monomial_oracle(m, 6, 5));      // x1^5
    CHECK(q_monomial_oracle(m, 5, 5));      // x1^3*x2
    CHECK_FALSE(q_monomial_oracle(m, 5, 1));
    CHECK_THROWS_AS(q_monomial_oracle(m, 1, 3), ParameterError);
}

TEST_CASE("evaluate: worked example mod p and zero point") {
    const Circuit c = example1_circuit();
    const ModRing ring{1'000'003};
    CHECK(evaluate<std::uint64_t>(c, std::unordered_map<std::string, std::uint64_t>{{"x1", 1}, {"x2", 1}}, ring) == 68);
    CHECK(evaluate<std::uint64_t>(c, std::unordered_map<std::string, std::uint64_t>{{"x1", 0}, {"x2", 0}}, ring) == 0);
    CHECK_THROWS_AS(evaluate<std::uint64_t>(c, std::unordered_map<std::string, std::uint64_t>{{"x1", 1}}, ring),
                    ParameterError);
}

TEST_CASE("evaluate agrees with direct evaluation of the expansion") {
    SplitMix64 rng(99);
    const ModRing ring{1'000'003};
    for (int rep = 0; rep < 12; ++rep) {
        const Circuit c = testsupport::random_dag_circuit(rng, 2 + static_cast<int>(rng.next() % 4), 8);
        MonomialMap m;
        try {
            m = expand(c, 10'000);
        } catch (const BudgetError&) {
            continue;
        }
        for (int pt = 0; pt < 100; ++pt) {
            std::vector<std::uint64_t> point;
            for (std::size_t i = 0; i < c.variables().size(); ++i) point.push_back(rng.next() % ring.p);
            const std::uint64_t via_circuit = evaluate<std::uint64_t>(c, std::span<const std::uint64_t>(point), ring);

            std::uint64_t via_expansion = 0;
            for (const auto& [mo, coeff] : m.terms) {
                std::uint64_t term = static_cast<std::uint64_t>(coeff % ring.p);
                for (const auto& [var, e] : mo) {
                    for (int rep2 = 0; rep2 < e; ++rep2) term = ring.mul(term, point[static_cast<std::size_t>(var)]);
                }
                ring.add_assign(via_expansion, term);
            }
            CHECK(via_circuit == via_expansion);
        }
    }
}

TEST_CASE("identity-assigned group algebra evaluation equals the coefficient sum") {
    // With every variable bound to the algebra identity, the circuit value
    // is the sum of all expansion coefficients lifted onto the zero vector
    // (characteristic 2 reduces the integer coefficients mod 2).
    const FieldCtx ctx = ff_make_field(5);
    const AlgRing ring{&ctx, 3};
    SplitMix64 rng(55);
    for (int rep = 0; rep < 10; ++rep) {
        const Circuit c = testsupport::random_dag_circuit(rng, 2 + static_cast<int>(rng.next() % 3), 7);
        MonomialMap m;
        try {
            m = expand(c, 20'000);
        } catch (const BudgetError&) {
            continue;
        }
        BigInt total = 0;
        for (const auto& [mono, coeff] : m.terms) total += coeff;

        const std::vector<AlgElem> values(c.variables().size(), alg_identity(3));
        const AlgElem got = evaluate<AlgElem>(c, std::span<const AlgElem>(values), ring);
        AlgElem expect = alg_zero(3);
        expect.coeffs[0] = static_cast<std::uint32_t>(total % 2);
        CHECK(got == expect);
    }
}

TEST_CASE("unshare keeps the polynomial and becomes tree-like") {
    const Circuit c = example1_circuit();
    const Circuit t = unshare(c);
    CHECK(circuit_stats(t).tree_like);
    const MonomialMap a = expand(c);
    const MonomialMap b = expand(t);
    CHECK(a.terms == b.terms);
    CHECK_THROWS_AS(unshare(c, 10), BudgetError);
}

TEST_CASE("unshared tree coefficients count parse trees") {
    // For a tree-like circuit the coefficient of a monomial equals its
    // number of parse trees; example 1 keeps its stated coefficients.
    const Circuit t = unshare(example1_circuit());
    const MonomialMap m = expand(t);
    CHECK(m.terms.at(mono({{0, 5}})) == 16);
    CHECK(m.terms.at(mono({{0, 3}, {1, 1}})) == 32);
    CHECK(m.terms.at(mono({{1, 2}})) == 2);
}
