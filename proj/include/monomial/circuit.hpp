#pragma once

#include "monomial/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace monomial {

using GateId = std::int32_t;
using BigInt = boost::multiprecision::cpp_int;

enum class GateKind : std::uint8_t { Var, Add, Mul };

// Mul gates have exactly two inputs, Add gates at least one (unbounded
// fan-in), Var gates none. Multi-edges are allowed: the same child id may
// appear in several input slots.
struct Gate {
    GateKind kind = GateKind::Var;
    std::string name;         // Var only
    std::vector<GateId> in;   // Add/Mul
};

struct Edge {
    GateId parent = 0;
    int slot = 0;
    GateId child = 0;
};

struct CircuitStats {
    std::int64_t s = 0;     // gate count
    std::int64_t t = 0;     // longest root-to-terminal path, in edges
    std::int64_t n = 0;     // distinct variables
    bool tree_like = false; // every non-terminal gate has fan-out <= 1
};

class Circuit {
public:
    Circuit() = default;

    // Validates arities, acyclicity and reachability from the root; throws
    // FormatError with gate id context on violations.
    static Circuit from_gates(std::vector<Gate> gates, GateId root);

    const std::vector<Gate>& gates() const { return gates_; }
    const Gate& gate(GateId g) const { return gates_[static_cast<std::size_t>(g)]; }
    GateId root() const { return root_; }

    // Children before parents; root last.
    const std::vector<GateId>& topo_order() const { return topo_; }

    // Distinct variable names in order of first occurrence by gate id.
    const std::vector<std::string>& variables() const { return vars_; }
    int var_index(GateId g) const { return var_index_[static_cast<std::size_t>(g)]; }
    int var_index_of(const std::string& name) const;

    // Edges ordered by (parent id, slot); edge ids are positions here.
    std::vector<Edge> edges() const;
    // Referencing (parent, slot) pairs per gate, i.e. fan-out edges.
    std::vector<std::vector<Edge>> fanout() const;

private:
    std::vector<Gate> gates_;
    GateId root_ = 0;
    std::vector<GateId> topo_;
    std::vector<std::string> vars_;
    std::vector<int> var_index_;
    std::unordered_map<std::string, int> var_lookup_;
};

// Circuit file format: JSON object {"gates": [{"id", "op": "var"|"add"|"mul",
// "name"?, "in"?}...], "root"}. Ids are distinct non-negative integers and
// are canonicalized to dense indices in ascending id order on parse;
// serialize() of a parsed circuit is a fixed canonical form that round-trips
// bit-exactly.
Circuit parse_circuit(const std::string& text);
std::string serialize_circuit(const Circuit& c);

CircuitStats circuit_stats(const Circuit& c);

// Exponent vector: (variable index, exponent >= 1) pairs sorted by variable.
using ExponentVec = std::vector<std::pair<std::int32_t, std::int32_t>>;

// Sum-product expansion with arbitrary-precision integer coefficients.
struct MonomialMap {
    std::map<ExponentVec, BigInt> terms;
};

inline constexpr std::size_t kDefaultExpandCap = 1'000'000;

// Exact symbolic expansion; oracle only, never used on large inputs. Throws
// BudgetError("expansion too large") when the distinct monomial count
// exceeds cap.
MonomialMap expand(const Circuit& c, std::size_t cap = kDefaultExpandCap);

// True iff some monomial has every exponent in [1, q-1] and total degree <= k.
bool q_monomial_oracle(const MonomialMap& m, int q, int k);

// Debug rendering of an expansion, deterministic term order.
std::string monomials_to_string(const MonomialMap& m, std::span<const std::string> var_names);

// Expands DAG sharing into a tree-like circuit computing the same
// polynomial (non-terminal gates cloned per use; terminals stay shared).
// Throws BudgetError when the result would exceed gate_cap gates.
Circuit unshare(const Circuit& c, std::size_t gate_cap = 1'000'000);

// Generic evaluation over a caller-supplied commutative ring. One
// topological pass; each gate value computed exactly once. The ring provides
// V zero() const, void add_assign(V&, const V&) const, V mul(const V&, const
// V&) const.
template <typename V, typename Ring>
V evaluate(const Circuit& c, std::span<const V> values_by_var, const Ring& ring) {
    if (values_by_var.size() != c.variables().size()) {
        throw ParameterError("assignment does not cover all variables");
    }
    std::vector<V> val(c.gates().size(), ring.zero());
    for (GateId g : c.topo_order()) {
        const Gate& gate = c.gate(g);
        switch (gate.kind) {
        case GateKind::Var:
            val[static_cast<std::size_t>(g)] = values_by_var[static_cast<std::size_t>(c.var_index(g))];
            break;
        case GateKind::Add: {
            V acc = ring.zero();
            for (GateId in : gate.in) ring.add_assign(acc, val[static_cast<std::size_t>(in)]);
            val[static_cast<std::size_t>(g)] = std::move(acc);
            break;
        }
        case GateKind::Mul:
            val[static_cast<std::size_t>(g)] =
                ring.mul(val[static_cast<std::size_t>(gate.in[0])], val[static_cast<std::size_t>(gate.in[1])]);
            break;
        }
    }
    return val[static_cast<std::size_t>(c.root())];
}

// Map-based convenience wrapper; throws ParameterError naming the first
// missing variable binding.
template <typename V, typename Ring>
V evaluate(const Circuit& c, const std::unordered_map<std::string, V>& assignment, const Ring& ring) {
    std::vector<V> values;
    values.reserve(c.variables().size());
    for (const std::string& name : c.variables()) {
        auto it = assignment.find(name);
        if (it == assignment.end()) throw ParameterError("missing variable binding: " + name);
        values.push_back(it->second);
    }
    return evaluate<V, Ring>(c, std::span<const V>(values), ring);
}

// Integers mod p, the reference ring for semantic-preservation checks.
struct ModRing {
    std::uint64_t p;
    using Value = std::uint64_t;
    std::uint64_t zero() const { return 0; }
    void add_assign(std::uint64_t& a, std::uint64_t b) const { a = (a + b) % p; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
};

} // namespace monomial
