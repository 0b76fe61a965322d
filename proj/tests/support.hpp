#pragma once

// Shared helpers for the test suites: programmatic circuit construction,
// the worked 12-gate example, and seeded random circuit generators.

#include "monomial/circuit.hpp"
#include "monomial/derand.hpp"
#include "monomial/prng.hpp"

#include <string>
#include <utility>
#include <vector>

namespace testsupport {

using monomial::Circuit;
using monomial::Gate;
using monomial::GateId;
using monomial::GateKind;

class Builder {
public:
    GateId var(const std::string& name) {
        Gate g;
        g.kind = GateKind::Var;
        g.name = name;
        return push(std::move(g));
    }
    GateId add(std::vector<GateId> in) {
        Gate g;
        g.kind = GateKind::Add;
        g.in = std::move(in);
        return push(std::move(g));
    }
    GateId mul(GateId a, GateId b) {
        Gate g;
        g.kind = GateKind::Mul;
        g.in = {a, b};
        return push(std::move(g));
    }
    Circuit finish(GateId root) { return Circuit::from_gates(std::move(gates_), root); }

private:
    GateId push(Gate g) {
        gates_.push_back(std::move(g));
        return static_cast<GateId>(gates_.size() - 1);
    }
    std::vector<Gate> gates_;
};

// 12-gate DAG computing 16*x1^5 + 32*x1^3*x2 + 2*x1^2*x2 + 16*x1*x2^2 + 2*x2^2
// (with A = x1^2 + x2, this is 2*(8*x1*A^2 + x2*A); the integer coefficients
// arise purely from parse-tree multiplicity).
inline Circuit example1_circuit() {
    Builder b;
    const GateId x1 = b.var("x1");
    const GateId x2 = b.var("x2");
    const GateId x1sq = b.mul(x1, x1);
    const GateId a = b.add({x1sq, x2});
    const GateId x1a = b.mul(x1, a);
    const GateId two = b.add({x1a, x1a});
    const GateId four = b.add({two, two});
    const GateId eight = b.add({four, four});
    const GateId left = b.mul(eight, a);
    const GateId right = b.mul(x2, a);
    const GateId sum = b.add({left, right});
    const GateId root = b.add({sum, sum});
    return b.finish(root);
}

// Random DAG circuit over n variables: gates pick inputs among everything
// built so far; unreachable gates are pruned by rebuilding from the root.
inline Circuit random_dag_circuit(monomial::SplitMix64& rng, int n, int extra_gates) {
    std::vector<Gate> gates;
    for (int i = 1; i <= n; ++i) {
        Gate g;
        g.kind = GateKind::Var;
        g.name = "x" + std::to_string(i);
        gates.push_back(std::move(g));
    }
    for (int i = 0; i < extra_gates; ++i) {
        const std::size_t avail = gates.size();
        Gate g;
        if (rng.next() % 2 == 0) {
            g.kind = GateKind::Mul;
            g.in = {static_cast<GateId>(rng.next() % avail), static_cast<GateId>(rng.next() % avail)};
        } else {
            g.kind = GateKind::Add;
            const int fanin = 1 + static_cast<int>(rng.next() % 3);
            for (int f = 0; f < fanin; ++f) g.in.push_back(static_cast<GateId>(rng.next() % avail));
        }
        gates.push_back(std::move(g));
    }
    const GateId root = static_cast<GateId>(gates.size() - 1);

    // Keep the reachable sub-DAG only.
    std::vector<std::uint8_t> keep(gates.size(), 0);
    std::vector<GateId> work{root};
    keep[static_cast<std::size_t>(root)] = 1;
    while (!work.empty()) {
        const GateId g = work.back();
        work.pop_back();
        for (GateId in : gates[static_cast<std::size_t>(g)].in) {
            if (!keep[static_cast<std::size_t>(in)]) {
                keep[static_cast<std::size_t>(in)] = 1;
                work.push_back(in);
            }
        }
    }
    std::vector<GateId> remap(gates.size(), -1);
    std::vector<Gate> kept;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (!keep[i]) continue;
        remap[i] = static_cast<GateId>(kept.size());
        kept.push_back(std::move(gates[i]));
    }
    for (Gate& g : kept) {
        for (GateId& in : g.in) in = remap[static_cast<std::size_t>(in)];
    }
    return Circuit::from_gates(std::move(kept), remap[static_cast<std::size_t>(root)]);
}

// Random tree-like circuit: an expression tree with shared variable
// terminals, at most `max_nodes` internal/leaf occurrences.
inline Circuit random_tree_circuit(monomial::SplitMix64& rng, int n, int max_nodes) {
    Builder b;
    // Terminals are created on first use so every gate stays reachable.
    std::vector<GateId> var_gate(static_cast<std::size_t>(n), -1);
    auto pick_var = [&]() {
        const std::size_t i = rng.next() % static_cast<std::size_t>(n);
        if (var_gate[i] < 0) var_gate[i] = b.var("x" + std::to_string(i + 1));
        return var_gate[i];
    };

    int budget = max_nodes;
    auto gen = [&](auto&& self, int depth) -> GateId {
        if (budget <= 1 || depth > 6 || rng.next() % 3 == 0) {
            --budget;
            return pick_var();
        }
        --budget;
        if (rng.next() % 2 == 0) {
            const GateId l = self(self, depth + 1);
            const GateId r = self(self, depth + 1);
            return b.mul(l, r);
        }
        const int fanin = 1 + static_cast<int>(rng.next() % 3);
        std::vector<GateId> in;
        for (int f = 0; f < fanin && budget > 0; ++f) in.push_back(self(self, depth + 1));
        if (in.empty()) in.push_back(pick_var());
        return b.add(std::move(in));
    };
    const GateId root = gen(gen, 0);
    return b.finish(root);
}

// Random read-once z-circuit over GF(2^d)[Z_2^k]: every z-variable occurs at
// most once, constants drawn from {zero, identity, basis(v)+identity, random
// dense}. Nodes are emitted children-before-parents.
inline monomial::ZCircuit random_zcircuit(monomial::SplitMix64& rng, const monomial::FieldCtx& ctx, int k,
                                          int max_z, int max_nodes) {
    using monomial::AlgElem;
    using monomial::ZNode;

    monomial::ZCircuit zc;
    zc.k = k;
    zc.num_z = max_z;
    int next_z = 0;
    int budget = max_nodes;

    auto rand_const = [&]() {
        AlgElem e = monomial::alg_zero(k);
        switch (rng.next() % 4) {
        case 0: break; // zero
        case 1: e.coeffs[0] = 1; break;
        case 2: {
            e.coeffs[rng.next_bits(k)] ^= 1;
            e.coeffs[0] ^= 1;
            break;
        }
        default:
            for (auto& c : e.coeffs) c = static_cast<std::uint32_t>(rng.next_bits(ctx.d));
        }
        return e;
    };

    auto gen = [&](auto&& self, int depth) -> int {
        const bool leaf = budget <= 1 || depth > 5 || rng.next() % 3 == 0;
        --budget;
        ZNode node;
        if (leaf) {
            if (next_z < max_z && rng.next() % 2 == 0) {
                node.kind = ZNode::Kind::ZVar;
                node.z = next_z++;
            } else {
                node.kind = ZNode::Kind::Const;
                node.value = rand_const();
            }
        } else if (rng.next() % 2 == 0) {
            node.kind = ZNode::Kind::Mul;
            const int l = self(self, depth + 1);
            const int r = self(self, depth + 1);
            node.children = {l, r};
        } else {
            node.kind = ZNode::Kind::Add;
            const int fanin = 1 + static_cast<int>(rng.next() % 3);
            for (int f = 0; f < fanin; ++f) node.children.push_back(self(self, depth + 1));
        }
        zc.nodes.push_back(std::move(node));
        return static_cast<int>(zc.nodes.size() - 1);
    };
    zc.root = gen(gen, 0);
    zc.num_z = next_z;
    return zc;
}

} // namespace testsupport
