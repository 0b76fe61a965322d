#pragma once

#include "monomial/circuit.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace monomial {

// Undirected graph, vertices 1..n, no self-loops.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

// Format: first line "n m_edges", then one "u v" pair per line, 1-indexed.
Graph parse_graph(const std::string& text);
std::string serialize_graph(const Graph& g);

// Equal-size set system over named items. Members store indices into
// `universe`; every member has exactly m distinct items.
struct SetSystem {
    std::vector<std::string> universe;
    std::vector<std::vector<int>> members;
    int m = 0;
};

// Format: one member per line, space-separated item names. Member sizes are
// validated against m; strict additionally enforces m >= 3.
SetSystem parse_set_system(const std::string& text, int m, bool strict = false);
std::string serialize_set_system(const SetSystem& s);

inline constexpr std::uint64_t kDefaultOracleBudget = 50'000'000;

// Walk polynomial F(G,k) = sum_i F_{k,i} with per-level gate sharing,
// F_{1,i} = x_i and F_{j+1,i} = x_i * (sum over neighbors of F_{j,nb});
// homogeneous of degree k. Returns nullopt when the polynomial is
// identically zero (no k-vertex walk exists), which the gate language
// cannot represent.
std::optional<Circuit> build_kpath_circuit(const Graph& g, int k);

// True iff some k-vertex walk visits every vertex at most q-1 times.
bool kpath_oracle(const Graph& g, int k, int q, std::uint64_t budget = kDefaultOracleBudget);

// Packing polynomial F(S,k) = (sum_A f(A))^k as a tree-like circuit: k
// separately-duplicated copies of the member sum combined by a left-deep
// Mul chain; homogeneous of degree m*k. Returns nullopt for an empty system.
std::optional<Circuit> build_setpack_circuit(const SetSystem& s, int k);

// True iff some multiset of k members (repetition allowed) covers every
// universe element at most q-1 times — exactly the predicate the packing
// polynomial encodes. For q=2 this is classical disjoint m-set k-packing.
bool setpack_oracle(const SetSystem& s, int k, int q, std::uint64_t budget = kDefaultOracleBudget);

// One 3-element member per simple path a-b-c, deduplicated by vertex set;
// centers[idx] records the center vertex of the first path seen per set.
struct P2System {
    SetSystem sets;
    std::vector<int> centers;
};

P2System p2_to_sets(const Graph& g);

} // namespace monomial
