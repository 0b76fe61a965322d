#pragma once

#include "monomial/algebra.hpp"
#include "monomial/rtm.hpp"
#include "monomial/transform.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace monomial {

// A family of k-colorings of {1..N} such that every k-subset is injectively
// colored by some member. Colors are 1-based.
struct PerfectHashFamily {
    int N = 0;
    int k = 0;
    std::vector<std::vector<std::uint8_t>> colorings;
};

inline constexpr std::uint64_t kDefaultSubsetBudget = 1'000'000;

// Deterministic construction by the method of conditional expectations:
// colorings are built item by item, each color choice maximizing the exact
// expected number of still-uncovered k-subsets that an uniform random
// completion would injectively color; colorings are appended until every
// k-subset is covered. Throws BudgetError when C(N,k) exceeds the budget.
PerfectHashFamily build_phf(int N, int k, std::uint64_t subset_budget = kDefaultSubsetBudget);

// Exhaustive check of the perfect-hashing property.
bool verify_phf(const PerfectHashFamily& f, std::uint64_t subset_budget = kDefaultSubsetBudget);

// Format: header "N k count", then one coloring per line as N
// space-separated colors.
std::string serialize_phf(const PerfectHashFamily& f);
PerfectHashFamily parse_phf(const std::string& text);

// C(n, r) clamped to 2^64-1 on overflow.
std::uint64_t binomial_clamped(int n, int r);

// ----------------------------------------------------------------------
// The y-substituted circuit: a tree over Add/Mul whose terminals are either
// group-algebra constants or symbolic z-variables.
struct ZNode {
    enum class Kind : std::uint8_t { Const, ZVar, Add, Mul } kind = Kind::Const;
    AlgElem value;             // Const
    int z = -1;                // ZVar, dense z index
    std::vector<int> children; // Add (>= 1), Mul (exactly 2)
};

// Nodes are stored children-before-parents; consumers process them by
// ascending index.
struct ZCircuit {
    std::vector<ZNode> nodes;
    int root = 0;
    int num_z = 0;
    int k = 0;
};

// Builds the ZCircuit for a stage-C'' transform with the given y-values
// (indexed like VarSpace::y_vars). Requires the transform to be tree-like;
// throws StructureError otherwise.
ZCircuit apply_y_substitution(const TransformOutput& T, int k, std::span<const AlgElem> y_values);

// ----------------------------------------------------------------------
// Layered algebraic branching program with one source and one sink. Edge
// labels are affine forms c0 + sum(c_z * z); every z-variable appears on
// exactly one edge label overall, and edges connect consecutive layers only.
struct AbpEdge {
    int from = 0;
    int to = 0;
    AlgElem c0;                                   // constant term; zero AlgElem if absent
    std::vector<std::pair<int, AlgElem>> terms;   // (z index, coefficient)
};

struct Abp {
    int k = 0;
    std::vector<int> layer_sizes;             // front() == 1 (source), back() == 1 (sink)
    std::vector<std::vector<AbpEdge>> layers; // layers[l]: edges from layer l to l+1
};

// Series/parallel construction: Mul composes children left-to-right in
// series (imposing the z order), Add merges in parallel after padding with
// identity-labeled edges so every source-sink path has equal length.
Abp circuit_to_abp(const ZCircuit& zc, const FieldCtx& ctx);

// Deterministic zero test of the ABP's noncommutative polynomial: sweeps
// layers keeping a linearly independent set of monomial coefficient
// profiles over GF(2^d), Gaussian-eliminating at each layer.
bool rs_pit(const Abp& abp, const FieldCtx& ctx);

// Reference oracle: full symbolic expansion of the z-polynomial with algebra
// coefficients; true iff every coefficient is the zero element.
bool symbolic_zero_oracle(const ZCircuit& zc, const FieldCtx& ctx, std::size_t cap = kDefaultExpandCap);

// Deterministic q-monomial test for tree-like circuits: transform, hash the
// y-universe with a perfect hash family, substitute standard-basis group
// elements per coloring, and run the deterministic identity test per
// coloring. Exact for the "q-monomial of degree <= k" predicate.
TestReport dtm_test(const Circuit& c, int q, int k, int threads = 0,
                    std::uint64_t subset_budget = kDefaultSubsetBudget);

} // namespace monomial
