#pragma once

#include "monomial/field.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace monomial {

// A vector of Z_2^k as a k-bit mask; the group product is XOR of masks.
struct GroupVec {
    std::uint32_t bits = 0;
    bool operator==(const GroupVec&) const = default;
};

inline GroupVec group_mul(GroupVec a, GroupVec b) { return GroupVec{a.bits ^ b.bits}; }

// An element of the group algebra GF(2^d)[Z_2^k]: 2^k field coefficients,
// index g holding the coefficient of the group vector with mask g.
// Dimension cap k <= 16; dense-by-dense products are practical to k ~ 12.
struct AlgElem {
    int k = 0;
    std::vector<std::uint32_t> coeffs;

    std::size_t size() const { return coeffs.size(); }
    bool operator==(const AlgElem&) const = default;
};

AlgElem alg_zero(int k);
AlgElem alg_identity(int k);
AlgElem alg_basis(int k, GroupVec v);
AlgElem alg_scalar(int k, std::uint32_t c); // c lifted onto the zero vector

bool alg_is_zero(const AlgElem& u);

// Componentwise field addition (XOR). Dimension mismatch -> ParameterError.
AlgElem alg_add(const AlgElem& u, const AlgElem& w);
void alg_add_inplace(AlgElem& u, const AlgElem& w);

// XOR-convolution: result[g] = sum over a^b = g of u[a]*w[b]. Iterates the
// operand with fewer nonzero coefficients row-wise, which subsumes the
// sparse fast path (cost O(nnz * 2^k), worst case O(4^k)).
AlgElem alg_mul(const FieldCtx& ctx, const AlgElem& u, const AlgElem& w);

// Product of (basis(v) + identity) over vs, in closed form via GF(2) rank:
// zero iff vs is linearly dependent, otherwise all-ones support on the span.
AlgElem alg_span_product(const FieldCtx& ctx, std::span<const GroupVec> vs, int k);
// Same product computed directly by repeated alg_mul; must agree with the
// closed form.
AlgElem alg_span_product_direct(const FieldCtx& ctx, std::span<const GroupVec> vs, int k);

// Rank over GF(2) of the masks in vs.
int gf2_rank(std::span<const GroupVec> vs);

// Debug rendering: "index:coeff-hex" pairs in ascending index order, zeros
// omitted; the zero element renders as the empty string.
std::string alg_to_string(const AlgElem& u);

} // namespace monomial
