#include "monomial/algebra.hpp"

#include "monomial/errors.hpp"
#include "monomial/kernels.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

namespace monomial {

namespace {

void check_dim(int k) {
    if (k < 1 || k > 16) throw ParameterError("algebra dimension k must be in [1, 16], got " + std::to_string(k));
}

void check_same(const AlgElem& u, const AlgElem& w) {
    if (u.k != w.k) {
        throw ParameterError("algebra dimension mismatch: " + std::to_string(u.k) + " vs " + std::to_string(w.k));
    }
}

std::size_t count_nonzero(const AlgElem& u) {
    std::size_t nnz = 0;
    for (std::uint32_t c : u.coeffs) nnz += (c != 0);
    return nnz;
}

} // namespace

AlgElem alg_zero(int k) {
    check_dim(k);
    return AlgElem{k, std::vector<std::uint32_t>(std::size_t{1} << k, 0)};
}

AlgElem alg_identity(int k) {
    AlgElem u = alg_zero(k);
    u.coeffs[0] = 1;
    return u;
}

AlgElem alg_basis(int k, GroupVec v) {
    AlgElem u = alg_zero(k);
    if (v.bits >= u.coeffs.size()) throw ParameterError("group vector outside Z_2^k");
    u.coeffs[v.bits] = 1;
    return u;
}

AlgElem alg_scalar(int k, std::uint32_t c) {
    AlgElem u = alg_zero(k);
    u.coeffs[0] = c;
    return u;
}

bool alg_is_zero(const AlgElem& u) {
    return std::all_of(u.coeffs.begin(), u.coeffs.end(), [](std::uint32_t c) { return c == 0; });
}

AlgElem alg_add(const AlgElem& u, const AlgElem& w) {
    check_same(u, w);
    AlgElem out = u;
    kernels::xor_words(out.coeffs.data(), w.coeffs.data(), out.coeffs.size());
    return out;
}

void alg_add_inplace(AlgElem& u, const AlgElem& w) {
    check_same(u, w);
    kernels::xor_words(u.coeffs.data(), w.coeffs.data(), u.coeffs.size());
}

AlgElem alg_mul(const FieldCtx& ctx, const AlgElem& u, const AlgElem& w) {
    check_same(u, w);
    const AlgElem& row = count_nonzero(u) <= count_nonzero(w) ? u : w;
    const AlgElem& col = (&row == &u) ? w : u;
    AlgElem out = alg_zero(u.k);
    const std::size_t n = out.coeffs.size();
    for (std::uint32_t a = 0; a < n; ++a) {
        if (row.coeffs[a] == 0) continue;
        kernels::gf2d_scatter_accum(ctx, row.coeffs[a], col.coeffs.data(), out.coeffs.data(), a, n);
    }
    return out;
}

int gf2_rank(std::span<const GroupVec> vs) {
    std::vector<std::uint32_t> basis; // reduced masks, one pivot bit each
    for (GroupVec v : vs) {
        std::uint32_t x = v.bits;
        for (std::uint32_t b : basis) x = std::min(x, x ^ b);
        if (x) basis.push_back(x);
    }
    return static_cast<int>(basis.size());
}

AlgElem alg_span_product(const FieldCtx& ctx, std::span<const GroupVec> vs, int k) {
    (void)ctx;
    check_dim(k);
    std::vector<std::uint32_t> basis;
    for (GroupVec v : vs) {
        if (v.bits >> k) throw ParameterError("group vector outside Z_2^k");
        std::uint32_t x = v.bits;
        for (std::uint32_t b : basis) x = std::min(x, x ^ b);
        if (x == 0) return alg_zero(k); // dependent set annihilates the product
        basis.push_back(x);
    }
    AlgElem out = alg_zero(k);
    // Support = the 2^rank vectors spanned by the (independent) input set,
    // every coefficient the field's 1.
    std::vector<std::uint32_t> span{0};
    span.reserve(std::size_t{1} << basis.size());
    for (std::uint32_t b : basis) {
        const std::size_t sz = span.size();
        for (std::size_t i = 0; i < sz; ++i) span.push_back(span[i] ^ b);
    }
    for (std::uint32_t g : span) out.coeffs[g] = 1;
    return out;
}

AlgElem alg_span_product_direct(const FieldCtx& ctx, std::span<const GroupVec> vs, int k) {
    check_dim(k);
    AlgElem acc = alg_identity(k);
    for (GroupVec v : vs) {
        AlgElem term = alg_basis(k, v);
        term.coeffs[0] ^= 1;
        acc = alg_mul(ctx, acc, term);
    }
    return acc;
}

std::string alg_to_string(const AlgElem& u) {
    std::string out;
    char buf[32];
    for (std::size_t g = 0; g < u.coeffs.size(); ++g) {
        if (u.coeffs[g] == 0) continue;
        std::snprintf(buf, sizeof(buf), "%zu:%x", g, u.coeffs[g]);
        if (!out.empty()) out += ' ';
        out += buf;
    }
    return out;
}

} // namespace monomial
