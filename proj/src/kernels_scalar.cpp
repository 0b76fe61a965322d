#include "monomial/kernels.hpp"

namespace monomial::kernels::detail {

namespace {

void xor_words_scalar(std::uint32_t* dst, const std::uint32_t* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

void gf2d_scale_scalar(const FieldCtx& ctx, std::uint32_t s, const std::uint32_t* src, std::uint32_t* dst,
                       std::size_t n) {
    if (s == 0) {
        for (std::size_t i = 0; i < n; ++i) dst[i] = 0;
        return;
    }
    if (s == 1) {
        for (std::size_t i = 0; i < n; ++i) dst[i] = src[i];
        return;
    }
    for (std::size_t i = 0; i < n; ++i) dst[i] = ff_mul(ctx, s, src[i]);
}

void gf2d_scatter_accum_scalar(const FieldCtx& ctx, std::uint32_t s, const std::uint32_t* src, std::uint32_t* dst,
                               std::uint32_t mask, std::size_t n) {
    if (s == 0) return;
    if (s == 1) {
        for (std::size_t i = 0; i < n; ++i) dst[i ^ mask] ^= src[i];
        return;
    }
    for (std::size_t i = 0; i < n; ++i) dst[i ^ mask] ^= ff_mul(ctx, s, src[i]);
}

} // namespace

const Ops scalar_ops = {xor_words_scalar, gf2d_scale_scalar, gf2d_scatter_accum_scalar};

} // namespace monomial::kernels::detail
