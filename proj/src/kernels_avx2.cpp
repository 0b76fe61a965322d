#if defined(__x86_64__) || defined(_M_X64)

#include "monomial/kernels.hpp"

#include <immintrin.h>

namespace monomial::kernels::detail {

namespace {

void xor_words_avx2(std::uint32_t* dst, const std::uint32_t* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a, b));
    }
    for (; i < n; ++i) dst[i] ^= src[i];
}

// One 8-lane block of dst[j] = s * src[j]. Bit-serial over the bits of s;
// the shift-and-reduce step is branchless per lane. Requires d <= 31 so the
// full modulus mask fits in a 32-bit lane.
inline __m256i scale_block(std::uint32_t s, __m256i v, int d, std::uint32_t modulus) {
    const __m256i vmod = _mm256_set1_epi32(static_cast<int>(modulus));
    const __m256i topbit = _mm256_set1_epi32(static_cast<int>(std::uint32_t{1} << d));
    __m256i acc = (s & 1) ? v : _mm256_setzero_si256();
    std::uint32_t bits = s >> 1;
    while (bits) {
        const __m256i t = _mm256_slli_epi32(v, 1);
        const __m256i hi = _mm256_and_si256(t, topbit);
        const __m256i red = _mm256_cmpeq_epi32(hi, topbit);
        v = _mm256_xor_si256(t, _mm256_and_si256(red, vmod));
        if (bits & 1) acc = _mm256_xor_si256(acc, v);
        bits >>= 1;
    }
    return acc;
}

void gf2d_scale_avx2(const FieldCtx& ctx, std::uint32_t s, const std::uint32_t* src, std::uint32_t* dst,
                     std::size_t n) {
    if (ctx.d > 31 || n < 8) {
        scalar_ops.gf2d_scale(ctx, s, src, dst, n);
        return;
    }
    if (s == 0) {
        std::size_t i = 0;
        for (; i + 8 <= n; i += 8) _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_setzero_si256());
        for (; i < n; ++i) dst[i] = 0;
        return;
    }
    const std::uint32_t modulus = static_cast<std::uint32_t>(ctx.modulus);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), scale_block(s, v, ctx.d, modulus));
    }
    for (; i < n; ++i) dst[i] = ff_mul(ctx, s, src[i]);
}

void gf2d_scatter_accum_avx2(const FieldCtx& ctx, std::uint32_t s, const std::uint32_t* src, std::uint32_t* dst,
                             std::uint32_t mask, std::size_t n) {
    if (ctx.d > 31 || n < 8) {
        scalar_ops.gf2d_scatter_accum(ctx, s, src, dst, mask, n);
        return;
    }
    if (s == 0) return;
    // dst index (8B + j) receives src index (8b + (j ^ m)) with B = b ^ (mask
    // >> 3) and m = mask & 7, so a fixed in-block lane shuffle plus a block
    // swap cover the whole XOR permutation.
    const std::uint32_t m = mask & 7;
    const std::size_t block_xor = mask >> 3;
    const __m256i pidx = _mm256_setr_epi32(static_cast<int>(0 ^ m), static_cast<int>(1 ^ m), static_cast<int>(2 ^ m),
                                           static_cast<int>(3 ^ m), static_cast<int>(4 ^ m), static_cast<int>(5 ^ m),
                                           static_cast<int>(6 ^ m), static_cast<int>(7 ^ m));
    const std::uint32_t modulus = static_cast<std::uint32_t>(ctx.modulus);
    const std::size_t blocks = n / 8;
    for (std::size_t b = 0; b < blocks; ++b) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + 8 * b));
        if (s != 1) v = scale_block(s, v, ctx.d, modulus);
        v = _mm256_permutevar8x32_epi32(v, pidx);
        std::uint32_t* out = dst + 8 * (b ^ block_xor);
        const __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(out));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out), _mm256_xor_si256(cur, v));
    }
    for (std::size_t i = blocks * 8; i < n; ++i) dst[i ^ mask] ^= ff_mul(ctx, s, src[i]);
}

} // namespace

const Ops avx2_ops = {xor_words_avx2, gf2d_scale_avx2, gf2d_scatter_accum_avx2};

} // namespace monomial::kernels::detail

#endif // x86_64
