#pragma once

#include "monomial/field.hpp"

#include <cstddef>
#include <cstdint>

namespace monomial::kernels {

// Bulk kernels behind the algebra hot loops. Every kernel has a scalar
// reference implementation and an AVX2 variant; the active backend is chosen
// at runtime (CPU probe, overridable via select() or MONOMIAL_KERNELS).
// Both variants compute bit-identical results.

enum class Backend { Scalar, Avx2 };

Backend active();
bool supported(Backend b);
// Switches the active backend; returns false (and leaves it unchanged) if
// the requested backend is not supported on this CPU.
bool select(Backend b);
const char* backend_name(Backend b);

// dst[i] ^= src[i]
void xor_words(std::uint32_t* dst, const std::uint32_t* src, std::size_t n);

// dst[i] = s * src[i] in GF(2^d)
void gf2d_scale(const FieldCtx& ctx, std::uint32_t s, const std::uint32_t* src, std::uint32_t* dst, std::size_t n);

// dst[i ^ mask] ^= s * src[i] in GF(2^d); requires mask < n and n a power of
// two when mask != 0. mask = 0 is the axpy row operation.
void gf2d_scatter_accum(const FieldCtx& ctx, std::uint32_t s, const std::uint32_t* src, std::uint32_t* dst,
                        std::uint32_t mask, std::size_t n);

namespace detail {

struct Ops {
    void (*xor_words)(std::uint32_t*, const std::uint32_t*, std::size_t);
    void (*gf2d_scale)(const FieldCtx&, std::uint32_t, const std::uint32_t*, std::uint32_t*, std::size_t);
    void (*gf2d_scatter_accum)(const FieldCtx&, std::uint32_t, const std::uint32_t*, std::uint32_t*, std::uint32_t,
                               std::size_t);
};

extern const Ops scalar_ops;
#if defined(__x86_64__) || defined(_M_X64)
extern const Ops avx2_ops;
#endif

} // namespace detail

} // namespace monomial::kernels
