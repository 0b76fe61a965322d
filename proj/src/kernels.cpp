#include "monomial/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace monomial::kernels {

namespace {

bool cpu_has_avx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const detail::Ops* ops_for(Backend b) {
#if defined(__x86_64__) || defined(_M_X64)
    if (b == Backend::Avx2) return &detail::avx2_ops;
#endif
    (void)b;
    return &detail::scalar_ops;
}

struct State {
    std::atomic<const detail::Ops*> ops;
    std::atomic<Backend> backend;

    State() {
        Backend b = cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
        if (const char* env = std::getenv("MONOMIAL_KERNELS")) {
            if (std::strcmp(env, "scalar") == 0) b = Backend::Scalar;
            if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) b = Backend::Avx2;
        }
        backend.store(b);
        ops.store(ops_for(b));
    }
};

State& state() {
    static State s;
    return s;
}

} // namespace

Backend active() { return state().backend.load(); }

bool supported(Backend b) {
    if (b == Backend::Scalar) return true;
#if defined(__x86_64__) || defined(_M_X64)
    return b == Backend::Avx2 && cpu_has_avx2();
#else
    return false;
#endif
}

bool select(Backend b) {
    if (!supported(b)) return false;
    state().backend.store(b);
    state().ops.store(ops_for(b));
    return true;
}

const char* backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

void xor_words(std::uint32_t* dst, const std::uint32_t* src, std::size_t n) {
    state().ops.load()->xor_words(dst, src, n);
}

void gf2d_scale(const FieldCtx& ctx, std::uint32_t s, const std::uint32_t* src, std::uint32_t* dst, std::size_t n) {
    state().ops.load()->gf2d_scale(ctx, s, src, dst, n);
}

void gf2d_scatter_accum(const FieldCtx& ctx, std::uint32_t s, const std::uint32_t* src, std::uint32_t* dst,
                        std::uint32_t mask, std::size_t n) {
    state().ops.load()->gf2d_scatter_accum(ctx, s, src, dst, mask, n);
}

} // namespace monomial::kernels
