#include "monomial/field.hpp"

#include "monomial/errors.hpp"

#include <string>

namespace monomial {

namespace {

// Lexicographically smallest irreducible polynomial of degree d over GF(2),
// indexed by d-1. Full masks including the leading bit d.
constexpr std::uint64_t kSmallestIrreducible[32] = {
    0x3,         // d=1  x+1
    0x7,         // d=2  x^2+x+1
    0xb,         // d=3  x^3+x+1
    0x13,        // d=4  x^4+x+1
    0x25,        // d=5  x^5+x^2+1
    0x43,        // d=6  x^6+x+1
    0x83,        // d=7  x^7+x+1
    0x11b,       // d=8  x^8+x^4+x^3+x+1
    0x203,       // d=9  x^9+x+1
    0x409,       // d=10 x^10+x^3+1
    0x805,       // d=11 x^11+x^2+1
    0x1009,      // d=12 x^12+x^3+1
    0x201b,      // d=13 x^13+x^4+x^3+x+1
    0x4021,      // d=14 x^14+x^5+1
    0x8003,      // d=15 x^15+x+1
    0x1002b,     // d=16 x^16+x^5+x^3+x+1
    0x20009,     // d=17 x^17+x^3+1
    0x40009,     // d=18 x^18+x^3+1
    0x80027,     // d=19 x^19+x^5+x^2+x+1
    0x100009,    // d=20 x^20+x^3+1
    0x200005,    // d=21 x^21+x^2+1
    0x400003,    // d=22 x^22+x+1
    0x800021,    // d=23 x^23+x^5+1
    0x100001b,   // d=24 x^24+x^4+x^3+x+1
    0x2000009,   // d=25 x^25+x^3+1
    0x400001b,   // d=26 x^26+x^4+x^3+x+1
    0x8000027,   // d=27 x^27+x^5+x^2+x+1
    0x10000003,  // d=28 x^28+x+1
    0x20000005,  // d=29 x^29+x^2+1
    0x40000003,  // d=30 x^30+x+1
    0x80000009,  // d=31 x^31+x^3+1
    0x10000008d, // d=32 x^32+x^7+x^3+x^2+1
};

int gf2_poly_degree(std::uint64_t mask) {
    int deg = -1;
    while (mask) {
        ++deg;
        mask >>= 1;
    }
    return deg;
}

// Remainder of a / b over GF(2)[x].
std::uint64_t gf2_poly_mod(std::uint64_t a, std::uint64_t b) {
    const int db = gf2_poly_degree(b);
    int da = gf2_poly_degree(a);
    while (da >= db) {
        a ^= b << (da - db);
        da = gf2_poly_degree(a);
    }
    return a;
}

} // namespace

bool gf2_poly_irreducible(std::uint64_t mask, int deg) {
    if (deg < 1) return false;
    if ((mask & 1) == 0) return deg == 1 && mask == 0x2; // divisible by x, only x itself
    // Any nontrivial factorization has a factor of degree <= deg/2.
    for (int e = 1; e <= deg / 2; ++e) {
        for (std::uint64_t low = 0; low < (std::uint64_t{1} << e); ++low) {
            const std::uint64_t divisor = (std::uint64_t{1} << e) | low;
            if (gf2_poly_mod(mask, divisor) == 0) return false;
        }
    }
    return true;
}

FieldCtx ff_make_field(int d) {
    if (d < 1 || d > 32) {
        throw ParameterError("field degree must be in [1, 32], got " + std::to_string(d));
    }
    FieldCtx ctx{d, kSmallestIrreducible[d - 1]};
    if (!gf2_poly_irreducible(ctx.modulus, d)) {
        throw ParameterError("tabulated modulus for d=" + std::to_string(d) + " failed the irreducibility check");
    }
    return ctx;
}

std::uint32_t ff_mul(const FieldCtx& ctx, std::uint32_t a, std::uint32_t b) {
    std::uint64_t acc = 0;
    std::uint64_t aa = a;
    while (b) {
        if (b & 1) acc ^= aa;
        b >>= 1;
        aa <<= 1;
        if ((aa >> ctx.d) & 1) aa ^= ctx.modulus;
    }
    return static_cast<std::uint32_t>(acc);
}

std::uint32_t ff_pow(const FieldCtx& ctx, std::uint32_t a, std::uint64_t e) {
    std::uint32_t result = 1;
    std::uint32_t base = a;
    while (e) {
        if (e & 1) result = ff_mul(ctx, result, base);
        base = ff_mul(ctx, base, base);
        e >>= 1;
    }
    return result;
}

std::uint32_t ff_inv(const FieldCtx& ctx, std::uint32_t a) {
    if (a == 0) throw ParameterError("division by zero in GF(2^d)");
    // a^(2^d - 2) = a^-1; for d=1 the exponent is 0 and inv(1) = 1.
    const std::uint64_t e = (std::uint64_t{1} << ctx.d) - 2;
    return ff_pow(ctx, a, e);
}

} // namespace monomial
