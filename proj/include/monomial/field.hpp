#pragma once

#include <cstdint>

namespace monomial {

// GF(2^d) with a fixed reduction polynomial. Elements are d-bit masks over
// GF(2); addition is XOR, multiplication is carry-less multiply reduced
// modulo `modulus`. `modulus` is the full (d+1)-bit mask with bit d set.
struct FieldCtx {
    int d = 0;
    std::uint64_t modulus = 0;

    std::uint32_t order_mask() const { return static_cast<std::uint32_t>((std::uint64_t{1} << d) - 1); }
    bool operator==(const FieldCtx&) const = default;
};

using FieldElem = std::uint32_t;

// Returns the field GF(2^d), 1 <= d <= 32, with the lexicographically
// smallest irreducible degree-d reduction polynomial. Irreducibility of the
// tabulated modulus is re-verified at construction by trial division
// against every polynomial of degree <= d/2.
// Throws ParameterError if d is out of range.
FieldCtx ff_make_field(int d);

// Trial-division irreducibility check over GF(2); mask has degree `deg`.
bool gf2_poly_irreducible(std::uint64_t mask, int deg);

std::uint32_t ff_mul(const FieldCtx& ctx, std::uint32_t a, std::uint32_t b);
std::uint32_t ff_pow(const FieldCtx& ctx, std::uint32_t a, std::uint64_t e);

// Multiplicative inverse via a^(2^d - 2). Throws ParameterError on a == 0.
std::uint32_t ff_inv(const FieldCtx& ctx, std::uint32_t a);

} // namespace monomial
