#pragma once

#include <cstdint>

namespace monomial {

// SplitMix64: deterministic across platforms, used for all randomized
// substitutions and seed derivation so reports reproduce bit-exactly.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 2^bits) for bits in [1, 64].
    std::uint64_t next_bits(int bits) {
        return bits >= 64 ? next() : next() & ((std::uint64_t{1} << bits) - 1);
    }

    // Uniform in [1, 2^bits) by rejection.
    std::uint64_t next_bits_nonzero(int bits) {
        std::uint64_t v;
        do {
            v = next_bits(bits);
        } while (v == 0);
        return v;
    }

private:
    std::uint64_t state_;
};

// Stateless (seed, index) hash for schedule-independent per-trial seeds.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    SplitMix64 g(master ^ (0x632be59bd9b4e019ULL * (index + 1)));
    return g.next();
}

} // namespace monomial
