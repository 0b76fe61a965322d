#pragma once

#include "monomial/algebra.hpp"
#include "monomial/circuit.hpp"
#include "monomial/transform.hpp"

#include <cstdint>
#include <vector>

namespace monomial {

struct TestParams {
    int q = 2;
    int k = 1;
    int trials = 64; // failure < 2.1e-4 at the worst-case 1/8 per-trial rate
    std::uint64_t seed = 0;
};

enum class TestMode { Randomized, Deterministic, Oracle };

struct PhaseTimingsMs {
    double transform = 0;
    double setup = 0;
    double decide = 0;
    double total = 0;
};

struct TestReport {
    bool yes = false;
    TestMode mode = TestMode::Randomized;
    int q = 0;
    int k = 0;
    int d = 0;
    std::int64_t s = 0;
    std::int64_t t = 0;
    bool tree_like = false;
    int trials_run = 0;
    int successes = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint8_t> trial_flags;
    PhaseTimingsMs elapsed_ms;
};

// d = ceil(log2(k*(s+1)+1)) + 1, clamped to [2, 32]; gives |F| >= 2*(k(s+1)+1)
// so a single identity-test trial fails with probability <= 1/2.
int choose_field_degree(int k, std::int64_t s);

// The group algebra as an evaluation ring.
struct AlgRing {
    const FieldCtx* ctx;
    int k;
    using Value = AlgElem;
    AlgElem zero() const { return alg_zero(k); }
    void add_assign(AlgElem& a, const AlgElem& b) const { alg_add_inplace(a, b); }
    AlgElem mul(const AlgElem& a, const AlgElem& b) const { return alg_mul(*ctx, a, b); }
};

// One randomized trial on a stage-C'' transform: substitutes
// basis(v_ij) + identity for y-variables (v_ij uniform nonzero) and uniform
// field scalars for z-variables, evaluates over the group algebra, and
// reports whether the value is nonzero.
bool rtm_trial(const TransformOutput& T, const FieldCtx& ctx, const TestParams& P, std::uint64_t trial_seed);

// Randomized q-monomial test: answers "does the polynomial contain a
// q-monomial of total degree <= k". Yes-answers are always correct;
// no-answers are wrong with probability <= (7/8)^trials. threads = 0 picks
// MONOMIAL_THREADS or the hardware default; the report is identical for any
// thread count.
TestReport rtm_test(const Circuit& c, const TestParams& P, int threads = 0);

// Worker-count resolution shared by the testers (explicit > env > hardware).
int resolve_threads(int requested);

} // namespace monomial
