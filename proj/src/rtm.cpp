#include "monomial/rtm.hpp"

#include "monomial/errors.hpp"
#include "monomial/prng.hpp"

#include <chrono>
#include <cstdlib>
#include <string_view>
#include <thread>
#include <unordered_set>

namespace monomial {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

enum class VarTag : std::uint8_t { Y, Z };

// Tags every circuit variable of a stage-C'' transform as y or z.
std::vector<VarTag> tag_variables(const TransformOutput& T) {
    const std::vector<std::string>& names = T.circuit.variables();
    std::vector<VarTag> tags(names.size(), VarTag::Z);
    for (const YVar& y : T.vars.y_vars) {
        const int idx = T.circuit.var_index_of(y.name);
        if (idx >= 0) tags[static_cast<std::size_t>(idx)] = VarTag::Y;
    }
    // Everything that is not a y must be a z.
    std::unordered_set<std::string_view> z_names(T.vars.z_vars.begin(), T.vars.z_vars.end());
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (tags[i] == VarTag::Y) continue;
        if (!z_names.contains(names[i])) {
            throw ParameterError("transform output contains a non-y, non-z variable: " + names[i]);
        }
    }
    return tags;
}

// Substitution draws in the circuit's variable order, seeded per trial.
bool run_trial(const TransformOutput& T, std::span<const VarTag> tags, const FieldCtx& ctx, const TestParams& P,
               std::uint64_t trial_seed) {
    SplitMix64 rng(trial_seed);
    std::vector<AlgElem> values;
    values.reserve(tags.size());
    for (VarTag tag : tags) {
        if (tag == VarTag::Y) {
            const GroupVec v{static_cast<std::uint32_t>(rng.next_bits_nonzero(P.k))};
            AlgElem e = alg_basis(P.k, v);
            e.coeffs[0] ^= 1; // + identity
            values.push_back(std::move(e));
        } else {
            values.push_back(alg_scalar(P.k, static_cast<std::uint32_t>(rng.next_bits(ctx.d))));
        }
    }
    const AlgRing ring{&ctx, P.k};
    const AlgElem result = evaluate<AlgElem>(T.circuit, std::span<const AlgElem>(values), ring);
    return !alg_is_zero(result);
}

} // namespace

int choose_field_degree(int k, std::int64_t s) {
    if (k < 1 || s < 1) throw ParameterError("choose_field_degree requires k >= 1 and s >= 1");
    const std::uint64_t m = static_cast<std::uint64_t>(k) * (static_cast<std::uint64_t>(s) + 1) + 1;
    int ceil_log2 = 0;
    while ((std::uint64_t{1} << ceil_log2) < m) ++ceil_log2;
    int d = ceil_log2 + 1;
    if (d < 2) d = 2;
    if (d > 32) d = 32;
    return d;
}

bool rtm_trial(const TransformOutput& T, const FieldCtx& ctx, const TestParams& P, std::uint64_t trial_seed) {
    if (T.stage != Stage::CDoublePrime) throw ParameterError("rtm_trial requires a stage-C'' transform");
    const std::vector<VarTag> tags = tag_variables(T);
    return run_trial(T, tags, ctx, P, trial_seed);
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MONOMIAL_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

TestReport rtm_test(const Circuit& c, const TestParams& P, int threads) {
    if (P.q < 2) throw ParameterError("q must be >= 2");
    if (P.k < 1) throw ParameterError("k must be >= 1");
    if (P.k > 16) throw BudgetError("k exceeds the algebra dimension cap of 16");
    if (P.trials < 1) throw ParameterError("trials must be >= 1");

    const auto t0 = std::chrono::steady_clock::now();
    const CircuitStats stats = circuit_stats(c);

    TestReport report;
    report.mode = TestMode::Randomized;
    report.q = P.q;
    report.k = P.k;
    report.s = stats.s;
    report.t = stats.t;
    report.tree_like = stats.tree_like;
    report.seed = P.seed;

    const TransformOutput T = transform_full(c, P.q);
    report.elapsed_ms.transform = ms_since(t0);

    const auto t1 = std::chrono::steady_clock::now();
    report.d = choose_field_degree(P.k, stats.s);
    const FieldCtx ctx = ff_make_field(report.d);
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(P.trials));
    for (int i = 0; i < P.trials; ++i) seeds[static_cast<std::size_t>(i)] = derive_seed(P.seed, static_cast<std::uint64_t>(i));
    report.elapsed_ms.setup = ms_since(t1);

    const auto t2 = std::chrono::steady_clock::now();
    const std::vector<VarTag> tags = tag_variables(T);
    report.trial_flags.assign(static_cast<std::size_t>(P.trials), 0);
    const int workers = std::min(resolve_threads(threads), P.trials);
    if (workers <= 1) {
        for (int i = 0; i < P.trials; ++i) {
            report.trial_flags[static_cast<std::size_t>(i)] =
                run_trial(T, tags, ctx, P, seeds[static_cast<std::size_t>(i)]) ? 1 : 0;
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                for (int i = w; i < P.trials; i += workers) {
                    report.trial_flags[static_cast<std::size_t>(i)] =
                        run_trial(T, tags, ctx, P, seeds[static_cast<std::size_t>(i)]) ? 1 : 0;
                }
            });
        }
        for (std::thread& th : pool) th.join();
    }
    report.elapsed_ms.decide = ms_since(t2);

    report.trials_run = P.trials;
    for (std::uint8_t f : report.trial_flags) report.successes += f;
    report.yes = report.successes >= 1;
    report.elapsed_ms.total = ms_since(t0);
    return report;
}

} // namespace monomial
