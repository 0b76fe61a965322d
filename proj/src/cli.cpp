#include "monomial/cli.hpp"

#include "monomial/apps.hpp"
#include "monomial/derand.hpp"
#include "monomial/errors.hpp"
#include "monomial/kernels.hpp"
#include "monomial/prng.hpp"
#include "monomial/report.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace monomial::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitFormat = 3;
constexpr int kExitBudget = 4;
constexpr int kExitNoAnswer = 3; // with --exit-status

struct CommonOpts {
    std::string input;
    int q = 2;
    int k = 1;
    std::string mode = "randomized";
    int trials = 64;
    std::uint64_t seed = 0;
    std::string format = "human";
    bool timings = false;
    bool exit_status = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_mode_det) {
    cmd->add_option("input", o.input, "input file")->required();
    cmd->add_option("--q", o.q, "exponent bound: every exponent must lie in [1, q-1]")->required();
    cmd->add_option("--k", o.k, "degree bound / solution size")->required();
    std::string modes = with_mode_det ? "randomized|deterministic|oracle" : "randomized|oracle";
    cmd->add_option("--mode", o.mode, "decision mode (" + modes + ")");
    cmd->add_option("--trials", o.trials, "randomized trials (default 64)");
    cmd->add_option("--seed", o.seed, "master seed for randomized mode");
    cmd->add_option("--format", o.format, "report format (human|structured)");
    cmd->add_flag("--timings", o.timings, "include elapsed_ms in structured reports");
    cmd->add_flag("--exit-status", o.exit_status, "map the answer to the exit code (yes=0, no=3)");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool structured(const CommonOpts& o) {
    if (o.format == "human") return false;
    if (o.format == "structured" || o.format == "json") return true;
    throw ParameterError("unknown --format value: " + o.format);
}

void validate_mode(const CommonOpts& o, bool det_allowed) {
    if (o.mode != "randomized" && o.mode != "deterministic" && o.mode != "oracle") {
        throw ParameterError("unknown --mode value: " + o.mode);
    }
    if (o.mode == "deterministic" && !det_allowed) {
        throw ParameterError("deterministic mode is not supported for this subcommand (tree-like unrolling "
                             "would be exponential); use randomized or oracle");
    }
}

int emit(const TestReport& report, const CommonOpts& o, std::ostream& out) {
    if (structured(o)) {
        out << report_to_json(report, o.timings);
    } else {
        out << report_to_text(report);
    }
    if (o.exit_status) return report.yes ? kExitOk : kExitNoAnswer;
    return kExitOk;
}

TestReport oracle_report(bool yes, int q, int k, const CircuitStats* stats) {
    TestReport r;
    r.yes = yes;
    r.mode = TestMode::Oracle;
    r.q = q;
    r.k = k;
    if (stats) {
        r.s = stats->s;
        r.t = stats->t;
        r.tree_like = stats->tree_like;
    }
    return r;
}

// The tester's degree bound for an application circuit: the polynomial is
// homogeneous, so the "degree <= k" predicate is queried at the full degree.
int checked_degree(int per_member, int k) {
    const std::int64_t deg = std::int64_t{per_member} * k;
    if (deg > 16) {
        throw BudgetError("tester degree " + std::to_string(deg) + " exceeds the algebra dimension cap of 16");
    }
    return static_cast<int>(deg);
}

int run_test_circuit(const CommonOpts& o, int pad, std::ostream& out) {
    validate_mode(o, true);
    Circuit c = parse_circuit(read_file(o.input));
    if (pad > 0) c = pad_with_fresh_vars(c, pad);
    if (o.mode == "oracle") {
        const CircuitStats stats = circuit_stats(c);
        const bool yes = q_monomial_oracle(expand(c), o.q, o.k);
        return emit(oracle_report(yes, o.q, o.k, &stats), o, out);
    }
    if (o.mode == "deterministic") {
        return emit(dtm_test(c, o.q, o.k), o, out);
    }
    return emit(rtm_test(c, TestParams{o.q, o.k, o.trials, o.seed}), o, out);
}

int run_kpath(const CommonOpts& o, std::ostream& out) {
    validate_mode(o, false);
    const Graph g = parse_graph(read_file(o.input));
    const std::optional<Circuit> c = build_kpath_circuit(g, o.k);
    if (o.mode == "oracle") {
        std::optional<CircuitStats> stats;
        if (c) stats = circuit_stats(*c);
        const bool yes = kpath_oracle(g, o.k, o.q);
        return emit(oracle_report(yes, o.q, o.k, stats ? &*stats : nullptr), o, out);
    }
    if (!c) {
        TestReport r;
        r.mode = TestMode::Randomized;
        r.q = o.q;
        r.k = o.k;
        r.seed = o.seed;
        return emit(r, o, out); // no k-vertex walk exists at all
    }
    return emit(rtm_test(*c, TestParams{o.q, o.k, o.trials, o.seed}), o, out);
}

int run_setpack_like(const CommonOpts& o, const SetSystem& s, std::ostream& out) {
    const std::optional<Circuit> c = build_setpack_circuit(s, o.k);
    if (o.mode == "oracle") {
        std::optional<CircuitStats> stats;
        if (c) stats = circuit_stats(*c);
        const bool yes = setpack_oracle(s, o.k, o.q);
        return emit(oracle_report(yes, o.q, o.k, stats ? &*stats : nullptr), o, out);
    }
    const int degree = checked_degree(s.m, o.k);
    if (!c) {
        TestReport r;
        r.mode = o.mode == "deterministic" ? TestMode::Deterministic : TestMode::Randomized;
        r.q = o.q;
        r.k = degree;
        return emit(r, o, out); // empty system
    }
    if (o.mode == "deterministic") {
        return emit(dtm_test(*c, o.q, degree), o, out);
    }
    return emit(rtm_test(*c, TestParams{o.q, degree, o.trials, o.seed}), o, out);
}

int run_setpack(const CommonOpts& o, int m, bool strict, std::ostream& out) {
    validate_mode(o, true);
    const SetSystem s = parse_set_system(read_file(o.input), m, strict);
    return run_setpack_like(o, s, out);
}

int run_p2pack(const CommonOpts& o, std::ostream& out) {
    validate_mode(o, true);
    const Graph g = parse_graph(read_file(o.input));
    const P2System p2 = p2_to_sets(g);
    return run_setpack_like(o, p2.sets, out);
}

// ----------------------------------------------------------------------

struct BenchRow {
    std::string name;
    std::string backend;
    double ms = 0;
    double per_op_ns = 0;
};

double time_ms(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int run_bench(const std::string& format, std::uint64_t seed, std::ostream& out) {
    std::vector<BenchRow> rows;
    std::vector<kernels::Backend> backends{kernels::Backend::Scalar};
    if (kernels::supported(kernels::Backend::Avx2)) backends.push_back(kernels::Backend::Avx2);
    const kernels::Backend saved = kernels::active();

    for (kernels::Backend b : backends) {
        kernels::select(b);
        SplitMix64 rng(seed);

        // Dense algebra products across dimensions.
        for (int k : {6, 8, 10, 12}) {
            const FieldCtx ctx = ff_make_field(16);
            AlgElem u = alg_zero(k), w = alg_zero(k);
            for (auto& c : u.coeffs) c = static_cast<std::uint32_t>(rng.next_bits(16));
            for (auto& c : w.coeffs) c = static_cast<std::uint32_t>(rng.next_bits(16));
            const int reps = k <= 8 ? 100 : (k == 10 ? 10 : 2);
            AlgElem sink = alg_zero(k);
            const double ms = time_ms([&] {
                for (int r = 0; r < reps; ++r) {
                    AlgElem prod = alg_mul(ctx, u, w);
                    alg_add_inplace(sink, prod);
                }
            });
            rows.push_back({"alg_mul dense k=" + std::to_string(k), kernels::backend_name(b), ms, ms * 1e6 / reps});
        }

        // Raw kernel throughput.
        {
            const FieldCtx ctx = ff_make_field(16);
            const std::size_t n = 1 << 20;
            std::vector<std::uint32_t> a(n), c(n);
            for (auto& x : a) x = static_cast<std::uint32_t>(rng.next_bits(16));
            const int reps = 32;
            double ms = time_ms([&] {
                for (int r = 0; r < reps; ++r) kernels::xor_words(c.data(), a.data(), n);
            });
            rows.push_back({"xor_words 4MiB", kernels::backend_name(b), ms, ms * 1e6 / reps});
            ms = time_ms([&] {
                for (int r = 0; r < reps; ++r) kernels::gf2d_scale(ctx, 0xabcd, a.data(), c.data(), n);
            });
            rows.push_back({"gf2d_scale 4MiB", kernels::backend_name(b), ms, ms * 1e6 / reps});
            ms = time_ms([&] {
                for (int r = 0; r < reps; ++r) kernels::gf2d_scatter_accum(ctx, 0xabcd, a.data(), c.data(), 0x155, n);
            });
            rows.push_back({"gf2d_scatter 4MiB", kernels::backend_name(b), ms, ms * 1e6 / reps});
        }

        // End-to-end randomized test on a generated packing instance.
        {
            SetSystem s;
            s.m = 2;
            for (int i = 0; i < 40; ++i) s.universe.push_back("e" + std::to_string(i));
            SplitMix64 gen(seed ^ 0x5eedULL);
            for (int i = 0; i < 30; ++i) {
                const int a = static_cast<int>(gen.next() % 40);
                int bb = static_cast<int>(gen.next() % 40);
                while (bb == a) bb = static_cast<int>(gen.next() % 40);
                s.members.push_back({a, bb});
            }
            const std::optional<Circuit> c = build_setpack_circuit(s, 4);
            const double ms = time_ms([&] { rtm_test(*c, TestParams{2, 8, 16, seed}); });
            rows.push_back({"rtm setpack m=2 k=4 (16 trials)", kernels::backend_name(b), ms, ms});
        }
    }
    kernels::select(saved);

    if (format == "structured" || format == "json") {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (const BenchRow& r : rows) {
            nlohmann::ordered_json item;
            item["name"] = r.name;
            item["backend"] = r.backend;
            item["ms"] = r.ms;
            item["per_op_ns"] = r.per_op_ns;
            doc.push_back(std::move(item));
        }
        out << doc.dump(2) << "\n";
    } else {
        out << "benchmark                                backend   total_ms      ns/op\n";
        out << "---------------------------------------------------------------------\n";
        char buf[160];
        for (const BenchRow& r : rows) {
            std::snprintf(buf, sizeof(buf), "%-40s %-8s %10.2f %10.0f\n", r.name.c_str(), r.backend.c_str(), r.ms,
                          r.per_op_ns);
            out << buf;
        }
    }
    return kExitOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"q-monomial testing for arithmetic circuits (randomized and deterministic), "
                 "with k-path, set-packing and P2-packing front-ends"};
    app.require_subcommand(1);

    CommonOpts tc, kp, sp, pp;
    int pad = 0;
    int m = 3;
    bool strict = false;
    std::string bench_format = "human";
    std::uint64_t bench_seed = 1;

    CLI::App* c_tc = app.add_subcommand("test-circuit", "decide whether a circuit's polynomial has a q-monomial of degree <= k");
    add_common(c_tc, tc, true);
    c_tc->add_option("--pad", pad, "multiply the polynomial by this many fresh variables first");

    CLI::App* c_kp = app.add_subcommand("kpath", "non-simple k-path: a k-vertex walk visiting every vertex at most q-1 times");
    add_common(c_kp, kp, false);

    CLI::App* c_sp = app.add_subcommand("setpack", "generalized m-set k-packing: k members covering every element at most q-1 times");
    add_common(c_sp, sp, true);
    c_sp->add_option("--m", m, "member size")->required();
    c_sp->add_flag("--strict", strict, "enforce the classical m >= 3 restriction");

    CLI::App* c_pp = app.add_subcommand("p2pack", "generalized P2-packing via the 3-set reduction");
    add_common(c_pp, pp, true);

    CLI::App* c_bench = app.add_subcommand("bench", "algebra kernel and end-to-end timing tables");
    c_bench->add_option("--format", bench_format, "output format (human|structured)");
    c_bench->add_option("--seed", bench_seed, "input generation seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends.
            return app.exit(e, out, err);
        }
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (c_tc->parsed()) return run_test_circuit(tc, pad, out);
        if (c_kp->parsed()) return run_kpath(kp, out);
        if (c_sp->parsed()) return run_setpack(sp, m, strict, out);
        if (c_pp->parsed()) return run_p2pack(pp, out);
        if (c_bench->parsed()) return run_bench(bench_format, bench_seed, out);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const StructureError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << "\n";
        return kExitFormat;
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << "\n";
        return kExitBudget;
    }
    return kExitUsage;
}

} // namespace monomial::cli
