#include "monomial/derand.hpp"

#include "monomial/errors.hpp"
#include "monomial/kernels.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace monomial {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

std::uint64_t binomial_clamped(int n, int r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (int i = 1; i <= r; ++i) {
        acc = acc * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
        if (acc > ~std::uint64_t{0}) return ~std::uint64_t{0};
    }
    return static_cast<std::uint64_t>(acc);
}

namespace {

// All k-subsets of {0..N-1} in lexicographic order.
std::vector<std::vector<std::uint16_t>> enumerate_subsets(int N, int k) {
    std::vector<std::vector<std::uint16_t>> out;
    std::vector<std::uint16_t> cur(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(i);
    for (;;) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == N - k + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = static_cast<std::uint16_t>(cur[static_cast<std::size_t>(j - 1)] + 1);
    }
    return out;
}

} // namespace

PerfectHashFamily build_phf(int N, int k, std::uint64_t subset_budget) {
    if (k < 1 || k > N) throw ParameterError("build_phf requires 1 <= k <= N");
    if (k > 16) throw BudgetError("build_phf color count exceeds 16");
    if (binomial_clamped(N, k) > subset_budget) {
        throw BudgetError("C(N,k) exceeds the perfect-hash verification budget");
    }

    const std::vector<std::vector<std::uint16_t>> subsets = enumerate_subsets(N, k);
    std::vector<std::vector<std::uint32_t>> containing(static_cast<std::size_t>(N));
    for (std::uint32_t s = 0; s < subsets.size(); ++s) {
        for (std::uint16_t item : subsets[s]) containing[item].push_back(s);
    }

    // weight[m] ~ probability that a subset with m distinct assigned colors
    // and no clash is injectively completed by uniform random colors,
    // rescaled by k^k to stay integral: (k-m)! * k^m.
    std::vector<unsigned __int128> weight(static_cast<std::size_t>(k) + 1);
    for (int m = 0; m <= k; ++m) {
        unsigned __int128 w = 1;
        for (int f = 2; f <= k - m; ++f) w *= static_cast<unsigned>(f);
        for (int e = 0; e < m; ++e) w *= static_cast<unsigned>(k);
        weight[static_cast<std::size_t>(m)] = w;
    }

    PerfectHashFamily family;
    family.N = N;
    family.k = k;

    std::vector<std::uint8_t> covered(subsets.size(), 0);
    std::size_t uncovered = subsets.size();
    std::vector<std::uint32_t> used_mask(subsets.size());
    std::vector<std::uint8_t> assigned(subsets.size());
    std::vector<std::uint8_t> dead(subsets.size());

    while (uncovered > 0) {
        std::fill(used_mask.begin(), used_mask.end(), 0u);
        std::fill(assigned.begin(), assigned.end(), 0);
        std::fill(dead.begin(), dead.end(), 0);

        std::vector<std::uint8_t> coloring(static_cast<std::size_t>(N));
        for (int item = 0; item < N; ++item) {
            int best_color = 1;
            unsigned __int128 best_score = 0;
            bool first = true;
            for (int c = 1; c <= k; ++c) {
                unsigned __int128 score = 0;
                const std::uint32_t cbit = std::uint32_t{1} << (c - 1);
                for (std::uint32_t s : containing[static_cast<std::size_t>(item)]) {
                    if (covered[s] || dead[s] || (used_mask[s] & cbit)) continue;
                    score += weight[static_cast<std::size_t>(assigned[s]) + 1];
                }
                if (first || score > best_score) {
                    best_score = score;
                    best_color = c;
                    first = false;
                }
            }
            coloring[static_cast<std::size_t>(item)] = static_cast<std::uint8_t>(best_color);
            const std::uint32_t cbit = std::uint32_t{1} << (best_color - 1);
            for (std::uint32_t s : containing[static_cast<std::size_t>(item)]) {
                if (covered[s] || dead[s]) continue;
                if (used_mask[s] & cbit) {
                    dead[s] = 1;
                } else {
                    used_mask[s] |= cbit;
                    ++assigned[s];
                }
            }
        }

        std::size_t newly = 0;
        for (std::uint32_t s = 0; s < subsets.size(); ++s) {
            if (!covered[s] && !dead[s]) {
                covered[s] = 1;
                ++newly;
            }
        }
        if (newly == 0) {
            // The expectation argument makes at least one cover per pass.
            throw std::logic_error("build_phf made no progress");
        }
        uncovered -= newly;
        family.colorings.push_back(std::move(coloring));
    }
    return family;
}

bool verify_phf(const PerfectHashFamily& f, std::uint64_t subset_budget) {
    if (f.k < 1 || f.N < 1) return false;
    if (f.k > f.N) return true; // no k-subsets exist
    if (binomial_clamped(f.N, f.k) > subset_budget) {
        throw BudgetError("C(N,k) exceeds the perfect-hash verification budget");
    }
    for (const auto& coloring : f.colorings) {
        if (coloring.size() != static_cast<std::size_t>(f.N)) return false;
        for (std::uint8_t c : coloring) {
            if (c < 1 || c > f.k) return false;
        }
    }
    const std::vector<std::vector<std::uint16_t>> subsets = enumerate_subsets(f.N, f.k);
    for (const auto& subset : subsets) {
        bool hit = false;
        for (const auto& coloring : f.colorings) {
            std::uint32_t mask = 0;
            bool injective = true;
            for (std::uint16_t item : subset) {
                const std::uint32_t cbit = std::uint32_t{1} << (coloring[item] - 1);
                if (mask & cbit) {
                    injective = false;
                    break;
                }
                mask |= cbit;
            }
            if (injective) {
                hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    return true;
}

std::string serialize_phf(const PerfectHashFamily& f) {
    std::ostringstream out;
    out << f.N << ' ' << f.k << ' ' << f.colorings.size() << '\n';
    for (const auto& coloring : f.colorings) {
        for (std::size_t i = 0; i < coloring.size(); ++i) {
            if (i) out << ' ';
            out << static_cast<int>(coloring[i]);
        }
        out << '\n';
    }
    return out.str();
}

PerfectHashFamily parse_phf(const std::string& text) {
    std::istringstream in(text);
    PerfectHashFamily f;
    std::size_t count = 0;
    if (!(in >> f.N >> f.k >> count)) throw FormatError("phf file: bad header");
    if (f.N < 1 || f.k < 1 || f.k > 16) throw FormatError("phf file: invalid N or k");
    f.colorings.resize(count, std::vector<std::uint8_t>(static_cast<std::size_t>(f.N)));
    for (auto& coloring : f.colorings) {
        for (auto& c : coloring) {
            int v = 0;
            if (!(in >> v) || v < 1 || v > f.k) throw FormatError("phf file: bad color entry");
            c = static_cast<std::uint8_t>(v);
        }
    }
    return f;
}

// ----------------------------------------------------------------------

ZCircuit apply_y_substitution(const TransformOutput& T, int k, std::span<const AlgElem> y_values) {
    if (T.stage != Stage::CDoublePrime) throw ParameterError("apply_y_substitution requires a stage-C'' transform");
    if (y_values.size() != T.vars.y_vars.size()) throw ParameterError("y_values must match the y-variable table");

    const Circuit& c = T.circuit;
    std::unordered_map<std::string, int> y_index;
    for (std::size_t i = 0; i < T.vars.y_vars.size(); ++i) y_index.emplace(T.vars.y_vars[i].name, static_cast<int>(i));
    std::unordered_map<std::string, int> z_index;
    for (std::size_t i = 0; i < T.vars.z_vars.size(); ++i) z_index.emplace(T.vars.z_vars[i], static_cast<int>(i));

    ZCircuit zc;
    zc.k = k;
    zc.num_z = static_cast<int>(T.vars.z_vars.size());

    std::vector<std::uint8_t> entered(c.gates().size(), 0);
    std::vector<std::uint8_t> z_seen(T.vars.z_vars.size(), 0);

    // Post-order build so children always carry smaller node indices.
    struct Frame {
        GateId g;
        std::size_t next = 0;
        std::vector<int> built;
    };
    std::vector<Frame> stack;
    stack.push_back({c.root(), 0, {}});
    int root_node = -1;
    while (!stack.empty()) {
        Frame& f = stack.back();
        const Gate& gate = c.gate(f.g);
        if (gate.kind == GateKind::Var) {
            ZNode node;
            if (auto it = y_index.find(gate.name); it != y_index.end()) {
                node.kind = ZNode::Kind::Const;
                node.value = y_values[static_cast<std::size_t>(it->second)];
            } else if (auto zit = z_index.find(gate.name); zit != z_index.end()) {
                if (z_seen[static_cast<std::size_t>(zit->second)]) {
                    throw StructureError("z-variable occurs more than once: " + gate.name);
                }
                z_seen[static_cast<std::size_t>(zit->second)] = 1;
                node.kind = ZNode::Kind::ZVar;
                node.z = zit->second;
            } else {
                throw ParameterError("unclassified terminal in stage-C'' circuit: " + gate.name);
            }
            root_node = static_cast<int>(zc.nodes.size());
            zc.nodes.push_back(std::move(node));
            stack.pop_back();
            if (!stack.empty()) stack.back().built.push_back(root_node);
            continue;
        }
        if (f.next == 0) {
            if (entered[static_cast<std::size_t>(f.g)]) {
                throw StructureError("circuit is not tree-like: gate " + std::to_string(f.g) + " has fan-out > 1");
            }
            entered[static_cast<std::size_t>(f.g)] = 1;
        }
        if (f.next < gate.in.size()) {
            stack.push_back({gate.in[f.next++], 0, {}});
            continue;
        }
        ZNode node;
        node.kind = gate.kind == GateKind::Add ? ZNode::Kind::Add : ZNode::Kind::Mul;
        node.children = f.built;
        root_node = static_cast<int>(zc.nodes.size());
        zc.nodes.push_back(std::move(node));
        stack.pop_back();
        if (!stack.empty()) stack.back().built.push_back(root_node);
    }
    zc.root = root_node;
    return zc;
}

namespace {

// Series/parallel fragment: single source, single sink, layered edges.
struct Frag {
    std::vector<int> width;                   // width[0..len]; ends are 1
    std::vector<std::vector<AbpEdge>> edges;  // edges[l]: layer l -> l+1

    std::size_t len() const { return edges.size(); }
};

Frag leaf_edge(AbpEdge e) {
    Frag f;
    f.width = {1, 1};
    e.from = 0;
    e.to = 0;
    f.edges.push_back({std::move(e)});
    return f;
}

Frag series(Frag a, Frag b) {
    a.width.pop_back(); // a's sink == b's source (both width 1)
    a.width.insert(a.width.end(), b.width.begin(), b.width.end());
    a.edges.insert(a.edges.end(), std::make_move_iterator(b.edges.begin()), std::make_move_iterator(b.edges.end()));
    return a;
}

// Extends a fragment by `extra` identity-labeled edges before its sink.
void pad_to(Frag& f, std::size_t target_len, int k) {
    while (f.len() < target_len) {
        AbpEdge e;
        e.from = 0;
        e.to = 0;
        e.c0 = alg_identity(k);
        f.width.push_back(1);
        f.edges.push_back({std::move(e)});
    }
}

// Shares the source and sink across all fragments; interior layers are the
// disjoint union, with per-fragment node offsets.
Frag parallel(std::vector<Frag> frags, int k) {
    std::size_t target = 0;
    for (const Frag& f : frags) target = std::max(target, f.len());
    for (Frag& f : frags) pad_to(f, target, k);

    Frag out;
    out.width.assign(target + 1, 0);
    out.width[0] = 1;
    out.width[target] = 1;
    out.edges.resize(target);

    std::vector<std::vector<int>> offsets(frags.size(), std::vector<int>(target + 1, 0));
    for (std::size_t l = 1; l < target; ++l) {
        int total = 0;
        for (std::size_t fi = 0; fi < frags.size(); ++fi) {
            offsets[fi][l] = total;
            total += frags[fi].width[l];
        }
        out.width[l] = total;
    }
    for (std::size_t fi = 0; fi < frags.size(); ++fi) {
        for (std::size_t l = 0; l < target; ++l) {
            for (AbpEdge& e : frags[fi].edges[l]) {
                AbpEdge moved = std::move(e);
                moved.from = (l == 0) ? 0 : moved.from + offsets[fi][l];
                moved.to = (l + 1 == target) ? 0 : moved.to + offsets[fi][l + 1];
                out.edges[l].push_back(std::move(moved));
            }
        }
    }
    return out;
}

} // namespace

Abp circuit_to_abp(const ZCircuit& zc, const FieldCtx& ctx) {
    (void)ctx;
    std::vector<Frag> frag(zc.nodes.size());
    for (std::size_t i = 0; i < zc.nodes.size(); ++i) {
        const ZNode& node = zc.nodes[i];
        switch (node.kind) {
        case ZNode::Kind::Const: {
            AbpEdge e;
            e.c0 = node.value.k ? node.value : alg_zero(zc.k);
            frag[i] = leaf_edge(std::move(e));
            break;
        }
        case ZNode::Kind::ZVar: {
            AbpEdge e;
            e.c0 = alg_zero(zc.k);
            e.terms.emplace_back(node.z, alg_identity(zc.k));
            frag[i] = leaf_edge(std::move(e));
            break;
        }
        case ZNode::Kind::Mul:
            frag[i] = series(std::move(frag[static_cast<std::size_t>(node.children[0])]),
                             std::move(frag[static_cast<std::size_t>(node.children[1])]));
            break;
        case ZNode::Kind::Add: {
            std::vector<Frag> children;
            children.reserve(node.children.size());
            for (int child : node.children) children.push_back(std::move(frag[static_cast<std::size_t>(child)]));
            frag[i] = parallel(std::move(children), zc.k);
            break;
        }
        }
    }

    Frag& top = frag[static_cast<std::size_t>(zc.root)];
    Abp abp;
    abp.k = zc.k;
    abp.layer_sizes = std::move(top.width);
    abp.layers = std::move(top.edges);
    return abp;
}

namespace {

// XOR-convolution of a profile slice by an AlgElem coefficient, accumulated
// into the destination slice.
void accum_mul(const FieldCtx& ctx, const std::uint32_t* src, const AlgElem& coeff, std::uint32_t* dst,
               std::size_t m) {
    for (std::uint32_t a = 0; a < m; ++a) {
        if (coeff.coeffs[a] == 0) continue;
        kernels::gf2d_scatter_accum(ctx, coeff.coeffs[a], src, dst, a, m);
    }
}

bool slice_zero(const std::uint32_t* p, std::size_t m) {
    for (std::size_t i = 0; i < m; ++i) {
        if (p[i]) return false;
    }
    return true;
}

} // namespace

bool rs_pit(const Abp& abp, const FieldCtx& ctx) {
    const std::size_t m = std::size_t{1} << abp.k;
    using Word = std::vector<int>;

    std::map<Word, std::vector<std::uint32_t>> rows;
    {
        std::vector<std::uint32_t> source(m, 0);
        source[0] = 1; // the empty word carries the identity at the source
        rows.emplace(Word{}, std::move(source));
    }

    for (std::size_t l = 0; l < abp.layers.size(); ++l) {
        const std::size_t wnext = static_cast<std::size_t>(abp.layer_sizes[l + 1]);
        std::map<Word, std::vector<std::uint32_t>> next;
        for (const auto& [word, prof] : rows) {
            for (const AbpEdge& e : abp.layers[l]) {
                const std::uint32_t* pu = prof.data() + static_cast<std::size_t>(e.from) * m;
                if (slice_zero(pu, m)) continue;
                if (e.c0.k && !alg_is_zero(e.c0)) {
                    auto [it, inserted] = next.try_emplace(word, std::vector<std::uint32_t>(wnext * m, 0));
                    accum_mul(ctx, pu, e.c0, it->second.data() + static_cast<std::size_t>(e.to) * m, m);
                }
                for (const auto& [z, cz] : e.terms) {
                    if (alg_is_zero(cz)) continue;
                    Word extended = word;
                    extended.push_back(z);
                    auto [it, inserted] = next.try_emplace(std::move(extended), std::vector<std::uint32_t>(wnext * m, 0));
                    accum_mul(ctx, pu, cz, it->second.data() + static_cast<std::size_t>(e.to) * m, m);
                }
            }
        }

        // Reduce to a linearly independent set of profiles over GF(2^d).
        rows.clear();
        std::vector<std::pair<std::size_t, const std::vector<std::uint32_t>*>> pivots; // (column, row)
        for (auto& [word, prof] : next) {
            for (const auto& [col, prow] : pivots) {
                if (prof[col] == 0) continue;
                kernels::gf2d_scatter_accum(ctx, prof[col], prow->data(), prof.data(), 0, prof.size());
            }
            std::size_t col = 0;
            while (col < prof.size() && prof[col] == 0) ++col;
            if (col == prof.size()) continue; // dependent, dropped
            const std::uint32_t inv = ff_inv(ctx, prof[col]);
            if (inv != 1) kernels::gf2d_scale(ctx, inv, prof.data(), prof.data(), prof.size());
            auto [it, inserted] = rows.emplace(word, std::move(prof));
            pivots.emplace_back(col, &it->second);
        }
        if (rows.empty()) return true; // identically zero from here on
    }
    return rows.empty();
}

bool symbolic_zero_oracle(const ZCircuit& zc, const FieldCtx& ctx, std::size_t cap) {
    using Mono = std::vector<int>; // sorted z multiset
    using Poly = std::map<Mono, AlgElem>;

    std::vector<Poly> val(zc.nodes.size());
    for (std::size_t i = 0; i < zc.nodes.size(); ++i) {
        const ZNode& node = zc.nodes[i];
        Poly& out = val[i];
        switch (node.kind) {
        case ZNode::Kind::Const:
            if (node.value.k && !alg_is_zero(node.value)) out.emplace(Mono{}, node.value);
            break;
        case ZNode::Kind::ZVar:
            out.emplace(Mono{node.z}, alg_identity(zc.k));
            break;
        case ZNode::Kind::Add:
            for (int child : node.children) {
                for (const auto& [mono, coeff] : val[static_cast<std::size_t>(child)]) {
                    auto [it, inserted] = out.try_emplace(mono, coeff);
                    if (!inserted) {
                        alg_add_inplace(it->second, coeff);
                        if (alg_is_zero(it->second)) out.erase(it);
                    }
                    if (out.size() > cap) throw BudgetError("symbolic expansion too large");
                }
            }
            break;
        case ZNode::Kind::Mul: {
            const Poly& a = val[static_cast<std::size_t>(node.children[0])];
            const Poly& b = val[static_cast<std::size_t>(node.children[1])];
            for (const auto& [ma, ca] : a) {
                for (const auto& [mb, cb] : b) {
                    AlgElem prod = alg_mul(ctx, ca, cb);
                    if (alg_is_zero(prod)) continue;
                    Mono mono;
                    mono.reserve(ma.size() + mb.size());
                    std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(mono));
                    auto [it, inserted] = out.try_emplace(std::move(mono), std::move(prod));
                    if (!inserted) {
                        alg_add_inplace(it->second, prod);
                        if (alg_is_zero(it->second)) out.erase(it);
                    }
                    if (out.size() > cap) throw BudgetError("symbolic expansion too large");
                }
            }
            break;
        }
        }
        // Children feed exactly one parent in a tree; free them eagerly.
        for (int child : node.children) val[static_cast<std::size_t>(child)].clear();
    }
    return val[static_cast<std::size_t>(zc.root)].empty();
}

TestReport dtm_test(const Circuit& c, int q, int k, int threads, std::uint64_t subset_budget) {
    if (q < 2) throw ParameterError("q must be >= 2");
    if (k < 1) throw ParameterError("k must be >= 1");
    if (k > 16) throw BudgetError("k exceeds the algebra dimension cap of 16");

    const auto t0 = std::chrono::steady_clock::now();
    const CircuitStats stats = circuit_stats(c);
    if (!stats.tree_like) throw StructureError("deterministic testing requires a tree-like circuit");

    TestReport report;
    report.mode = TestMode::Deterministic;
    report.q = q;
    report.k = k;
    report.s = stats.s;
    report.t = stats.t;
    report.tree_like = true;

    const TransformOutput T = transform_full(c, q);
    report.elapsed_ms.transform = ms_since(t0);

    const auto t1 = std::chrono::steady_clock::now();
    report.d = choose_field_degree(k, stats.s);
    const FieldCtx ctx = ff_make_field(report.d);

    const int n = static_cast<int>(T.vars.x_vars.size());
    const int N = (q - 1) * n;
    PerfectHashFamily family;
    if (k <= N) {
        family = build_phf(N, k, subset_budget);
    } else {
        // Fewer than k items: the identity coloring is injective everywhere.
        family.N = N;
        family.k = k;
        std::vector<std::uint8_t> identity(static_cast<std::size_t>(N));
        for (int u = 0; u < N; ++u) identity[static_cast<std::size_t>(u)] = static_cast<std::uint8_t>(u + 1);
        family.colorings.push_back(std::move(identity));
    }
    report.elapsed_ms.setup = ms_since(t1);

    const auto t2 = std::chrono::steady_clock::now();
    const std::size_t count = family.colorings.size();
    report.trial_flags.assign(count, 0);

    auto run_coloring = [&](std::size_t idx) {
        const std::vector<std::uint8_t>& coloring = family.colorings[idx];
        std::vector<AlgElem> y_values;
        y_values.reserve(T.vars.y_vars.size());
        for (const YVar& y : T.vars.y_vars) {
            const int g = T.vars.gamma(y.i, y.j); // 1-based in {1..(q-1)n}
            const int color = coloring[static_cast<std::size_t>(g - 1)];
            AlgElem e = alg_basis(k, GroupVec{std::uint32_t{1} << (color - 1)});
            e.coeffs[0] ^= 1; // + identity
            y_values.push_back(std::move(e));
        }
        const ZCircuit zc = apply_y_substitution(T, k, y_values);
        const Abp abp = circuit_to_abp(zc, ctx);
        return rs_pit(abp, ctx) ? std::uint8_t{0} : std::uint8_t{1};
    };

    const int workers = std::min<int>(resolve_threads(threads), static_cast<int>(count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) report.trial_flags[i] = run_coloring(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                for (std::size_t i = static_cast<std::size_t>(w); i < count; i += static_cast<std::size_t>(workers)) {
                    report.trial_flags[i] = run_coloring(i);
                }
            });
        }
        for (std::thread& th : pool) th.join();
    }
    report.elapsed_ms.decide = ms_since(t2);

    report.trials_run = static_cast<int>(count);
    for (std::uint8_t f : report.trial_flags) report.successes += f;
    report.yes = report.successes >= 1;
    report.elapsed_ms.total = ms_since(t0);
    return report;
}

} // namespace monomial
