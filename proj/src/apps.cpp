#include "monomial/apps.hpp"

#include "monomial/errors.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

namespace monomial {

Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    Graph g;
    std::size_t m = 0;
    if (!(in >> g.n >> m)) throw FormatError("graph file: expected header 'n m_edges'");
    if (g.n < 1) throw FormatError("graph file: n must be >= 1");
    g.edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        int u = 0, v = 0;
        if (!(in >> u >> v)) throw FormatError("graph file: expected " + std::to_string(m) + " edges");
        if (u < 1 || u > g.n || v < 1 || v > g.n) throw FormatError("graph file: vertex out of range in edge " + std::to_string(i + 1));
        if (u == v) throw FormatError("graph file: self-loop in edge " + std::to_string(i + 1));
        g.edges.emplace_back(u, v);
    }
    return g;
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << g.n << ' ' << g.edges.size() << '\n';
    for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
    return out.str();
}

SetSystem parse_set_system(const std::string& text, int m, bool strict) {
    if (m < 1) throw ParameterError("member size m must be >= 1");
    if (strict && m < 3) throw ParameterError("member size m must be >= 3 in strict mode");
    SetSystem s;
    s.m = m;
    std::map<std::string, int> index;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::vector<int> member;
        std::string item;
        while (fields >> item) {
            auto [it, inserted] = index.try_emplace(item, static_cast<int>(s.universe.size()));
            if (inserted) s.universe.push_back(item);
            member.push_back(it->second);
        }
        if (member.empty()) continue; // blank line
        std::vector<int> sorted = member;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw FormatError("set file: duplicate item in member on line " + std::to_string(lineno));
        }
        if (static_cast<int>(member.size()) != m) {
            throw FormatError("set file: member on line " + std::to_string(lineno) + " has size " +
                              std::to_string(member.size()) + ", expected " + std::to_string(m));
        }
        s.members.push_back(std::move(member));
    }
    return s;
}

std::string serialize_set_system(const SetSystem& s) {
    std::ostringstream out;
    for (const auto& member : s.members) {
        for (std::size_t i = 0; i < member.size(); ++i) {
            if (i) out << ' ';
            out << s.universe[static_cast<std::size_t>(member[i])];
        }
        out << '\n';
    }
    return out.str();
}

namespace {

std::vector<std::vector<int>> adjacency(const Graph& g) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.n) + 1);
    for (const auto& [u, v] : g.edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& lst : adj) {
        std::sort(lst.begin(), lst.end());
        lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    }
    return adj;
}

} // namespace

std::optional<Circuit> build_kpath_circuit(const Graph& g, int k) {
    if (k < 1) throw ParameterError("k must be >= 1");
    const std::vector<std::vector<int>> adj = adjacency(g);

    std::vector<Gate> gates;
    std::vector<GateId> x(static_cast<std::size_t>(g.n) + 1, -1);
    for (int v = 1; v <= g.n; ++v) {
        Gate var;
        var.kind = GateKind::Var;
        var.name = "x" + std::to_string(v);
        x[static_cast<std::size_t>(v)] = static_cast<GateId>(gates.size());
        gates.push_back(std::move(var));
    }

    // level[v] = gate computing F_{j,v}; -1 where the polynomial is zero.
    std::vector<GateId> level = x;
    for (int j = 2; j <= k; ++j) {
        std::vector<GateId> next(static_cast<std::size_t>(g.n) + 1, -1);
        for (int v = 1; v <= g.n; ++v) {
            std::vector<GateId> terms;
            for (int nb : adj[static_cast<std::size_t>(v)]) {
                if (level[static_cast<std::size_t>(nb)] >= 0) terms.push_back(level[static_cast<std::size_t>(nb)]);
            }
            if (terms.empty()) continue;
            Gate sum;
            sum.kind = GateKind::Add;
            sum.in = std::move(terms);
            const GateId sid = static_cast<GateId>(gates.size());
            gates.push_back(std::move(sum));
            Gate mul;
            mul.kind = GateKind::Mul;
            mul.in = {x[static_cast<std::size_t>(v)], sid};
            next[static_cast<std::size_t>(v)] = static_cast<GateId>(gates.size());
            gates.push_back(std::move(mul));
        }
        level = std::move(next);
    }

    std::vector<GateId> roots;
    for (int v = 1; v <= g.n; ++v) {
        if (level[static_cast<std::size_t>(v)] >= 0) roots.push_back(level[static_cast<std::size_t>(v)]);
    }
    if (roots.empty()) return std::nullopt;
    Gate top;
    top.kind = GateKind::Add;
    top.in = std::move(roots);
    const GateId root = static_cast<GateId>(gates.size());
    gates.push_back(std::move(top));

    // Unused x terminals (isolated vertices at k >= 2) are unreachable; keep
    // only the reachable sub-DAG.
    std::vector<std::uint8_t> keep(gates.size(), 0);
    std::vector<GateId> work{root};
    keep[static_cast<std::size_t>(root)] = 1;
    while (!work.empty()) {
        const GateId gid = work.back();
        work.pop_back();
        for (GateId in : gates[static_cast<std::size_t>(gid)].in) {
            if (!keep[static_cast<std::size_t>(in)]) {
                keep[static_cast<std::size_t>(in)] = 1;
                work.push_back(in);
            }
        }
    }
    std::vector<GateId> remap(gates.size(), -1);
    std::vector<Gate> kept;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (!keep[i]) continue;
        remap[i] = static_cast<GateId>(kept.size());
        kept.push_back(std::move(gates[i]));
    }
    for (Gate& gate : kept) {
        for (GateId& in : gate.in) in = remap[static_cast<std::size_t>(in)];
    }
    return Circuit::from_gates(std::move(kept), remap[static_cast<std::size_t>(root)]);
}

bool kpath_oracle(const Graph& g, int k, int q, std::uint64_t budget) {
    if (k < 1) throw ParameterError("k must be >= 1");
    if (q < 2) throw ParameterError("q must be >= 2");
    const std::vector<std::vector<int>> adj = adjacency(g);
    std::vector<int> count(static_cast<std::size_t>(g.n) + 1, 0);
    std::uint64_t visited = 0;

    // DFS over walks with per-vertex multiplicity <= q-1.
    auto walk = [&](auto&& self, int v, int remaining) -> bool {
        if (++visited > budget) throw BudgetError("k-path oracle enumeration budget exceeded");
        if (count[static_cast<std::size_t>(v)] == q - 1) return false;
        if (remaining == 1) return true;
        ++count[static_cast<std::size_t>(v)];
        for (int nb : adj[static_cast<std::size_t>(v)]) {
            if (self(self, nb, remaining - 1)) {
                --count[static_cast<std::size_t>(v)];
                return true;
            }
        }
        --count[static_cast<std::size_t>(v)];
        return false;
    };
    for (int v = 1; v <= g.n; ++v) {
        if (walk(walk, v, k)) return true;
    }
    return false;
}

std::optional<Circuit> build_setpack_circuit(const SetSystem& s, int k) {
    if (k < 1) throw ParameterError("k must be >= 1");
    if (s.members.empty()) return std::nullopt;

    std::vector<Gate> gates;
    std::vector<GateId> item_gate(s.universe.size(), -1);

    auto var_gate = [&gates, &item_gate, &s](int item) {
        if (item_gate[static_cast<std::size_t>(item)] < 0) {
            Gate var;
            var.kind = GateKind::Var;
            var.name = s.universe[static_cast<std::size_t>(item)];
            item_gate[static_cast<std::size_t>(item)] = static_cast<GateId>(gates.size());
            gates.push_back(std::move(var));
        }
        return item_gate[static_cast<std::size_t>(item)];
    };

    // One fresh copy of sum_A f(A) per factor keeps the circuit tree-like.
    auto member_sum_copy = [&]() {
        std::vector<GateId> terms;
        terms.reserve(s.members.size());
        for (const auto& member : s.members) {
            GateId acc = var_gate(member[0]);
            for (std::size_t i = 1; i < member.size(); ++i) {
                Gate mul;
                mul.kind = GateKind::Mul;
                mul.in = {acc, var_gate(member[i])};
                acc = static_cast<GateId>(gates.size());
                gates.push_back(std::move(mul));
            }
            terms.push_back(acc);
        }
        Gate sum;
        sum.kind = GateKind::Add;
        sum.in = std::move(terms);
        const GateId sid = static_cast<GateId>(gates.size());
        gates.push_back(std::move(sum));
        return sid;
    };

    GateId acc = member_sum_copy();
    for (int j = 2; j <= k; ++j) {
        const GateId copy = member_sum_copy();
        Gate mul;
        mul.kind = GateKind::Mul;
        mul.in = {acc, copy};
        acc = static_cast<GateId>(gates.size());
        gates.push_back(std::move(mul));
    }
    return Circuit::from_gates(std::move(gates), acc);
}

bool setpack_oracle(const SetSystem& s, int k, int q, std::uint64_t budget) {
    if (k < 1) throw ParameterError("k must be >= 1");
    if (q < 2) throw ParameterError("q must be >= 2");
    if (s.members.empty()) return false;
    std::vector<int> count(s.universe.size(), 0);
    std::uint64_t visited = 0;

    // Non-decreasing member indices enumerate multisets once.
    auto pick = [&](auto&& self, std::size_t first, int remaining) -> bool {
        if (remaining == 0) return true;
        for (std::size_t idx = first; idx < s.members.size(); ++idx) {
            if (++visited > budget) throw BudgetError("set-packing oracle enumeration budget exceeded");
            bool ok = true;
            for (int item : s.members[idx]) {
                if (count[static_cast<std::size_t>(item)] + 1 > q - 1) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            for (int item : s.members[idx]) ++count[static_cast<std::size_t>(item)];
            if (self(self, idx, remaining - 1)) return true;
            for (int item : s.members[idx]) --count[static_cast<std::size_t>(item)];
        }
        return false;
    };
    return pick(pick, 0, k);
}

P2System p2_to_sets(const Graph& g) {
    const std::vector<std::vector<int>> adj = adjacency(g);
    P2System out;
    out.sets.m = 3;
    std::map<std::array<int, 3>, int> seen; // sorted vertex set -> member index

    for (int b = 1; b <= g.n; ++b) {
        const auto& nb = adj[static_cast<std::size_t>(b)];
        for (std::size_t i = 0; i < nb.size(); ++i) {
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                std::array<int, 3> key{nb[i], b, nb[j]};
                std::sort(key.begin(), key.end());
                if (seen.try_emplace(key, static_cast<int>(out.sets.members.size())).second) {
                    std::vector<int> member;
                    for (int v : key) {
                        const std::string name = std::to_string(v);
                        auto it = std::find(out.sets.universe.begin(), out.sets.universe.end(), name);
                        if (it == out.sets.universe.end()) {
                            member.push_back(static_cast<int>(out.sets.universe.size()));
                            out.sets.universe.push_back(name);
                        } else {
                            member.push_back(static_cast<int>(it - out.sets.universe.begin()));
                        }
                    }
                    out.sets.members.push_back(std::move(member));
                    out.centers.push_back(b);
                }
            }
        }
    }
    return out;
}

} // namespace monomial
