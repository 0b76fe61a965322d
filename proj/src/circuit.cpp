#include "monomial/circuit.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <limits>

namespace monomial {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string gate_ctx(GateId g) { return " (gate id " + std::to_string(g) + ")"; }

} // namespace

Circuit Circuit::from_gates(std::vector<Gate> gates, GateId root) {
    const std::size_t n = gates.size();
    if (n == 0) throw FormatError("circuit has no gates");
    if (root < 0 || static_cast<std::size_t>(root) >= n) throw FormatError("root id out of range" + gate_ctx(root));

    for (std::size_t i = 0; i < n; ++i) {
        const Gate& g = gates[i];
        const GateId id = static_cast<GateId>(i);
        switch (g.kind) {
        case GateKind::Var:
            if (!g.in.empty()) throw FormatError("var gate must have no inputs" + gate_ctx(id));
            if (g.name.empty()) throw FormatError("var gate requires a name" + gate_ctx(id));
            break;
        case GateKind::Add:
            if (g.in.empty()) throw FormatError("add gate requires at least one input" + gate_ctx(id));
            break;
        case GateKind::Mul:
            if (g.in.size() != 2) throw FormatError("mul gate requires exactly two inputs" + gate_ctx(id));
            break;
        }
        for (GateId in : g.in) {
            if (in < 0 || static_cast<std::size_t>(in) >= n) throw FormatError("dangling input id" + gate_ctx(id));
        }
    }

    Circuit c;
    c.gates_ = std::move(gates);
    c.root_ = root;

    // Iterative DFS from the root: topological order (children first),
    // cycle detection, reachability.
    enum : std::uint8_t { White, Grey, Black };
    std::vector<std::uint8_t> color(n, White);
    std::vector<std::pair<GateId, std::size_t>> stack;
    stack.emplace_back(root, 0);
    color[static_cast<std::size_t>(root)] = Grey;
    c.topo_.reserve(n);
    while (!stack.empty()) {
        auto& [g, next] = stack.back();
        const Gate& gate = c.gates_[static_cast<std::size_t>(g)];
        if (next < gate.in.size()) {
            const GateId child = gate.in[next++];
            if (color[static_cast<std::size_t>(child)] == Grey) {
                throw FormatError("cycle detected" + gate_ctx(child));
            }
            if (color[static_cast<std::size_t>(child)] == White) {
                color[static_cast<std::size_t>(child)] = Grey;
                stack.emplace_back(child, 0);
            }
        } else {
            color[static_cast<std::size_t>(g)] = Black;
            c.topo_.push_back(g);
            stack.pop_back();
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (color[i] != Black) throw FormatError("gate unreachable from root" + gate_ctx(static_cast<GateId>(i)));
    }

    c.var_index_.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const Gate& g = c.gates_[i];
        if (g.kind != GateKind::Var) continue;
        auto [it, inserted] = c.var_lookup_.try_emplace(g.name, static_cast<int>(c.vars_.size()));
        if (inserted) c.vars_.push_back(g.name);
        c.var_index_[i] = it->second;
    }
    return c;
}

int Circuit::var_index_of(const std::string& name) const {
    auto it = var_lookup_.find(name);
    return it == var_lookup_.end() ? -1 : it->second;
}

std::vector<Edge> Circuit::edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < gates_.size(); ++i) {
        const Gate& g = gates_[i];
        for (std::size_t slot = 0; slot < g.in.size(); ++slot) {
            out.push_back(Edge{static_cast<GateId>(i), static_cast<int>(slot), g.in[slot]});
        }
    }
    return out;
}

std::vector<std::vector<Edge>> Circuit::fanout() const {
    std::vector<std::vector<Edge>> out(gates_.size());
    for (const Edge& e : edges()) out[static_cast<std::size_t>(e.child)].push_back(e);
    return out;
}

Circuit parse_circuit(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("circuit file: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("gates") || !doc.contains("root")) {
        throw FormatError("circuit file: expected object with 'gates' and 'root'");
    }
    if (!doc["gates"].is_array() || !doc["root"].is_number_integer()) {
        throw FormatError("circuit file: 'gates' must be an array and 'root' an integer id");
    }

    struct Raw {
        std::int64_t id;
        Gate gate;
        std::vector<std::int64_t> in;
    };
    std::vector<Raw> raws;
    for (const auto& item : doc["gates"]) {
        if (!item.is_object() || !item.contains("id") || !item.contains("op")) {
            throw FormatError("circuit file: each gate needs 'id' and 'op'");
        }
        Raw r;
        if (!item["id"].is_number_integer()) throw FormatError("circuit file: gate id must be an integer");
        r.id = item["id"].get<std::int64_t>();
        if (r.id < 0) throw FormatError("circuit file: gate ids must be non-negative" + gate_ctx(static_cast<GateId>(r.id)));
        const std::string op = item["op"].get<std::string>();
        if (op == "var") {
            r.gate.kind = GateKind::Var;
            if (!item.contains("name") || !item["name"].is_string()) {
                throw FormatError("circuit file: var gate requires 'name'" + gate_ctx(static_cast<GateId>(r.id)));
            }
            r.gate.name = item["name"].get<std::string>();
        } else if (op == "add" || op == "mul") {
            r.gate.kind = op == "add" ? GateKind::Add : GateKind::Mul;
            if (!item.contains("in") || !item["in"].is_array()) {
                throw FormatError("circuit file: gate requires 'in' list" + gate_ctx(static_cast<GateId>(r.id)));
            }
            for (const auto& x : item["in"]) {
                if (!x.is_number_integer()) throw FormatError("circuit file: input ids must be integers");
                r.in.push_back(x.get<std::int64_t>());
            }
        } else {
            throw FormatError("circuit file: unknown op '" + op + "'" + gate_ctx(static_cast<GateId>(r.id)));
        }
        raws.push_back(std::move(r));
    }

    std::sort(raws.begin(), raws.end(), [](const Raw& a, const Raw& b) { return a.id < b.id; });
    std::unordered_map<std::int64_t, GateId> dense;
    for (std::size_t i = 0; i < raws.size(); ++i) {
        if (!dense.try_emplace(raws[i].id, static_cast<GateId>(i)).second) {
            throw FormatError("circuit file: duplicate gate id" + gate_ctx(static_cast<GateId>(raws[i].id)));
        }
    }
    std::vector<Gate> gates;
    gates.reserve(raws.size());
    for (Raw& r : raws) {
        for (std::int64_t in : r.in) {
            auto it = dense.find(in);
            if (it == dense.end()) throw FormatError("circuit file: dangling input id" + gate_ctx(static_cast<GateId>(r.id)));
            r.gate.in.push_back(it->second);
        }
        gates.push_back(std::move(r.gate));
    }
    const std::int64_t root_raw = doc["root"].get<std::int64_t>();
    auto it = dense.find(root_raw);
    if (it == dense.end()) throw FormatError("circuit file: root id not found" + gate_ctx(static_cast<GateId>(root_raw)));
    return Circuit::from_gates(std::move(gates), it->second);
}

std::string serialize_circuit(const Circuit& c) {
    ordered_json doc;
    doc["gates"] = ordered_json::array();
    for (std::size_t i = 0; i < c.gates().size(); ++i) {
        const Gate& g = c.gates()[i];
        ordered_json item;
        item["id"] = i;
        switch (g.kind) {
        case GateKind::Var:
            item["op"] = "var";
            item["name"] = g.name;
            break;
        case GateKind::Add:
            item["op"] = "add";
            item["in"] = g.in;
            break;
        case GateKind::Mul:
            item["op"] = "mul";
            item["in"] = g.in;
            break;
        }
        doc["gates"].push_back(std::move(item));
    }
    doc["root"] = c.root();
    return doc.dump(2) + "\n";
}

CircuitStats circuit_stats(const Circuit& c) {
    CircuitStats st;
    st.s = static_cast<std::int64_t>(c.gates().size());
    st.n = static_cast<std::int64_t>(c.variables().size());

    // Longest downward path from the root equals the root's height; every
    // gate is reachable from the root, so the height DP covers it.
    std::vector<std::int64_t> height(c.gates().size(), 0);
    for (GateId g : c.topo_order()) {
        const Gate& gate = c.gate(g);
        std::int64_t h = 0;
        for (GateId in : gate.in) h = std::max(h, height[static_cast<std::size_t>(in)] + 1);
        height[static_cast<std::size_t>(g)] = h;
    }
    st.t = height[static_cast<std::size_t>(c.root())];

    std::vector<std::int64_t> fanout(c.gates().size(), 0);
    for (const Gate& g : c.gates()) {
        for (GateId in : g.in) ++fanout[static_cast<std::size_t>(in)];
    }
    st.tree_like = true;
    for (std::size_t i = 0; i < c.gates().size(); ++i) {
        if (c.gates()[i].kind != GateKind::Var && fanout[i] > 1) {
            st.tree_like = false;
            break;
        }
    }
    return st;
}

namespace {

ExponentVec merge_exponents(const ExponentVec& a, const ExponentVec& b) {
    ExponentVec out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            const std::int64_t e = std::int64_t{a[i].second} + b[j].second;
            if (e > std::numeric_limits<std::int32_t>::max()) throw BudgetError("monomial exponent overflow");
            out.emplace_back(a[i].first, static_cast<std::int32_t>(e));
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

MonomialMap expand(const Circuit& c, std::size_t cap) {
    if (cap == 0) throw ParameterError("expansion cap must be positive");
    std::vector<MonomialMap> val(c.gates().size());
    for (GateId g : c.topo_order()) {
        const Gate& gate = c.gate(g);
        MonomialMap& out = val[static_cast<std::size_t>(g)];
        switch (gate.kind) {
        case GateKind::Var:
            out.terms[{{static_cast<std::int32_t>(c.var_index(g)), 1}}] = 1;
            break;
        case GateKind::Add:
            for (GateId in : gate.in) {
                for (const auto& [m, coeff] : val[static_cast<std::size_t>(in)].terms) {
                    out.terms[m] += coeff;
                    if (out.terms.size() > cap) throw BudgetError("expansion too large");
                }
            }
            break;
        case GateKind::Mul: {
            const MonomialMap& a = val[static_cast<std::size_t>(gate.in[0])];
            const MonomialMap& b = val[static_cast<std::size_t>(gate.in[1])];
            for (const auto& [ma, ca] : a.terms) {
                for (const auto& [mb, cb] : b.terms) {
                    out.terms[merge_exponents(ma, mb)] += ca * cb;
                    if (out.terms.size() > cap) throw BudgetError("expansion too large");
                }
            }
            break;
        }
        }
    }
    MonomialMap result = std::move(val[static_cast<std::size_t>(c.root())]);
    std::erase_if(result.terms, [](const auto& kv) { return kv.second == 0; });
    return result;
}

bool q_monomial_oracle(const MonomialMap& m, int q, int k) {
    if (q < 2) throw ParameterError("q must be >= 2");
    if (k < 1) throw ParameterError("k must be >= 1");
    for (const auto& [mono, coeff] : m.terms) {
        if (coeff == 0) continue;
        std::int64_t degree = 0;
        bool ok = true;
        for (const auto& [var, e] : mono) {
            if (e < 1 || e > q - 1) {
                ok = false;
                break;
            }
            degree += e;
        }
        if (ok && degree <= k) return true;
    }
    return false;
}

std::string monomials_to_string(const MonomialMap& m, std::span<const std::string> var_names) {
    if (m.terms.empty()) return "0";
    std::string out;
    for (const auto& [mono, coeff] : m.terms) {
        if (!out.empty()) out += " + ";
        out += coeff.str();
        for (const auto& [var, e] : mono) {
            out += "*";
            out += var < static_cast<std::int32_t>(var_names.size()) ? var_names[static_cast<std::size_t>(var)]
                                                                     : ("v" + std::to_string(var));
            if (e != 1) out += "^" + std::to_string(e);
        }
    }
    return out;
}

Circuit unshare(const Circuit& c, std::size_t gate_cap) {
    std::vector<Gate> gates;
    std::unordered_map<std::string, GateId> shared_vars;

    // Clones the sub-DAG below g, sharing only terminals. Explicit stack to
    // survive deep chains; emits children before parents.
    struct Frame {
        GateId g;
        std::size_t next = 0;
        std::vector<GateId> built;
    };

    auto clone = [&](GateId root) -> GateId {
        std::vector<Frame> stack;
        stack.push_back({root, 0, {}});
        GateId result = -1;
        while (!stack.empty()) {
            Frame& f = stack.back();
            const Gate& gate = c.gate(f.g);
            if (gate.kind == GateKind::Var) {
                auto [it, inserted] = shared_vars.try_emplace(gate.name, static_cast<GateId>(gates.size()));
                if (inserted) {
                    gates.push_back(gate);
                    if (gates.size() > gate_cap) throw BudgetError("unshare exceeds gate cap");
                }
                result = it->second;
                stack.pop_back();
                if (!stack.empty()) stack.back().built.push_back(result);
                continue;
            }
            if (f.next < gate.in.size()) {
                stack.push_back({gate.in[f.next++], 0, {}});
                continue;
            }
            Gate copy;
            copy.kind = gate.kind;
            copy.in = f.built;
            result = static_cast<GateId>(gates.size());
            gates.push_back(std::move(copy));
            if (gates.size() > gate_cap) throw BudgetError("unshare exceeds gate cap");
            stack.pop_back();
            if (!stack.empty()) stack.back().built.push_back(result);
        }
        return result;
    };

    const GateId new_root = clone(c.root());
    return Circuit::from_gates(std::move(gates), new_root);
}

} // namespace monomial
