#include "monomial/transform.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace monomial {

namespace {

// Shortest prefix in the series "<c>@", "<c><c>@", ... that no existing
// variable name starts with; keeps fresh names collision-free and
// deterministic.
std::string fresh_prefix(char c, const std::vector<std::string>& existing) {
    std::string prefix(1, c);
    prefix += '@';
    for (;;) {
        bool clash = false;
        for (const std::string& name : existing) {
            if (name.rfind(prefix, 0) == 0) {
                clash = true;
                break;
            }
        }
        if (!clash) return prefix;
        prefix.insert(prefix.begin(), c);
    }
}

} // namespace

Circuit duplicate(const Circuit& c) {
    std::vector<Gate> gates = c.gates();

    auto fanout_edges = [&gates](GateId target) {
        std::vector<Edge> out;
        for (std::size_t i = 0; i < gates.size(); ++i) {
            const Gate& g = gates[i];
            for (std::size_t slot = 0; slot < g.in.size(); ++slot) {
                if (g.in[slot] == target) out.push_back(Edge{static_cast<GateId>(i), static_cast<int>(slot), target});
            }
        }
        return out;
    };

    // Bottom-up over the original gates only (copies are born with fan-out
    // one and need no revisit).
    for (GateId g : c.topo_order()) {
        if (c.gate(g).kind != GateKind::Add) continue;
        const std::vector<Edge> edges = fanout_edges(g);
        if (edges.size() <= 1) continue;
        for (std::size_t e = 1; e < edges.size(); ++e) {
            const GateId copy = static_cast<GateId>(gates.size());
            gates.push_back(gates[static_cast<std::size_t>(g)]);
            gates[static_cast<std::size_t>(edges[e].parent)].in[static_cast<std::size_t>(edges[e].slot)] = copy;
        }
    }

    // Terminal splitting: one Var copy per referencing edge.
    const std::size_t gate_count_after_adds = gates.size();
    for (std::size_t i = 0; i < gate_count_after_adds; ++i) {
        if (gates[i].kind != GateKind::Var) continue;
        const std::vector<Edge> edges = fanout_edges(static_cast<GateId>(i));
        for (std::size_t e = 1; e < edges.size(); ++e) {
            const GateId copy = static_cast<GateId>(gates.size());
            gates.push_back(gates[i]);
            gates[static_cast<std::size_t>(edges[e].parent)].in[static_cast<std::size_t>(edges[e].slot)] = copy;
        }
    }

    return Circuit::from_gates(std::move(gates), c.root());
}

TransformOutput attach_z(const Circuit& cstar) {
    const std::string zp = fresh_prefix('z', cstar.variables());

    std::vector<Gate> gates = cstar.gates();
    VarSpace vars;
    vars.x_vars = cstar.variables();

    auto add_z_mul = [&gates, &vars, &zp](GateId below) {
        Gate zvar;
        zvar.kind = GateKind::Var;
        zvar.name = zp + std::to_string(vars.z_vars.size());
        const GateId zid = static_cast<GateId>(gates.size());
        gates.push_back(std::move(zvar));
        vars.z_vars.push_back(gates.back().name);

        Gate mul;
        mul.kind = GateKind::Mul;
        mul.in = {zid, below};
        const GateId mid = static_cast<GateId>(gates.size());
        gates.push_back(std::move(mul));
        return mid;
    };

    for (const Edge& e : cstar.edges()) {
        const GateId mid = add_z_mul(e.child);
        gates[static_cast<std::size_t>(e.parent)].in[static_cast<std::size_t>(e.slot)] = mid;
    }
    const GateId new_root = add_z_mul(cstar.root());

    TransformOutput out{Circuit::from_gates(std::move(gates), new_root), std::move(vars), Stage::CPrime};
    return out;
}

TransformOutput replace_xy(const TransformOutput& cprime, int q) {
    if (q < 2) throw ParameterError("q must be >= 2");

    const Circuit& c = cprime.circuit;
    std::vector<Gate> gates = c.gates();
    VarSpace vars = cprime.vars;
    vars.q = q;

    const std::string zp = fresh_prefix('z', c.variables());
    const std::string yp = fresh_prefix('y', c.variables());

    // Shared y-terminals, one per (x-variable, branch).
    const int n = static_cast<int>(vars.x_vars.size());
    std::vector<GateId> y_gate(static_cast<std::size_t>(n) * static_cast<std::size_t>(q - 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 1; j <= q - 1; ++j) {
            Gate yvar;
            yvar.kind = GateKind::Var;
            yvar.name = yp + std::to_string(i + 1) + "_" + std::to_string(j);
            const GateId yid = static_cast<GateId>(gates.size());
            gates.push_back(std::move(yvar));
            y_gate[static_cast<std::size_t>(i) * static_cast<std::size_t>(q - 1) + static_cast<std::size_t>(j - 1)] =
                yid;
            vars.y_vars.push_back(YVar{i, j, gates[static_cast<std::size_t>(yid)].name});
        }
    }

    std::size_t z_counter = vars.z_vars.size();
    auto fresh_z = [&gates, &vars, &zp, &z_counter]() {
        Gate zvar;
        zvar.kind = GateKind::Var;
        zvar.name = zp + std::to_string(z_counter++);
        const GateId zid = static_cast<GateId>(gates.size());
        gates.push_back(std::move(zvar));
        vars.z_vars.push_back(gates.back().name);
        return zid;
    };

    // Convert each x-terminal occurrence in place so parent slots stay valid.
    const std::size_t original_count = c.gates().size();
    for (std::size_t g = 0; g < original_count; ++g) {
        if (c.gates()[g].kind != GateKind::Var) continue;
        const std::string& name = c.gates()[g].name;
        const auto xit = std::find(vars.x_vars.begin(), vars.x_vars.end(), name);
        if (xit == vars.x_vars.end()) continue; // z-terminal, keep
        const int i = static_cast<int>(xit - vars.x_vars.begin());

        if (q == 2) {
            // Degenerate one-branch Add collapsed: the occurrence becomes the
            // Mul itself.
            const GateId zid = fresh_z();
            Gate& converted = gates[g];
            converted.name.clear();
            converted.kind = GateKind::Mul;
            converted.in = {zid, y_gate[static_cast<std::size_t>(i)]};
        } else {
            std::vector<GateId> branches;
            branches.reserve(static_cast<std::size_t>(q - 1));
            for (int j = 1; j <= q - 1; ++j) {
                const GateId zid = fresh_z();
                Gate mul;
                mul.kind = GateKind::Mul;
                mul.in = {zid, y_gate[static_cast<std::size_t>(i) * static_cast<std::size_t>(q - 1) +
                                      static_cast<std::size_t>(j - 1)]};
                const GateId mid = static_cast<GateId>(gates.size());
                gates.push_back(std::move(mul));
                branches.push_back(mid);
            }
            Gate& converted = gates[g];
            converted.name.clear();
            converted.kind = GateKind::Add;
            converted.in = branches;
        }
    }

    TransformOutput out{Circuit::from_gates(std::move(gates), c.root()), std::move(vars), Stage::CDoublePrime};
    return out;
}

TransformOutput transform_full(const Circuit& c, int q) {
    return replace_xy(attach_z(duplicate(c)), q);
}

Circuit pad_with_fresh_vars(const Circuit& c, int count) {
    if (count < 0) throw ParameterError("pad count must be >= 0");
    if (count == 0) return c;
    const std::string pp = fresh_prefix('p', c.variables());
    std::vector<Gate> gates = c.gates();
    GateId top = c.root();
    for (int i = 0; i < count; ++i) {
        Gate pvar;
        pvar.kind = GateKind::Var;
        pvar.name = pp + std::to_string(i + 1);
        const GateId pid = static_cast<GateId>(gates.size());
        gates.push_back(std::move(pvar));
        Gate mul;
        mul.kind = GateKind::Mul;
        mul.in = {pid, top};
        top = static_cast<GateId>(gates.size());
        gates.push_back(std::move(mul));
    }
    return Circuit::from_gates(std::move(gates), top);
}

std::string serialize_varspace(const VarSpace& v) {
    nlohmann::ordered_json doc;
    doc["q"] = v.q;
    doc["x_vars"] = v.x_vars;
    doc["y_vars"] = nlohmann::ordered_json::array();
    for (const YVar& y : v.y_vars) {
        nlohmann::ordered_json item;
        item["i"] = y.i + 1;
        item["j"] = y.j;
        item["name"] = y.name;
        item["gamma"] = v.gamma(y.i, y.j);
        doc["y_vars"].push_back(std::move(item));
    }
    doc["z_vars"] = v.z_vars;
    return doc.dump(2) + "\n";
}

} // namespace monomial
