#pragma once

#include "monomial/circuit.hpp"

#include <string>
#include <vector>

namespace monomial {

enum class Stage { CStar, CPrime, CDoublePrime };

struct YVar {
    int i = 0; // x-variable index, 0-based into VarSpace::x_vars
    int j = 0; // branch index, 1-based in [1, q-1]
    std::string name;
};

// Bookkeeping for the transformed circuit's variables. z-variables are in
// bijection with the edges of the stage-2/3 circuit plus the root-output
// slot; each occurs in the circuit exactly once. gamma maps (i, j) onto
// {1, ..., (q-1)*n} injectively.
struct VarSpace {
    std::vector<std::string> x_vars;
    std::vector<YVar> y_vars;
    std::vector<std::string> z_vars;
    int q = 0;

    // i 0-based, j 1-based; result 1-based.
    int gamma(int i, int j) const { return i * (q - 1) + j; }
};

struct TransformOutput {
    Circuit circuit;
    VarSpace vars;
    Stage stage = Stage::CStar;
};

// Single bottom-up pass: each Add gate with fan-out l > 1 becomes l copies
// sharing its inputs, one per former output edge; then every variable
// terminal is split per referencing edge. Computes the identical polynomial.
Circuit duplicate(const Circuit& c);

// Interposes a Mul with a fresh z terminal on every edge and one extra Mul
// with a fresh z above the root. Output is stage C'.
TransformOutput attach_z(const Circuit& cstar);

// Replaces every x-terminal occurrence by a weighted linear sum of q-1
// y-variables, each branch j being Mul(fresh z, y_ij). For q = 2 the
// one-branch Add is collapsed to the single Mul. Output is stage C''.
TransformOutput replace_xy(const TransformOutput& cprime, int q);

// duplicate + attach_z + replace_xy.
TransformOutput transform_full(const Circuit& c, int q);

// Optional pre-pass: multiplies the root by `count` fresh variables (used to
// raise the minimum degree before exact-degree style queries).
Circuit pad_with_fresh_vars(const Circuit& c, int count);

// Sidecar serialization of the variable tables plus gamma.
std::string serialize_varspace(const VarSpace& v);

} // namespace monomial
