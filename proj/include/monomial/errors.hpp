#pragma once

#include <stdexcept>
#include <string>

namespace monomial {

// Bad argument values: out-of-range q/k/d, dimension mismatches, invalid modes.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed input documents (circuit files, graph files, set-system files).
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Work exceeds a configured cap (expansion cap, oracle enumeration budget,
// PHF verification budget, algebra dimension cap).
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Structural preconditions violated, e.g. a non-tree-like circuit handed to
// the deterministic tester.
class StructureError : public std::runtime_error {
public:
    explicit StructureError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace monomial
