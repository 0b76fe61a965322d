#pragma once

#include <iosfwd>

namespace monomial::cli {

// Runs the command line given argv-style arguments (argv[0] is the program
// name). Writes reports to `out` and diagnostics to `err`. Exit status: 0 on
// success (the answer lives in the report), 2 on usage errors, 3 on input
// format errors, 4 on budget/cap errors. With --exit-status, a successful
// run maps the answer to 0 (yes) or 3 (no).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace monomial::cli
