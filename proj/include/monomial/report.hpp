#pragma once

#include "monomial/rtm.hpp"

#include <string>

namespace monomial {

const char* mode_name(TestMode m);

// Structured (JSON) rendering. Timings are opt-in so that identical config
// and inputs produce byte-identical documents.
std::string report_to_json(const TestReport& r, bool include_timings = false);

// Human-readable rendering, always includes timings.
std::string report_to_text(const TestReport& r);

} // namespace monomial
