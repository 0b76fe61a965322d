#include "monomial/report.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace monomial {

const char* mode_name(TestMode m) {
    switch (m) {
    case TestMode::Randomized: return "randomized";
    case TestMode::Deterministic: return "deterministic";
    case TestMode::Oracle: return "oracle";
    }
    return "?";
}

std::string report_to_json(const TestReport& r, bool include_timings) {
    nlohmann::ordered_json doc;
    doc["answer"] = r.yes ? "yes" : "no";
    doc["mode"] = mode_name(r.mode);
    doc["q"] = r.q;
    doc["k"] = r.k;
    doc["d"] = r.d;
    doc["s"] = r.s;
    doc["t"] = r.t;
    doc["tree_like"] = r.tree_like;
    doc["trials_run"] = r.trials_run;
    doc["successes"] = r.successes;
    doc["seed"] = r.seed;
    std::string flags;
    flags.reserve(r.trial_flags.size());
    for (std::uint8_t f : r.trial_flags) flags += f ? '1' : '0';
    doc["trial_flags"] = flags;
    if (include_timings) {
        nlohmann::ordered_json timings;
        timings["transform"] = r.elapsed_ms.transform;
        timings["setup"] = r.elapsed_ms.setup;
        timings["decide"] = r.elapsed_ms.decide;
        timings["total"] = r.elapsed_ms.total;
        doc["elapsed_ms"] = std::move(timings);
    }
    return doc.dump(2) + "\n";
}

std::string report_to_text(const TestReport& r) {
    std::ostringstream out;
    out << "answer:      " << (r.yes ? "yes" : "no") << "\n"
        << "mode:        " << mode_name(r.mode) << "\n"
        << "q, k, d:     " << r.q << ", " << r.k << ", " << r.d << "\n"
        << "s, t:        " << r.s << ", " << r.t << "\n"
        << "tree_like:   " << (r.tree_like ? "true" : "false") << "\n"
        << "trials:      " << r.successes << "/" << r.trials_run << " nonzero\n"
        << "seed:        " << r.seed << "\n";
    out.setf(std::ios::fixed);
    out.precision(2);
    out << "elapsed_ms:  transform " << r.elapsed_ms.transform << ", setup " << r.elapsed_ms.setup << ", decide "
        << r.elapsed_ms.decide << ", total " << r.elapsed_ms.total << "\n";
    return out.str();
}

} // namespace monomial
