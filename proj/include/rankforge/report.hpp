#pragma once

/// Text and JSON renderings of verifier, threshold and Monte-Carlo reports.

#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rankforge/bounds.hpp"
#include "rankforge/montecarlo.hpp"
#include "rankforge/verify.hpp"

namespace rankforge {

namespace detail {

inline nlohmann::json matrix_json(const FMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.field()->format(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string matrix_text(const FMatrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? "; " : "";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + m.field()->format(m(i, j));
    }
    return s + "]";
}

inline std::string fixed(long double x, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << static_cast<double>(x);
    return os.str();
}

} // namespace detail

inline nlohmann::json to_json(const VerifyReport& r) {
    nlohmann::json j;
    j["object"] = r.object;
    j["property"] = r.property;
    j["mode"] = r.mode();
    if (r.sampled) {
        j["seed"] = r.seed;
        j["trials"] = r.trials;
    }
    j["worst"] = r.worst;
    j["threshold"] = r.threshold;
    j["comparison"] = r.comparison;
    j["pass"] = r.pass;
    j["dim"] = r.dim;
    if (r.property == "two-source") j["dim2"] = r.dim2;
    j["checked"] = r.checked;
    nlohmann::json w = nlohmann::json::array();
    for (const auto& m : r.witness) w.push_back(detail::matrix_json(m));
    j["witness"] = w;
    return j;
}

inline std::string to_text(const VerifyReport& r) {
    std::ostringstream os;
    os << "object: " << r.object << "\n";
    os << "property: " << r.property << "\n";
    os << "mode: " << r.mode();
    if (r.sampled) os << " seed=" << r.seed << " trials=" << r.trials;
    os << "\n";
    os << "checked: " << r.checked << "\n";
    os << "dim: " << r.dim;
    if (r.property == "two-source") os << "," << r.dim2;
    os << "\n";
    os << "worst: " << r.worst << " " << r.comparison << " " << r.threshold << "\n";
    for (const auto& m : r.witness) os << "witness: " << detail::matrix_text(m) << "\n";
    os << "result: " << (r.pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

inline nlohmann::json to_json(const ThresholdReport& r) {
    nlohmann::json j;
    j["bound"] = r.name;
    j["inputs"] = r.inputs;
    j["applicable"] = r.applicable;
    if (!r.applicable) {
        j["reason"] = r.reason;
        return j;
    }
    if (r.exact) {
        j["threshold"] = to_string(r.value);
    } else {
        j["threshold_lower"] = static_cast<double>(r.lower);
        j["threshold_upper"] = static_cast<double>(r.upper);
    }
    j["minimal"] = r.minimal;
    return j;
}

/// `<symbol> >= <minimal>` plus the threshold on a second line.
inline std::string to_text(const ThresholdReport& r) {
    if (!r.applicable) return r.name + ": bound inapplicable (" + r.reason + ")\n";
    return r.symbol + " >= " + std::to_string(r.minimal) + "\nthreshold: " + r.threshold_text() + " (" + r.name +
           ", " + r.inputs + ")\n";
}

inline nlohmann::json to_json(const MonteCarloReport& r) {
    nlohmann::json j;
    j["kind"] = r.kind;
    j["params"] = r.params;
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    j["successes"] = r.successes;
    j["frequency"] = static_cast<double>(r.frequency());
    j["stderr"] = static_cast<double>(r.stderr_());
    if (r.exact) j["exact"] = static_cast<double>(*r.exact);
    return j;
}

inline std::string to_text(const MonteCarloReport& r) {
    std::ostringstream os;
    os << r.kind << " " << r.params << " seed=" << r.seed << "\n";
    os << "successes: " << r.successes << "/" << r.trials << "\n";
    os << "frequency: " << detail::fixed(r.frequency(), 6) << " stderr: " << detail::fixed(r.stderr_(), 6) << "\n";
    if (r.exact) os << "exact: " << detail::fixed(*r.exact, 6) << "\n";
    return os.str();
}

inline nlohmann::json to_json(const SubspaceCountReport& r) {
    auto j = to_json(r.sample);
    j["distinct"] = r.distinct;
    j["exact_count"] = r.exact;
    j["bound"] = static_cast<double>(r.bound);
    return j;
}

inline std::string to_text(const SubspaceCountReport& r) {
    return to_text(r.sample) + "distinct: " + std::to_string(r.distinct) + " exact: " + std::to_string(r.exact) +
           " bound: " + detail::fixed(r.bound, 3) + "\n";
}

} // namespace rankforge
