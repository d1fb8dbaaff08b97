#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace semistar {

using json = nlohmann::ordered_json;

/// Outcome record shared by checkers, oracles and the script runner.
struct Report {
    std::string statement;
    json inputs = json::object();
    std::string verdict;  // PASS, FAIL, Unit, NonUnit, Undecided, LE, ...
    json witness = nullptr;
    std::string exactness = "exact";  // exact | lower_bound | approximate
    std::optional<std::uint64_t> seed;
    json bound = nullptr;
    double ms = 0;
    std::string summary;              // e.g. "128 probes, seed 42"
    std::vector<std::string> flags;   // probe-relative, user-asserted, paper-discrepancy, ...
    std::vector<Report> children;

    bool failed() const;
    void flag(const std::string& f);
    bool has_flag(const std::string& f) const;
    json to_json(bool with_timing) const;
    std::string text_line() const;
};

}  // namespace semistar
