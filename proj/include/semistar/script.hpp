#pragma once

#include "semistar/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace semistar {

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<int> bound_height;
    std::optional<int> bound_degree;
    unsigned jobs = 1;
    bool strict = false;
    bool timing = false;
};

struct RunResult {
    std::vector<Report> reports;
    bool aborted = false;
    bool timing = false;   // set by the options or by the script
    bool failed() const;
    json to_json(bool with_timing) const;
    std::string text() const;
};

RunResult run_script_text(const std::string& text, const RunOptions& opts = {});
RunResult run_script(const std::string& path, const RunOptions& opts = {});

}  // namespace semistar
