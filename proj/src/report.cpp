#include "semistar/report.hpp"

#include <algorithm>

namespace semistar {

bool Report::failed() const
{
    if (verdict == "FAIL" || verdict == "ERROR") return true;
    return std::any_of(children.begin(), children.end(), [](const Report& r) { return r.failed(); });
}

void Report::flag(const std::string& f)
{
    if (!has_flag(f)) flags.push_back(f);
}

bool Report::has_flag(const std::string& f) const { return std::find(flags.begin(), flags.end(), f) != flags.end(); }

json Report::to_json(bool with_timing) const
{
    json j;
    j["statement"] = statement;
    j["inputs"] = inputs;
    j["verdict"] = verdict;
    j["witness"] = witness;
    j["exactness"] = exactness;
    j["seed"] = seed ? json(*seed) : json(nullptr);
    j["bound"] = bound;
    j["ms"] = with_timing ? json(ms) : json(0);
    if (!summary.empty()) j["summary"] = summary;
    if (!flags.empty()) j["flags"] = flags;
    if (!children.empty()) {
        j["children"] = json::array();
        for (auto& c : children) j["children"].push_back(c.to_json(with_timing));
    }
    return j;
}

std::string Report::text_line() const
{
    std::string s = verdict + " " + statement;
    if (!summary.empty()) s += " (" + summary + ")";
    for (auto& f : flags) s += " [" + f + "]";
    return s;
}

}  // namespace semistar
