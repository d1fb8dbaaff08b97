#include "semistar/core.hpp"
#include "semistar/script.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"semistar: exact semistar operations on integral domains"};
    app.require_subcommand(1);
    auto* run = app.add_subcommand("run", "run a script");
    std::string script, report_path, format = "text";
    std::optional<std::uint64_t> seed;
    std::optional<int> height, degree;
    unsigned jobs = 1;
    bool strict = false, timing = false;
    run->add_option("script", script, "script file")->required();
    run->add_option("--report", report_path, "write the report to this file");
    run->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    run->add_option("--seed", seed, "probe seed (overrides the script)");
    run->add_option("--bound-height", height, "witness search height bound");
    run->add_option("--bound-degree", degree, "witness search degree bound");
    run->add_option("--jobs", jobs, "parallel checks")->check(CLI::PositiveNumber);
    run->add_flag("--strict", strict, "stop at the first error");
    run->add_flag("--timing", timing, "record wall time per statement");
    CLI11_PARSE(app, argc, argv);

    semistar::RunOptions o;
    o.seed = seed;
    o.bound_height = height;
    o.bound_degree = degree;
    o.jobs = jobs;
    o.strict = strict;
    o.timing = timing;
    semistar::RunResult res;
    try {
        res = semistar::run_script(script, o);
    } catch (const semistar::Error& e) {
        std::cerr << e.code() << ": " << e.what() << "\n";
        return 2;
    }
    std::string body = format == "json" ? res.to_json(res.timing).dump(2) + "\n" : res.text();
    if (report_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(report_path);
        if (!f) {
            std::cerr << "IoError: cannot write " << report_path << "\n";
            return 2;
        }
        f << body;
        std::cout << res.text();
    }
    return res.failed() ? 1 : 0;
}
