#include "doctest.h"
#include "semistar/core.hpp"
#include "semistar/script.hpp"

using namespace semistar;

TEST_CASE("empty script yields an empty report")
{
    RunResult r = run_script_text("# nothing\n\n");
    CHECK(r.reports.empty());
    CHECK_FALSE(r.failed());
    json j = r.to_json(false);
    CHECK(j["schema"] == "semistar-report/1");
    CHECK(j["statements"].empty());
}

TEST_CASE("undefined names are reported with their line")
{
    RunResult r = run_script_text("domain D = ZZ\n\neval closure Q in D\n");
    REQUIRE(r.reports.size() == 1);
    CHECK(r.reports[0].verdict == "ERROR");
    CHECK(r.reports[0].summary.find("line 3") != std::string::npos);
    CHECK(r.failed());
}

TEST_CASE("expectations turn values into verdicts")
{
    RunResult r = run_script_text("domain D = ZZ[Y]\npoly f = Y*X+3\neval content f expect ideal(3, Y)\neval content f expect ideal(2)\n");
    REQUIRE(r.reports.size() == 2);
    CHECK(r.reports[0].verdict == "PASS");
    CHECK(r.reports[1].verdict == "FAIL");
    CHECK(r.failed());
}

TEST_CASE("unit verdict in the JSON report")
{
    RunResult r = run_script_text("domain D = ZZ[Y]\nprime P = (2) in D\npoly f = Y*X+3\neval unit f d P\n");
    json j = r.to_json(false);
    REQUIRE(j["statements"].size() == 1);
    CHECK(j["statements"][0]["verdict"] == "NonUnit");
}

TEST_CASE("parallel runs match sequential runs")
{
    std::string s = "set seed=7\ndomain D = ZZ\nstar s = spectral((2),(3))\nset probes=8\ncheck axioms s\nsuite pair-identity pairs 20\n";
    RunOptions par;
    par.jobs = 3;
    CHECK(run_script_text(s).to_json(false) == run_script_text(s, par).to_json(false));
    CHECK(run_script_text(s).to_json(false) == run_script_text(s).to_json(false));
}

TEST_CASE("strict mode stops at the first error")
{
    RunOptions o;
    o.strict = true;
    RunResult r = run_script_text("domain D = ZZ\neval inverse ideal(0)\neval inverse ideal(2)\n", o);
    CHECK(r.aborted);
    CHECK(r.failed());
}
