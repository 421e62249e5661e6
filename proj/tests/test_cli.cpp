// End-to-end checks of the breg executable: output values, seed echoing,
// exit codes, and byte-level determinism.  The binary path comes from the
// build system via BREG_CLI_PATH.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

#ifndef BREG_CLI_PATH
#error "BREG_CLI_PATH must point at the breg executable"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(BREG_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return RunResult{WEXITSTATUS(status), out};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << content;
}

struct Workspace {
    Workspace() {
        write_file("/tmp/breg_cli_x.csv", "0.5 0.5\n");
        write_file("/tmp/breg_cli_y.csv", "0.25 0.75\n");
        write_file("/tmp/breg_cli_src.csv", "w,x1\n0.5,0\n0.3,1\n0.2,2\n");
        write_file("/tmp/breg_cli_dst.csv", "w,x1\n0.2,0\n0.3,1\n0.5,2\n");
        write_file("/tmp/breg_cli_p.csv", "0.25 0.25 0.25 0.25\n");
        write_file("/tmp/breg_cli_counts.csv", "500 500 500 500\n");
        write_file("/tmp/breg_cli_losses.csv", "0.9,0.1,0.4,0.2\n0.2,0.8,0.3,0.9\n");
        write_file("/tmp/breg_cli_base.csv", "x1\n-0.5\n0.5\n");
        write_file("/tmp/breg_cli_target.csv", "w,x1\n0.5,0\n0.5,1\n");
    }
};

const Workspace& workspace() {
    static Workspace w;
    return w;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("div prints 12 significant digits of the divergence") {
    workspace();
    const auto r = run_cli(
        "div --generator neg_entropy --x /tmp/breg_cli_x.csv --y /tmp/breg_cli_y.csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "0.143841036226\n");
}

TEST_CASE("ot solves the pinned instance exactly") {
    workspace();
    const auto r = run_cli(
        "ot --cost lp:2 --src /tmp/breg_cli_src.csv --dst /tmp/breg_cli_dst.csv --method exact");
    CHECK(r.exit_code == 0);
    CHECK(std::abs(std::stod(r.output) - 0.6) <= 1e-12);

    const auto sinkhorn = run_cli(
        "ot --cost lp:2 --src /tmp/breg_cli_src.csv --dst /tmp/breg_cli_dst.csv "
        "--method sinkhorn --epsilon 0.001 --max-iter 200000");
    CHECK(sinkhorn.exit_code == 0);
    const double sc = std::stod(sinkhorn.output);
    CHECK(sc >= 0.6 - 1e-9);
    CHECK(sc <= 0.61);

    const auto breg_cost = run_cli(
        "ot --cost bregman:squared_l2 --src /tmp/breg_cli_src.csv --dst /tmp/breg_cli_dst.csv");
    CHECK(breg_cost.exit_code == 0);
    CHECK(std::abs(std::stod(breg_cost.output) - 0.6) <= 1e-12);
}

TEST_CASE("asymptotics echoes the seed and is byte-deterministic") {
    workspace();
    const std::string cmd =
        "asymptotics --generator neg_entropy --p /tmp/breg_cli_p.csv --alpha 0.95 "
        "--K 5000 --seed 11";
    const auto a = run_cli(cmd);
    const auto b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.rfind("# seed=11\n", 0) == 0);
    CHECK(a.output.find("r,3") != std::string::npos);

    const auto other_seed = run_cli(
        "asymptotics --generator neg_entropy --p /tmp/breg_cli_p.csv --alpha 0.95 "
        "--K 5000 --seed 12");
    CHECK(other_seed.output != a.output);
}

TEST_CASE("bound prints the closed form") {
    const auto r = run_cli(
        "bound --generator squared_l2 --direction z --n 100 --d 2 --eps 0.5 --form mcdiarmid");
    CHECK(r.exit_code == 0);
    CHECK(std::abs(std::stod(r.output) - std::exp(-100.0 * 0.25 / 16.0)) <= 1e-12);
}

TEST_CASE("tailcheck emits the documented CSV schema") {
    workspace();
    const auto r = run_cli(
        "tailcheck --generator squared_l2 --direction z --p /tmp/breg_cli_p.csv --n 100 "
        "--M 2000 --seed 5 --eps-grid 0.05:0.05:0.2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("# seed=5\n", 0) == 0);
    CHECK(r.output.find("eps,freq,paper_bound,mcdiarmid_bound\n") != std::string::npos);
    // four grid rows
    int lines = 0;
    for (char c : r.output)
        if (c == '\n') ++lines;
    CHECK(lines == 6);
}

TEST_CASE("validate-law writes the statistic column") {
    workspace();
    const auto r = run_cli(
        "validate-law --generator neg_entropy --p /tmp/breg_cli_p.csv --n 500 --M 1000 "
        "--seed 3 --limit-draws 20000");
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("# seed=3\n", 0) == 0);
    CHECK(r.output.find("ks,") != std::string::npos);
    CHECK(r.output.find("statistic\n") != std::string::npos);
}

TEST_CASE("ambiguity build emits JSON consumable by drso") {
    workspace();
    const auto built = run_cli(
        "ambiguity build --mode asymptotic --generator neg_entropy "
        "--counts /tmp/breg_cli_counts.csv --alpha 0.95 --K 5000 --seed 42 "
        "--output /tmp/breg_cli_set.json");
    CHECK(built.exit_code == 0);

    std::ifstream in("/tmp/breg_cli_set.json");
    REQUIRE(in.good());
    const auto j = nlohmann::json::parse(in);
    CHECK(j.at("generator").at("name") == "neg_entropy");
    CHECK(j.at("n") == 2000);
    CHECK(j.at("d") == 4);
    CHECK(j.at("seed") == 42);
    CHECK(j.at("radius").get<double>() > 0.0);
    CHECK(j.at("center").size() == 4);

    const auto drso = run_cli(
        "drso --losses /tmp/breg_cli_losses.csv --set /tmp/breg_cli_set.json");
    CHECK(drso.exit_code == 0);
    CHECK(drso.output.find("action,worst_case_value\n") != std::string::npos);
    CHECK(drso.output.find("best_action,") != std::string::npos);

    const auto conc = run_cli(
        "ambiguity build --mode concentration --generator squared_l2 "
        "--counts /tmp/breg_cli_counts.csv --delta-conf 0.05 --form mcdiarmid");
    CHECK(conc.exit_code == 0);
    const auto cj = nlohmann::json::parse(conc.output);
    CHECK(cj.at("provenance").at("mode") == "concentration");
}

TEST_CASE("learn emits a trace with the final parameters") {
    workspace();
    const auto r = run_cli(
        "learn --generator squared_l2 --target /tmp/breg_cli_target.csv "
        "--base /tmp/breg_cli_base.csv --theta0 0.3,1.0 --steps 60 --lr 0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("step,objective,loc1,scale1\n", 0) == 0);
    // last line carries the fitted parameters near (0.5, 1.0)
    const auto last_nl = r.output.find_last_of('\n', r.output.size() - 2);
    const std::string last = r.output.substr(last_nl + 1);
    double step, obj, loc, scale;
    REQUIRE(std::sscanf(last.c_str(), "%lf,%lf,%lf,%lf", &step, &obj, &loc, &scale) == 4);
    CHECK(obj <= 1e-6);
    CHECK(std::abs(loc - 0.5) <= 1e-3);
    CHECK(std::abs(scale - 1.0) <= 1e-3);
}

TEST_CASE("exit codes distinguish usage errors") {
    CHECK(run_cli("no_such_subcommand").exit_code == 2);
    CHECK(run_cli("div --x /nonexistent.csv --y /nonexistent.csv").exit_code == 2);
    CHECK(run_cli("div").exit_code == 2);              // missing required flags
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("ot --help").exit_code == 0);
    workspace();
    CHECK(run_cli("div --generator nope --x /tmp/breg_cli_x.csv --y /tmp/breg_cli_y.csv")
              .exit_code == 2);
    // extraneous positional arguments are rejected
    CHECK(run_cli("div --generator neg_entropy --x /tmp/breg_cli_x.csv --y /tmp/breg_cli_y.csv "
                  "leftover")
              .exit_code == 2);
}

TEST_CASE("validate --quick is deterministic and carries the full schema") {
    const auto a = run_cli("validate --quick --seed 42 --report /tmp/breg_cli_report.json");
    const auto b = run_cli("validate --quick --seed 42");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(a.output == b.output);

    const auto j = nlohmann::json::parse(a.output);
    CHECK(j.at("suite") == "quick");
    CHECK(j.at("seed") == 42);
    CHECK(j.at("passed") == true);
    CHECK(j.at("checks").size() >= 12);
    // canonical stdout report carries no wall times
    CHECK_FALSE(j.at("checks").at(0).contains("seconds"));

    std::ifstream in("/tmp/breg_cli_report.json");
    REQUIRE(in.good());
    const auto file_report = nlohmann::json::parse(in);
    CHECK(file_report.at("checks").at(0).contains("seconds"));
    CHECK(file_report.at("checks").size() == j.at("checks").size());
}

}  // TEST_SUITE
