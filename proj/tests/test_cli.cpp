// End-to-end checks of the command line tool via popen.
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

namespace {

struct CmdResult {
    int code = -1;
    std::string out;
};

CmdResult run_cli(const std::string& args) {
    std::string cmd = std::string(ZNPOLY_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult res;
    char buf[4096];
    while (fgets(buf, sizeof buf, pipe)) res.out += buf;
    int status = pclose(pipe);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string temp_file(const std::string& name, const std::string& content) {
    std::string path = "/tmp/" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("kempner subcommand") {
    CmdResult r = run_cli("kempner 12");
    CHECK(r.code == 0);
    CHECK(r.out == "4\n");
    CHECK(run_cli("kempner 9797").out == "101\n");
}

TEST_CASE("generators subcommand lists the ordered set") {
    CmdResult r = run_cli("generators 12");
    CHECK(r.code == 0);
    CHECK(r.out ==
          "p=3 j=0 k=0: 4,0,0,4,0,0,4,0,0,4,0,0\n"
          "p=3 j=0 k=1: 0,4,0,0,4,0,0,4,0,0,4,0\n"
          "p=3 j=0 k=2: 0,0,4,0,0,4,0,0,4,0,0,4\n"
          "p=2 j=0 k=0: 3,0,3,0,3,0,3,0,3,0,3,0\n"
          "p=2 j=0 k=1: 0,3,0,3,0,3,0,3,0,3,0,3\n"
          "p=2 j=1 k=0: 0,0,6,0,0,0,6,0,0,0,6,0\n"
          "p=2 j=1 k=1: 0,0,0,6,0,0,0,6,0,0,0,6\n");
}

TEST_CASE("decide accepts with a reduced witness") {
    CmdResult r = run_cli("decide --n 12 --values 0,1,4,9,4,1,0,1,4,9,4,1");
    CHECK(r.code == 0);
    CHECK(r.out == "polynomial\nwitness: 6*X + X^2 + 6*X^3\n");

    CmdResult quiet = run_cli("decide --n 12 --values 0,1,4,9,4,1,0,1,4,9,4,1 --no-witness");
    CHECK(quiet.code == 0);
    CHECK(quiet.out == "polynomial\n");
}

TEST_CASE("decide reduces the input entries mod n") {
    CmdResult r = run_cli("decide --n 4 --values 4,5,6,7");  // the identity function
    CHECK(r.code == 0);
}

TEST_CASE("decide rejects with a congruence witness") {
    CmdResult r = run_cli("decide --n 12 --values 0,1,0,0,0,0,0,0,0,0,0,0");
    CHECK(r.code == 1);
    CHECK(r.out == "not polynomial\nstage: precheck\ncongruence failure: p=2 j=1 ell=1\n");
}

TEST_CASE("decide reports the tail verify stage") {
    CmdResult r = run_cli("decide --n 9 --values 0,0,0,3,0,0,0,0,0");
    CHECK(r.code == 1);
    CHECK(r.out.find("stage: tail-verify") != std::string::npos);
    CmdResult t = run_cli("decide --n 9 --values 0,0,0,3,0,0,0,0,0 --truncated-verify");
    CHECK(t.code == 1);
}

TEST_CASE("decide usage errors exit with 2") {
    CHECK(run_cli("decide --n 12 --values 0,1").code == 2);   // wrong length
    CHECK(run_cli("decide --n 12").code == 2);                // no values at all
    CHECK(run_cli("decide --n 12 --values 0,x,0").code == 2); // bad token
    CHECK(run_cli("decide --badflag").code == 2);
    CHECK(run_cli("nonsense").code == 2);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("decide --help").code == 0);
}

TEST_CASE("decide reads value files with comments") {
    std::string path = temp_file("znpoly_cli_values.txt",
                                 "# squares over Z_12\n0\n1\n4\n9\n4\n1\n"
                                 "0\n1\n4\n9\n4\n1  # tail repeats\n");
    CmdResult r = run_cli("decide --n 12 --file " + path);
    CHECK(r.code == 0);
    std::remove(path.c_str());
}

TEST_CASE("decide json output carries the decision") {
    CmdResult r = run_cli("decide --n 12 --values 0,1,4,9,4,1,0,1,4,9,4,1 --json");
    CHECK(r.code == 0);
    nlohmann::json out = nlohmann::json::parse(r.out);
    CHECK(out["n"] == 12);
    CHECK(out["verdict"] == "polynomial");
    CHECK(out["witness"] == "6*X + X^2 + 6*X^3");
    CHECK(out["witness_degree"] == 3);
    CHECK(out["coefficients"].size() == 7);
    CHECK(out["counters"]["solve"]["pivots"].get<int>() > 0);

    CmdResult bad = run_cli("decide --n 12 --values 0,1,0,0,0,0,0,0,0,0,0,0 --json");
    CHECK(bad.code == 1);
    nlohmann::json rej = nlohmann::json::parse(bad.out);
    CHECK(rej["verdict"] == "not-polynomial");
    CHECK(rej["stage"] == "precheck");
    CHECK(rej["congruence_failure"]["p"] == 2);
}

TEST_CASE("count subcommand") {
    CHECK(run_cli("count 4").out == "64\n");
    CHECK(run_cli("count 6").out == "108\n");
    CmdResult guarded = run_cli("count 32");  // 32^8 tuples trip the budget
    CHECK(guarded.code == 3);
    CHECK(guarded.out.find("error:") != std::string::npos);
}

TEST_CASE("oracle subcommand") {
    CHECK(run_cli("oracle --n 4 --values 0,1,0,1").code == 0);
    CmdResult r = run_cli("oracle --n 4 --values 0,1,0,0");
    CHECK(r.code == 1);
    CHECK(r.out == "not polynomial\n");
}

TEST_CASE("decide-multi on the product function") {
    // values a*b mod 4 in row-major order
    std::string vals;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) vals += std::to_string(a * b % 4) + (a == 3 && b == 3 ? "" : ",");
    CmdResult r = run_cli("decide-multi --n 4 --m 2 --values " + vals);
    CHECK(r.code == 0);
    CHECK(r.out.find("polynomial\ncoefficients:") == 0);

    CmdResult j = run_cli("decide-multi --n 4 --m 2 --json --values " + vals);
    nlohmann::json out = nlohmann::json::parse(j.out);
    CHECK(out["verdict"] == "polynomial");
    CHECK(out["coefficients"].size() == 12);
}

TEST_CASE("decide-multi reads grid tables") {
    std::string path = temp_file("znpoly_cli_table.txt",
                                 "# delta at the origin over Z_6\n"
                                 "1 0 0 0 0 0\n0 0 0 0 0 0\n0 0 0 0 0 0\n"
                                 "0 0 0 0 0 0\n0 0 0 0 0 0\n0 0 0 0 0 0\n");
    CmdResult r = run_cli("decide-multi --n 6 --m 2 --table " + path);
    CHECK(r.code == 1);
    CHECK(r.out.find("congruence failure: p=2 index=2 rep=0") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("bench emits csv") {
    CmdResult r = run_cli("bench --n 12 --trials 3 --seed 2");
    CHECK(r.code == 0);
    std::size_t lines = 0;
    for (char c : r.out) lines += c == '\n';
    CHECK(lines == 1 + 3 * 6 + 4);  // header, stage rows, mean rows
    CHECK(r.out.find("n,factorization,mu,N,sum_e,algo,stage,mults,adds,time_ns,verdict\n") == 0);
    CHECK(r.out.find("12,2^2*3,4,7,3,generator,") != std::string::npos);

    CmdResult summary = run_cli("bench --n 12 --trials 3 --seed 2 --no-detail");
    std::size_t slines = 0;
    for (char c : summary.out) slines += c == '\n';
    CHECK(slines == 1 + 4);
}

TEST_CASE("bench json mode") {
    CmdResult r = run_cli("bench --n 12 --trials 2 --seed 7 --json --inputs mixed");
    CHECK(r.code == 0);
    nlohmann::json out = nlohmann::json::parse(r.out);
    REQUIRE(out.is_array());
    REQUIRE(out.size() == 1);
    CHECK(out[0]["n"] == 12);
    CHECK(out[0]["verdicts_agree"] == true);
    CHECK(out[0]["trials"].size() == 2);
    CHECK(run_cli("bench --n 12 --trials 2 --inputs bogus").code == 2);
}
