#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(ORBINDEX_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult r{-1, {}};
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string model(const std::string& name) {
    return std::string(ORBINDEX_MODEL_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("star command canonical output") {
    auto r = run("star \"p1\" \"q1\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "h + p1*q1\n");
    CHECK(run("star \"1\" \"q1\"").out == "q1\n");
    CHECK(run("star \"star(p1, q1)\" \"1\"").out == "h + p1*q1\n");
    CHECK(run("star \"p1 + 2/3\" \"q2^2\"").out == "2/3*q2^2 + p1*q2^2\n");
    CHECK(run("star \"p1 + 2/3\" \"q1^2\"").out == "2*h*q1 + 2/3*q1^2 + p1*q1^2\n");
}

TEST_CASE("star exit codes") {
    CHECK(run("star \"p1 +\" \"q1\"").exit_code == 2);
    CHECK(run("star \"(p1\" \"q1\"").exit_code == 2);
    CHECK(run("star \"p1\" \"z1\"").exit_code == 3);
}

TEST_CASE("verify exit codes and output") {
    auto r = run("verify local-rr --k 1 --lambda \"zeta(3)\" --N 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS local-rr") != std::string::npos);
    CHECK(run("verify local-rr --k 5").exit_code == 4);
    CHECK(run("verify cocycle --k 3").exit_code == 4);
    CHECK(run("verify cocycle --k 1 --seed 7 --count 3").exit_code == 0);
    CHECK(run("verify trace --lambda \"1\" --count 1").exit_code == 3);
}

TEST_CASE("index command") {
    CHECK(run("index " + model("football_z2.model") + " --kawasaki").out == "1\n");
    CHECK(run("index " + model("pt_z3_regular.model") + " --kawasaki").out == "1\n");
    CHECK(run("index " + model("empty.model")).out == "0\n");
    CHECK(run("index " + model("football_z2_deformed.model") + " --hbar").out == "-h^-1 + 1\n");
    auto with_oracle = run("index " + model("t2_z2.model") + " --kawasaki --oracle");
    CHECK(with_oracle.exit_code == 0);
    CHECK(with_oracle.out.find("oracle agrees") != std::string::npos);
    CHECK(run("index /nonexistent.model").exit_code == 2);
}

TEST_CASE("structured output is valid and stable") {
    auto r = run("index " + model("football_z3.model") + " --kawasaki --format structured");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"value\": \"1\"") != std::string::npos);
}

TEST_CASE("byte-identical output across runs and thread counts") {
    std::vector<std::string> invocations = {
        "star \"p1^2 + q1\" \"star(q1, p1)\"",
        "verify cocycle --k 1 --seed 11 --count 6",
        "verify trace --lambda \"zeta(6)\" --seed 3 --count 8",
        "verify local-rr --k 1 --lambda \"zeta(4)\" --N 2",
        "index " + model("football_z4.model") + " --kawasaki --oracle",
    };
    for (const auto& inv : invocations) {
        auto first = run(inv);
        auto second = run(inv);
        REQUIRE(first.exit_code == second.exit_code);
        REQUIRE(first.out == second.out);
        auto threaded = run(inv + " --threads 2");
        auto threaded4 = run(inv + " --threads 4");
        REQUIRE(threaded.out == first.out);
        REQUIRE(threaded4.out == first.out);
    }
}
