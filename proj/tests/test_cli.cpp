#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CLASSCHAIN_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult r{-1, {}};
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("sample: determinism and validation") {
    const std::string cmd = "sample --flavor sp --q 3 --u 1/2 --count 5 --seed 7";
    const auto first = run_cli(cmd);
    CHECK(first.exit_code == 0);
    const auto second = run_cli(cmd);
    CHECK(first.output == second.output);

    // Header record plus one JSON-lines partition per sample.
    int lines = 0;
    size_t pos = 0;
    while ((pos = first.output.find('\n', pos)) != std::string::npos) {
        ++lines;
        ++pos;
    }
    CHECK(lines == 6);
    CHECK(first.output.find("\"seed\":7") != std::string::npos);

    CHECK(run_cli("sample --flavor sp --u 3/2 --count 1").exit_code == 2);
    CHECK(run_cli("sample --flavor gl --count 1").exit_code == 2);
    CHECK(run_cli("sample").exit_code == 2);

    const auto csv = run_cli("sample --flavor o --q 3 --u 1/2 --count 3 --seed 1 --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.output.rfind("# {", 0) == 0);
}

TEST_CASE("pmf: certified table") {
    const auto r = run_cli("pmf --flavor sp --q 3 --u 1/2 --max-parts 6");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["rows"].size() == 7);
    CHECK(j["rows"][0]["pprime"] == "1");
    CHECK(j.contains("residual_hi"));

    const auto r2 = run_cli("pmf --flavor sp --q 3 --u 1/2 --max-size 6");
    CHECK(r2.exit_code == 0);
    const auto j2 = nlohmann::json::parse(r2.output);
    CHECK(j2["partitions"].size() > 0);

    CHECK(run_cli("pmf --flavor sp").exit_code == 2);
}

TEST_CASE("verify: suites and exit codes") {
    CHECK(run_cli("verify --suite rowsums --q 9 --u 1 --a-max 12").exit_code == 0);
    CHECK(run_cli("verify --suite chainproduct --q 3 --u 1/2 --size-max 7").exit_code == 0);
    CHECK(run_cli("verify --suite cauchy --q 3 --u 1/2").exit_code == 0);
    CHECK(run_cli("verify --suite nosuch").exit_code == 2);

    const auto lump = run_cli("verify --suite lumping --q 3 --u 1/2 --size-max 6");
    CHECK(lump.exit_code == 0);
    const auto j = nlohmann::json::parse(lump.output);
    CHECK(j["pass"] == true);
    REQUIRE(j.contains("warnings"));  // displayed-branch deviations at odd mult >= 3
    CHECK(j["warnings"].size() >= 2);
}

TEST_CASE("oracle: statistics report and comparisons") {
    const auto r = run_cli("oracle --group sp --n 1 --p 3 --compare");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["results"][0]["order"] == 24);
    CHECK(j["results"][0]["unipotent"] == 9);
    CHECK(j["results"][0]["fixed_dim"]["0"] == 15);
    CHECK(j["results"][0]["fixed_dim"]["1"] == 8);
    CHECK(j["results"][0]["fixed_dim"]["2"] == 1);
    CHECK(j["comparisons"]["steinberg_unipotent"] == true);
    CHECK(j["comparisons"]["mixture"] == true);

    const auto u = run_cli("oracle --group u --n 2 --p 3 --compare");
    CHECK(u.exit_code == 0);
    const auto ju = nlohmann::json::parse(u.output);
    CHECK(ju["results"][0]["order"] == 96);
    CHECK(ju["results"][0]["isometry"]["(0,1)"] == 8);
    CHECK(ju["comparisons"]["isometry_types"] == true);

    const auto o = run_cli("oracle --group o --n 2 --p 3 --compare");
    CHECK(o.exit_code == 0);
    const auto jo = nlohmann::json::parse(o.output);
    CHECK(jo["results"].size() == 2);

    // Budget exceeded: exit 2.
    CHECK(run_cli("oracle --group sp --n 3 --p 3").exit_code == 2);
}

TEST_CASE("oracle: budget override via environment") {
    const std::string cmd = std::string("CLASSCHAIN_BUDGET=10 ") + CLASSCHAIN_CLI_PATH +
                            " oracle --group sp --n 1 --p 3 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 256> buf{};
    while (fgets(buf.data(), buf.size(), pipe)) {
    }
    const int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 2);
}
