// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the CLI binary; the path is injected by the build.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#ifndef QCUT_CLI_PATH
#error "QCUT_CLI_PATH must point at the built CLI binary"
#endif

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(QCUT_CLI_PATH) + " " + args + " 2>&1";
    CliResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 512> buf{};
    while (fgets(buf.data(), buf.size(), pipe) != nullptr) result.output += buf.data();
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("verify passes at the documented tolerance") {
    const CliResult r = run_cli("verify --k 0,0.5,1 --tol 1e-10");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASSED") != std::string::npos);
    CHECK(r.output.find("kappa = 1.4") != std::string::npos);
}

TEST_CASE("verify fails below float precision") {
    const CliResult r = run_cli("verify --tol 1e-30");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("FAILED") != std::string::npos);
}

TEST_CASE("kappa endpoints") {
    {
        const CliResult r = run_cli("kappa --k 1");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("kappa      = 1\n") != std::string::npos);
        CHECK(r.output.find("c          = 0\n") != std::string::npos);
    }
    {
        const CliResult r = run_cli("kappa --k 0");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("kappa      = 3\n") != std::string::npos);
        CHECK(r.output.find("c          = 1\n") != std::string::npos);
    }
    {
        const CliResult r = run_cli("kappa --robustness 0.8");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("k          = 0.5\n") != std::string::npos);
        CHECK(r.output.find("kappa      = 1.4") != std::string::npos);
    }
    {
        const CliResult r = run_cli("kappa --robustness 1.5");
        CHECK(r.exit_code == 1);
    }
}

TEST_CASE("cut deterministic teleportation") {
    const CliResult r = run_cli("cut --state zero --k 1 --shots 100 --seed 5");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("estimate       = (1, 0)") != std::string::npos);
    CHECK(r.output.find("l2 error       = 0\n") != std::string::npos);
}

TEST_CASE("cut near-uniform estimate for plus state") {
    const CliResult r = run_cli("cut --state plus --k 1 --shots 4096 --seed 7");
    CHECK(r.exit_code == 0);
    // Parse the printed estimate and check it is binomial-close to 0.5.
    const auto pos = r.output.find("estimate       = (");
    REQUIRE(pos != std::string::npos);
    double p0 = 0.0, p1 = 0.0;
    REQUIRE(std::sscanf(r.output.c_str() + pos, "estimate       = (%lf, %lf)", &p0, &p1) == 2);
    CHECK(std::abs(p0 - 0.5) < 0.05);
    CHECK(std::abs(p0 + p1 - 1.0) < 1e-9);
}

TEST_CASE("cut rejects bad state specs") {
    CHECK(run_cli("cut --state bogus").exit_code == 1);
    CHECK(run_cli("cut --state 12x").exit_code == 1);
    CHECK(run_cli("cut --state 12345 --shots 64").exit_code == 0);
}

TEST_CASE("unknown flags are rejected") {
    CHECK(run_cli("verify --nonsense 1").exit_code == 1);
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("sweep --help").exit_code == 0);
}

TEST_CASE("sweep writes the expected csv and is byte-deterministic") {
    namespace fs = std::filesystem;
    const fs::path a = fs::path("cli_sweep_a.csv");
    const fs::path b = fs::path("cli_sweep_b.csv");

    const std::string flags = "sweep --states 6 --shots 128,256 --seed 11 -o ";
    CHECK(run_cli(flags + a.string()).exit_code == 0);
    CHECK(run_cli(flags + b.string() + " --threads 2").exit_code == 0);

    const std::string text_a = slurp(a);
    const std::string text_b = slurp(b);
    CHECK(!text_a.empty());
    CHECK(text_a == text_b);

    // Header plus 6 default robustness levels x 2 budgets.
    int lines = 0;
    for (char ch : text_a) lines += ch == '\n' ? 1 : 0;
    CHECK(lines == 1 + 6 * 2);

    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("sweep json output parses") {
    namespace fs = std::filesystem;
    const fs::path out = fs::path("cli_sweep.json");
    const CliResult r =
        run_cli("sweep --states 3 --shots 64 --robustness 0,1 --seed 2 --format json -o " +
                out.string());
    CHECK(r.exit_code == 0);
    const std::string text = slurp(out);
    CHECK(text.find("\"mean_l2\"") != std::string::npos);
    CHECK(text.front() == '[');
    fs::remove(out);
}
