// End-to-end checks of the command-line tool: exit codes, output
// stability, and the documented JSON shapes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include <json.hpp>

namespace {

struct run_result {
    int exit_code;
    std::string out;
};

run_result run_cli(const std::string& args) {
    const std::string cmd = std::string(CESARO_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

} // namespace

TEST_CASE("wsum emits the documented json fields") {
    const auto r = run_cli("--format json wsum --weight phi --alpha 2 "
                           "--f \"arctan(x)/(x*(1+x))\" --n 65536");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["n"] == 65536);
    const double target = 3.0 * std::log(2.0) / (4.0 * std::numbers::pi);
    CHECK(std::fabs(j["target"].get<double>() - target) < 1e-9);
    CHECK(std::fabs(j["value"].get<double>() - target) < 5e-4);
    CHECK(j["abs_error"].get<double>() ==
          doctest::Approx(std::fabs(j["value"].get<double>() - target)));
}

TEST_CASE("integrate matches the arctan closed form") {
    const auto r =
        run_cli("--format json integrate --f \"arctan(x)/(1+x)\" --tol 1e-12");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::fabs(j["value"].get<double>() - 0.2721982612879503) < 1e-10);
}

TEST_CASE("riemann and moment subcommands") {
    const auto r = run_cli("--format json riemann --f x --n 4");
    REQUIRE(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.out)["value"].get<double>() == 0.625);

    const auto m = run_cli("--format json moment --weight phi --p 1 --n 10000");
    REQUIRE(m.exit_code == 0);
    const auto j = nlohmann::json::parse(m.out);
    CHECK(std::fabs(j["target"].get<double>() -
                    2.0 / (std::numbers::pi * std::numbers::pi)) < 1e-12);
}

TEST_CASE("verify passes on the shipped catalog entry eq3") {
    const auto r = run_cli(std::string("--format json verify --catalog \"") +
                           CESARO_CATALOG_PATH + "\" --entry eq3 --ladder 2^10..2^14");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["entry_id"] == "eq3");
    CHECK(j["verdict"] == "pass");
    CHECK(j["rows"].size() == 5);
}

TEST_CASE("verification failure exits 1") {
    // absurd tolerance on a short ladder
    const auto r = run_cli(std::string("verify --catalog \"") + CESARO_CATALOG_PATH +
                           "\" --entry eq3 --ladder 10,20,30 --tol 1e-12");
    CHECK(r.exit_code == 1);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("--bogus-flag wsum --f 1 --n 10").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("wsum --f \"1+\" --n 10").exit_code == 2); // expression parse error
    CHECK(run_cli("verify --catalog /does/not/exist --ladder 2^4..2^6").exit_code == 2);
    CHECK(run_cli("verify --entry nope --catalog \"" +
                  std::string(CESARO_CATALOG_PATH) + "\"")
              .exit_code == 2);
}

TEST_CASE("identical invocations give byte-identical output") {
    const std::string args = "--format json wsum --weight sigma "
                             "--f \"1/(1+a*x^2)\" --param a=1 --n 20000";
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("asymptotic subcommand reports shrinking residuals") {
    const auto r = run_cli("--format json asymptotic --alpha 1 --ladder 10^3..10^5");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["rows"].size() == 3);
    CHECK(std::fabs(j["rows"][2]["residual"].get<double>()) <
          std::fabs(j["rows"][0]["residual"].get<double>()));
}

TEST_CASE("sieve cache round-trips through the cache directory") {
    const std::string dir = "cli_test_cache";
    const std::string args = "--cache-dir " + dir +
                             " --format json wsum --weight phi --f 1 --n 4096";
    const auto first = run_cli(args);
    REQUIRE(first.exit_code == 0);
    const auto second = run_cli(args); // served from cache
    CHECK(second.exit_code == 0);
    CHECK(first.out == second.out);
    std::remove((dir + "/phi_4096.sieve").c_str());
}
