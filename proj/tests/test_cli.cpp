// Exercises the installed binary's exit-code contract end to end.
// The binary path is injected by CMake as SIEVEBOUND_CLI_PATH.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

#ifndef SIEVEBOUND_CLI_PATH
#error "SIEVEBOUND_CLI_PATH must be defined by the build"
#endif

int run(const std::string& args) {
    const std::string cmd = std::string(SIEVEBOUND_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string run_capture(const std::string& args) {
    const std::string path =
        std::string("cli_out_") + std::to_string(::getpid()) + ".tmp";
    const std::string cmd =
        std::string(SIEVEBOUND_CLI_PATH) + " " + args + " > " + path + " 2>/dev/null";
    if (std::system(cmd.c_str()) == -1) return {};
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    std::remove(path.c_str());
    return ss.str();
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("omega: single point, range, and range guard") {
    CHECK(run("omega --u 1.5") == 0);
    const std::string csv = run_capture("omega --from 1 --to 3 --step 0.5");
    CHECK(count_lines(csv) == 6);  // header + 5 rows
    CHECK(csv.find("u,lo,hi") == 0);
    const bool has_two_thirds = csv.find("0.666") != std::string::npos ||
                                csv.find("6.66") != std::string::npos;
    CHECK(has_two_thirds);
    CHECK(run("omega --u 42") == 2);
    CHECK(run("omega") == 2);
    CHECK(run("omega --u 1.5 --from 1") == 2);
}

TEST_CASE("term: pass, starved budget, unknown term") {
    CHECK(run("term G5") == 0);  // exact closed form
    CHECK(run("term G6 --width 5e-6") == 0);
    CHECK(run("term G4 --max-cells 10") == 1);
    CHECK(run("term G8") == 2);
    CHECK(run("term") == 2);
}

TEST_CASE("solve prints the admissible exponent") {
    const std::string out = run_capture("solve --legacy-bounds");
    CHECK(out.find("1.312") == 0);
    CHECK(run("solve --legacy-bounds") == 0);
}

TEST_CASE("oracle agreement verdict") {
    CHECK(run("oracle G2 --samples 100000 --seed 1") == 0);
    const std::string out = run_capture("oracle G2 --samples 100000 --seed 1");
    CHECK(out.find("ok") != std::string::npos);
    CHECK(run("oracle G2 --samples 100") == 2);  // below the sample floor
    CHECK(run("oracle NOPE") == 2);
}

TEST_CASE("rho-empirical") {
    const std::string out = run_capture("rho-empirical --xmax 7");
    CHECK(out.find("count=4") != std::string::npos);
    CHECK(run("rho-empirical --xmax 7") == 0);
    CHECK(run("rho-empirical --xmax 1") == 2);
    CHECK(run("rho-empirical") == 2);
}

TEST_CASE("config errors exit 2") {
    CHECK(run("") == 2);
    CHECK(run("nonsense") == 2);
    CHECK(run("term G2 --mode bogus") == 2);
    CHECK(run("report --format xml") == 2);
}

TEST_CASE("omega respects --out") {
    const std::string path =
        std::string("omega_out_") + std::to_string(::getpid()) + ".tmp";
    CHECK(run("omega --u 2 --out " + path) == 0);
    std::ifstream f(path);
    REQUIRE(f.good());
    std::string header;
    std::getline(f, header);
    CHECK(header == "u,lo,hi");
    f.close();
    std::remove(path.c_str());
}
