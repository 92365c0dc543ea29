#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(YM_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("verify exits 0 with every identity marked pass") {
    auto r = run("verify");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"status\": \"fail\"") == std::string::npos);
    CHECK(r.out.find("\"status\": \"pass\"") != std::string::npos);
}

TEST_CASE("dimension validation exits 2") {
    auto r = run("simulate --system 4d --state 1,0,0 --t1 1");
    CHECK(r.code == 2);
}

TEST_CASE("unknown flags and missing subcommands exit 2") {
    CHECK(run("").code == 2);
    CHECK(run("simulate --no-such-flag").code == 2);
    CHECK(run("balance --system 4d --order 12 --branch j").code == 2);
}

TEST_CASE("balance JSON carries the closed-form t-coefficient of q1") {
    auto r = run("balance --system 4d --order 12 --branch i");
    CHECK(r.code == 0);
    // q1's tau^1 coefficient (the t^1 slot of its expansion) is -(1/2) u^3.
    CHECK(r.out.find("\"(-1/2, 0, 0, 0) * u^3\"") != std::string::npos);
    CHECK(r.out.find("\"residual_ok\": true") != std::string::npos);
    for (const char* p : {"\"u\"", "\"v\"", "\"w\""})
        CHECK(r.out.find(p) != std::string::npos);
}

TEST_CASE("simulate writes trajectory CSV and drift JSON") {
    namespace fs = std::filesystem;
    const std::string dir = fs::temp_directory_path() / "ym_cli_test";
    fs::create_directories(dir);
    const std::string csv = dir + "/traj.csv", js = dir + "/drift.json";
    auto r = run("simulate --system 4d --a 1 --state 1,1,0,0 --t1 2 --csv " + csv + " --json " + js);
    CHECK(r.code == 0);
    const std::string head = slurp(csv).substr(0, 60);
    CHECK(head.rfind("t_re,t_im,q1_re,q1_im,q2_re,q2_im,p1_re,p1_im,p2_re,p2_im", 0) == 0);
    CHECK(slurp(js).find("max_rel_drift") != std::string::npos);

    // separate accepts the written CSV.
    auto r2 = run("separate --csv-in " + csv + " --a 1");
    CHECK(r2.code == 0);
    CHECK(r2.out.find("p6_max_residual") != std::string::npos);
}

TEST_CASE("curves reports genus 4 for the 4d parameter curve") {
    auto r = run("curves --curve balance-4d --a 1 --b1 1 --b2 0.5 --draws 3 --seed 7");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"genus\": 4") != std::string::npos);
}

TEST_CASE("a failed mathematical check exits 1") {
    // b1 = b2 = 0 degenerates the separation curve (a multiple root at 0).
    auto r = run("curves --curve p6 --a 1 --b1 0 --b2 0 --draws 1");
    CHECK(r.code == 1);
    CHECK(r.out.find("\"degenerate\": true") != std::string::npos);
}

TEST_CASE("non-finite numeric input exits 2") {
    CHECK(run("simulate --system 4d --state 1,1,0,0 --t1 inf").code == 2);
}

TEST_CASE("identical config and seed give byte-identical output") {
    auto r1 = run("curves --curve p6 --a 1.25 --b1 0.75 --b2 0.5 --draws 4 --seed 99");
    auto r2 = run("curves --curve p6 --a 1.25 --b1 0.75 --b2 0.5 --draws 4 --seed 99");
    CHECK(r1.code == 0);
    CHECK(r1.out == r2.out);
    auto r3 = run("quadrature --a 1 --t1 5");
    auto r4 = run("quadrature --a 1 --t1 5");
    CHECK(r3.out == r4.out);
}

TEST_CASE("config file values are overridden by flags") {
    namespace fs = std::filesystem;
    const std::string dir = fs::temp_directory_path() / "ym_cli_test";
    fs::create_directories(dir);
    const std::string conf = dir + "/run.conf";
    {
        std::ofstream os(conf);
        os << "a=1\n"
           << "b1=1\n"
           << "b2=0.5\n"
           << "draws=2\n"
           << "seed=11\n";
    }
    auto file_only = run("curves --curve p6 --config " + conf);
    CHECK(file_only.code == 0);
    auto overridden = run("curves --curve p6 --config " + conf + " --draws 3");
    CHECK(overridden.code == 0);
    CHECK(file_only.out != overridden.out);
}
