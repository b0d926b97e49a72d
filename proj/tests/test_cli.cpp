#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gatelab/matrix_io.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("gatelab-cli-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args, const std::string& stdout_file = "/dev/null") {
    const std::string cmd =
        std::string(GATELAB_BIN) + " " + args + " > " + stdout_file + " 2> /dev/null";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("measure prints exact invariants and writes a manifest") {
    TempDir tmp;
    const std::string out = tmp.file("cnot.json");
    REQUIRE(run("measure cnot --out " + out) == 0);
    std::ifstream in(out);
    nlohmann::json j;
    in >> j;
    CHECK(j.at("ep").get<double>() == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(j.at("gt").get<double>() == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(fs::exists(out + ".manifest.json"));
}

TEST_CASE("thermalize emits the documented CSV columns") {
    TempDir tmp;
    const std::string out = tmp.file("traj.csv");
    REQUIRE(run("thermalize --gate diag:eps=0.5,dims=2x3 --steps 3 --trials 8 --seed 7 --out " +
                out) == 0);
    const std::vector<std::string> lines = read_lines(out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "n,mean_ep,stderr_ep,mean_gt,stderr_gt,X,Y,theory_ep,theory_gt");
    int n;
    char comma;
    std::istringstream row(lines[1]);
    row >> n >> comma;
    CHECK(n == 1);
}

TEST_CASE("spectra writes eigenvalue and singular-value tables") {
    TempDir tmp;
    const std::string prefix = tmp.file("spec");
    REQUIRE(run("spectra --gate diag:eps=1,dims=4x4 --steps 1,2 --which both --seed 5 --out " +
                prefix) == 0);
    const std::vector<std::string> eig = read_lines(prefix + "_eig.csv");
    REQUIRE(!eig.empty());
    CHECK(eig[0] == "kind,step,re,im");
    const std::vector<std::string> xs = read_lines(prefix + "_x.csv");
    REQUIRE(!xs.empty());
    CHECK(xs[0] == "kind,step,x");
    CHECK(fs::exists(prefix + "_ks.json"));
}

TEST_CASE("exit codes follow the documented contract") {
    TempDir tmp;
    SUBCASE("success is 0") { CHECK(run("measure swap") == 0); }
    SUBCASE("gate spec syntax errors are 2") {
        CHECK(run("measure fswap:t=abc") == 2);
        CHECK(run("measure nosuchgate") == 2);
    }
    SUBCASE("unknown CLI flags are 2") { CHECK(run("measure cnot --bogus 1") == 2); }
    SUBCASE("invalid inputs are 3") {
        CHECK(run("measure haar:dims=2x3") == 3);  // random family without a seed
        CHECK(run("measure file:" + tmp.file("missing.json")) == 3);
    }
    SUBCASE("malformed matrix payloads are 3") {
        const std::string bad = tmp.file("bad.json");
        std::ofstream(bad) << R"({"dims": [2, 2], "re": [[1, 0], [0]], "im": [[0, 0], [0, 0]]})";
        CHECK(run("measure file:" + bad) == 3);
    }
}
