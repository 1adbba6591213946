#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("slalom_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

Run run(const std::string& args, const std::string& env = "") {
    const fs::path out = scratch() / "stdout.txt";
    const fs::path err = scratch() / "stderr.txt";
    const std::string cmd = env + " " + SLALOM_CLI_PATH + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

}  // namespace

TEST_CASE("help on every subcommand") {
    CHECK(run("--help").code == 0);
    for (const char* sub : {"saddle", "classical-sr", "tca", "cuts", "contour", "amp", "spectrum",
                            "scan-wavelength", "serve"}) {
        const Run r = run(std::string(sub) + " --help");
        CHECK_MESSAGE(r.code == 0, sub);
        CHECK(r.out.find("Usage") != std::string::npos);
    }
}

TEST_CASE("invalid arguments exit with 1") {
    CHECK(run("").code == 1);
    CHECK(run("frobnicate").code == 1);
    CHECK(run("amp --px 0.1").code == 1);
    CHECK(run("amp --px 0.1 --pz 0.2 --target Unobtainium").code == 1);
    CHECK(run("classical-sr --n x..y").code == 1);
    CHECK(run("amp --px 0.1 --pz 0.2 --navigator sideways").code == 1);
}

TEST_CASE("numerical failure exits with 2") {
    const Run r = run("amp --px 0.02 --pz 0.8 --navigator standard");
    CHECK(r.code == 2);
    CHECK(r.err.find("branch cut") != std::string::npos);
}

TEST_CASE("classical-sr reproduces the universal ratios") {
    const Run r = run("classical-sr --gamma 0.1 --n 1..6 --json");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["orders"].size() == 6);
    const double expected[] = {1.0 / 2, 3.0 / 5, 2.0 / 3, 5.0 / 7};
    for (int i = 0; i < 4; ++i) {
        CHECK(j["orders"][i + 2]["ratio_to_n_minus_2"].get<double>() == doctest::Approx(expected[i]).epsilon(0.02));
    }
    const Run table = run("classical-sr --gamma 0.1 --n 1..6");
    CHECK(table.code == 0);
    CHECK(table.out.find("omega_tr/pi") != std::string::npos);
}

TEST_CASE("amp prints a breakdown") {
    const Run r = run("amp --target Ar --intensity 9e13 --lambda-um 0.99 --px 0.1 --pz 0.2");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.contains("bound_phase"));
    CHECK(j.contains("kinetic_action"));
    CHECK(j.contains("coulomb_action"));
    CHECK(j["validation"]["continuous"] == true);
    const double ratio = j["yield"].get<double>() / j["sfa_yield"].get<double>();
    CHECK(ratio > 1e2);
    CHECK(ratio < 1e4);
}

TEST_CASE("artifacts come with a manifest and are reproducible") {
    const fs::path a = scratch() / "a.csv";
    const fs::path b = scratch() / "b.csv";
    const std::string grid = "spectrum --px-min 0.01 --px-max 0.05 --npx 3 --pz-min 0.1 --pz-max 0.3 --npz 3 ";
    REQUIRE(run(grid + "-o " + a.string(), "SLALOM_JOBS=1").code == 0);
    REQUIRE(run(grid + "-o " + b.string() + " --jobs 2").code == 0);
    const std::string ca = slurp(a), cb = slurp(b);
    // Same data rows; only the manifest reference differs.
    CHECK(ca.substr(ca.find("px,pz")) == cb.substr(cb.find("px,pz")));
    CHECK(ca.find("# manifest: " + a.string() + ".manifest.json") != std::string::npos);
    const json m = json::parse(slurp(a.string() + ".manifest.json"));
    CHECK(m["command"] == "spectrum");
    CHECK(m["output"] == a.string());
    CHECK(m["failures"]["count"] == 0);
    CHECK(m["field"].contains("lab"));

    REQUIRE(run(grid + "-o " + a.string(), "SLALOM_JOBS=1").code == 0);
    CHECK(slurp(a) == ca);
}

TEST_CASE("masked nodes are a warning, not an error") {
    const fs::path a = scratch() / "masked.csv";
    const Run r = run("spectrum --px-min 0.02 --px-max 0.02 --npx 1 --pz-min 0.2 --pz-max 0.8 --npz 2 "
                      "--navigator standard --no-symmetrize -o " + a.string());
    CHECK(r.code == 0);
    CHECK(r.err.find("masked") != std::string::npos);
    CHECK(slurp(a).find("0.02,0.8,nan") != std::string::npos);
}

TEST_CASE("single-momentum commands") {
    CHECK(json::parse(run("saddle --px 0.1 --pz 0.2").out)["saddle"]["residual"].get<double>() < 1e-12);
    CHECK(json::parse(run("tca --px 0.1 --pz 0.2").out)["roots"].size() >= 3);
    CHECK(json::parse(run("contour --px 0.02 --pz 0.8 --navigator standard").out)["validation"]["continuous"] ==
          false);
    const json cuts = json::parse(run("cuts --px 0.001 --pz 0.07 --gamma 0.97573 --nx 20 --ny 10").out);
    CHECK(cuts["distance_field"]["re"].size() == 200);
    CHECK(cuts["topology"].contains("by_velocity"));
}
