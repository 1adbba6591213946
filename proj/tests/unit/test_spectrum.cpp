#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "slalom/error.hpp"
#include "slalom/spectrum.hpp"

using namespace slalom;

namespace {

const FieldParams& ar() {
    static const FieldParams fp = presets::argon_near_ir();
    return fp;
}

}  // namespace

TEST_CASE("log10 mean") {
    CHECK(log10_mean(2.0, 2.0) == doctest::Approx(2.0));
    CHECK(log10_mean(0.0, 1.0) == doctest::Approx(std::log10(5.5)));
    CHECK(log10_mean(-400.0, -400.0) == doctest::Approx(-400.0));
    CHECK(log10_mean(-400.0, -1e4) == doctest::Approx(-400.0 - std::log10(2.0)));
}

TEST_CASE("parallel_for visits each index once") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                        if (i == 7) throw NumericalError("boom");
                    }),
                    NumericalError);
}

TEST_CASE("momentum map is symmetric and independent of the thread count") {
    const std::vector<double> px{-0.1, 0.1};
    const std::vector<double> pz{-0.3, 0.2, 0.3};
    SpectrumSettings one;
    one.jobs = 1;
    SpectrumSettings three;
    three.jobs = 3;
    const SpectrumGrid a = momentum_map(ar(), px, pz, one);
    const SpectrumGrid b = momentum_map(ar(), px, pz, three);
    CHECK(a.masked == 0);
    for (std::size_t k = 0; k < a.log10_yield.size(); ++k) CHECK(a.log10_yield[k] == b.log10_yield[k]);
    for (std::size_t j = 0; j < pz.size(); ++j) CHECK(a.at(0, j) == doctest::Approx(a.at(1, j)).epsilon(1e-9));
    CHECK(a.at(0, 0) == doctest::Approx(a.at(0, 2)).epsilon(1e-9));
}

TEST_CASE("momentum map input checks") {
    CHECK_THROWS_AS(momentum_map(ar(), {0.1, 0.1}, {0.2}), DomainError);
    CHECK_THROWS_AS(momentum_map(ar(), {0.1}, {}), DomainError);
    CHECK_THROWS_AS(momentum_map(ar(), {0.1}, {3.0 * ar().momentum_scale()}), DomainError);
}

TEST_CASE("failed nodes are masked, not fatal") {
    SpectrumSettings s;
    s.amplitude.navigator = Navigator::standard;
    s.symmetrize = false;
    const SpectrumGrid g = momentum_map(ar(), {0.02}, {0.2, 0.8}, s);
    CHECK(g.masked == 1);
    CHECK(g.masked_at(0, 1));
    CHECK(std::isnan(g.at(0, 1)));
    CHECK(std::isfinite(g.at(0, 0)));
    REQUIRE(g.failures.size() == 1);
    CHECK(g.failures[0].find("pz=0.8") != std::string::npos);

    const NodeResult r = evaluate_node({0.02, 0.8}, ar(), s.amplitude);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.error.empty());
}

TEST_CASE("CSV layout") {
    SpectrumSettings s;
    s.symmetrize = false;
    s.amplitude.navigator = Navigator::standard;
    const SpectrumGrid g = momentum_map(ar(), {0.02}, {0.2, 0.8}, s);
    std::ostringstream os;
    write_csv(os, g, {{"omega", "0.045908"}});
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "# omega: 0.045908");
    std::getline(is, line);
    CHECK(line == "px,pz,log10_yield");
    std::getline(is, line);
    CHECK(line.rfind("0.02,0.2,", 0) == 0);
    std::getline(is, line);
    CHECK(line == "0.02,0.8,nan");
}

TEST_CASE("steepest drop") {
    const std::vector<double> axis{0, 1, 2, 3, 4};
    CHECK(steepest_drop(axis, {5, 4, 1, 0.5, 0.4}, 0, 4).value() == doctest::Approx(1.5));
    CHECK(steepest_drop(axis, {5, NAN, 1, 0.5, 0.4}, 0, 4).value() == doctest::Approx(1.0));
    CHECK_FALSE(steepest_drop(axis, {5, 4, 1, 0.5, 0.4}, 3.5, 4).has_value());
}

TEST_CASE("wavelength scan bookkeeping") {
    const FieldParams base = presets::argon_mid_ir();
    const std::vector<double> omegas{base.omega(), 1.2 * base.omega()};
    WavelengthScanSettings s;
    s.classical_orders = 2;
    const WavelengthScan scan = wavelength_scan(base, omegas, {0.3, 0.4}, s);
    REQUIRE(scan.gammas.size() == 2);
    CHECK(scan.gammas[1] == doctest::Approx(1.2 * scan.gammas[0]));
    CHECK(scan.px_values[0] == doctest::Approx(transverse_probe_momentum(base, 0.05)));
    CHECK(scan.classical_pz[0].size() == 2);
    CHECK(scan.row(1).size() == 2);
    CHECK_THROWS_AS(wavelength_scan(base, {4.0 * base.omega()}, {0.3}), DomainError);
}
