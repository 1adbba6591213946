#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "slalom/error.hpp"
#include "slalom/quadrature.hpp"

using namespace slalom;

TEST_CASE("polynomials along a bent path") {
    const std::vector<cplx> nodes{{0.0, -1.0}, {1.0, 0.5}, {2.0, 0.0}};
    const auto r = integrate_path([](cplx t) { return t * t * t - 2.0 * t; }, nodes);
    const auto F = [](cplx t) { return 0.25 * t * t * t * t - t * t; };
    CHECK(std::abs(r.value - (F(nodes.back()) - F(nodes.front()))) < 1e-12);
    CHECK(r.pieces >= 2);
}

TEST_CASE("entire function integrals are path independent") {
    const auto f = [](cplx t) { return std::exp(cplx(0.0, 1.0) * t) * std::cos(0.3 * t); };
    const auto a = integrate_path(f, {{0.0, 0.0}, {10.0, 0.0}});
    const auto b = integrate_path(f, {{0.0, 0.0}, {3.0, 2.0}, {7.0, -1.5}, {10.0, 0.0}});
    CHECK(std::abs(a.value - b.value) < 1e-9);
}

TEST_CASE("agrees with a fixed-grid reference near a pole") {
    const auto f = [](cplx t) { return 1.0 / std::sqrt(t * t + cplx(0.01, 0.0)); };
    const std::vector<cplx> nodes{{-3.0, -0.5}, {0.0, -0.5}, {3.0, -0.2}};
    const auto r = integrate_path(f, nodes);
    const cplx ref = oracle::fixed_grid_integral(f, nodes, 200000);
    CHECK(std::abs(r.value - ref) < 1e-9);
    CHECK(r.error_estimate <= 1e-9);
}

TEST_CASE("a log singularity at an endpoint converges") {
    const auto r = integrate_path([](cplx t) { return std::log(t); }, {{0.0, 0.0}, {1.0, 0.0}});
    CHECK(std::abs(r.value - cplx(-1.0, 0.0)) < 1e-9);
}

TEST_CASE("non-integrable singularity is reported") {
    QuadratureOptions opts;
    opts.abs_tolerance = 1e-12;
    opts.max_depth = 12;
    CHECK_THROWS_AS(integrate_path([](cplx t) { return 1.0 / t; }, {{-1.0, 0.0}, {1.0, 0.0}}, opts),
                    NumericalError);
}

TEST_CASE("degenerate paths") {
    CHECK(integrate_path([](cplx) { return cplx(1.0); }, {{1.0, 1.0}}).value == cplx(0.0));
    CHECK(integrate_path([](cplx) { return cplx(1.0); }, {{1.0, 1.0}, {1.0, 1.0}}).value == cplx(0.0));
}
