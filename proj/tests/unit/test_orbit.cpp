#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "slalom/error.hpp"
#include "slalom/orbit.hpp"

using namespace slalom;

namespace {

const FieldParams spec_ar{0.05065, 0.04612, 1.0763};

cplx saddle_lhs(const Momentum& p, cplx t, const FieldParams& fp) {
    const cplx vz = p.pz - fp.momentum_scale() * std::sin(fp.omega() * t);
    return 0.5 * (p.px * p.px + vz * vz) + fp.ip();
}

}  // namespace

TEST_CASE("saddle at zero momentum is purely imaginary") {
    const SaddleSolution s = solve_saddle({0.0, 0.0}, spec_ar);
    CHECK(std::abs(s.ts.real()) < 1e-12);
    CHECK(s.ts.imag() == doctest::Approx(std::asinh(spec_ar.gamma()) / spec_ar.omega()).epsilon(1e-12));
    CHECK(s.tunnel_time() == doctest::Approx(18.80).epsilon(1e-3));
    CHECK(std::abs(saddle_lhs({0.0, 0.0}, s.ts, spec_ar)) < 1e-12);
}

TEST_CASE("t_kappa sits exactly 1/kappa^2 below t_s") {
    const SaddleSolution s = solve_saddle({0.12, -0.4}, spec_ar);
    CHECK(s.t_kappa == s.ts - cplx(0.0, 1.0 / (spec_ar.kappa() * spec_ar.kappa())));
    CHECK(s.ts.imag() > 0.0);
}

TEST_CASE("saddle residual for random momenta") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int i = 0; i < 200; ++i) {
        const Momentum p{u(rng), u(rng)};
        const SaddleSolution s = solve_saddle(p, spec_ar);
        CHECK(std::abs(saddle_lhs(p, s.ts, spec_ar)) < 1e-12);
        CHECK(std::abs(s.ts - saddle_closed_form(p, spec_ar)) < 1e-10);
    }
}

TEST_CASE("non-finite momentum is a domain error") {
    CHECK_THROWS_AS(solve_saddle({NAN, 0.0}, spec_ar), DomainError);
}

TEST_CASE("ionization time follows the linearized law at small p_z") {
    auto err = [](double pz) {
        const SaddleSolution s = solve_saddle({0.0, pz}, spec_ar);
        const double lin = (pz / spec_ar.field()) / std::sqrt(1.0 + spec_ar.gamma() * spec_ar.gamma());
        return std::abs(s.t0() - lin) / lin;
    };
    CHECK(err(0.1) < 0.05);
    // the first correction is higher order in p_z
    CHECK(err(0.05) < err(0.1) / 3.0);
}

TEST_CASE("trajectory starts at the origin at t_s") {
    const Momentum p{0.2, 0.3};
    const SaddleSolution s = solve_saddle(p, spec_ar);
    const ComplexVec3 r = trajectory(s.ts, p, s, spec_ar);
    CHECK(std::abs(r.x) == 0.0);
    CHECK(std::abs(r.z) < 1e-14);
}

TEST_CASE("tunnel exit") {
    const SaddleSolution s = solve_saddle({0.0, 0.0}, spec_ar);
    const double zq = spec_ar.quiver_radius();
    const double g = spec_ar.gamma();
    const double linear = -zq * (std::sqrt(1.0 + g * g) - 1.0);
    CHECK(s.z_exit == doctest::Approx(-9.53).epsilon(2e-3));
    CHECK(s.z_exit == doctest::Approx(linear).epsilon(1e-10));
    const ComplexVec3 r = trajectory(cplx(s.t0(), 0.0), {0.0, 0.0}, s, spec_ar);
    CHECK(r.z.real() == doctest::Approx(s.z_exit).epsilon(1e-12));

    // tunnelling limit: the exit approaches Ip/F
    const FieldParams tl = FieldParams::with_gamma(0.05, 1.0763, 0.1);
    const SaddleSolution st = solve_saddle({0.0, 0.0}, tl);
    CHECK(st.z_exit == doctest::Approx(-tl.ip() / tl.field()).epsilon(0.01));
}

TEST_CASE("velocity") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const Momentum p{u(rng), u(rng)};
        const SaddleSolution s = solve_saddle(p, spec_ar);
        const cplx v2 = velocity(s.ts, p, spec_ar).norm2();
        CHECK(std::abs(v2 + 2.0 * spec_ar.ip()) < 1e-11);
    }

    // a real turning point
    const double t = 0.3 / spec_ar.omega();
    const Momentum p{0.0, spec_ar.momentum_scale() * std::sin(spec_ar.omega() * t)};
    CHECK(std::abs(velocity(t, p, spec_ar).z) < 1e-15);

    std::uniform_real_distribution<double> re(0.0, 300.0);
    std::uniform_real_distribution<double> im(-30.0, 30.0);
    for (int i = 0; i < 100; ++i) {
        const Momentum q{u(rng), u(rng)};
        const SaddleSolution s = solve_saddle(q, spec_ar);
        const cplx t0(re(rng), im(rng));
        const cplx dz = oracle::derivative(
            [&](cplx tt) { return trajectory(tt, q, s, spec_ar).z; }, t0, cplx(1e-2, 0.0));
        const cplx vz = velocity(t0, q, spec_ar).z;
        CHECK(std::abs(dz - vz) <= 1e-8 * std::max(1.0, std::abs(vz)));
    }
}

TEST_CASE("kinetic action") {
    const Momentum p{0.3, -0.2};
    CHECK(kinetic_action(cplx(3.0, 1.0), cplx(3.0, 1.0), p, spec_ar) == cplx(0.0));

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> re(-50.0, 300.0);
    std::uniform_real_distribution<double> im(-30.0, 30.0);
    for (int i = 0; i < 100; ++i) {
        const cplx t(re(rng), im(rng));
        const cplx dw = oracle::derivative([&](cplx s) { return kinetic_antiderivative(s, p, spec_ar); },
                                           t, cplx(1e-2, 0.0));
        const cplx v = velocity(t, p, spec_ar).norm2();
        CHECK(std::abs(dw - 0.5 * v) <= 1e-10 * std::abs(0.5 * v));
    }

    // a random polyline, integrated on a fixed grid
    std::vector<cplx> nodes{{10.0, 15.0}};
    for (int k = 0; k < 5; ++k) nodes.push_back({re(rng), im(rng)});
    const cplx quad = oracle::fixed_grid_integral(
        [&](cplx t) { return 0.5 * velocity(t, p, spec_ar).norm2(); }, nodes);
    const cplx closed = kinetic_action(nodes.front(), nodes.back(), p, spec_ar);
    CHECK(std::abs(quad - closed) <= 1e-10 * std::abs(closed));
}

TEST_CASE("trajectory is path independent") {
    const Momentum p{0.15, 0.45};
    const SaddleSolution s = solve_saddle(p, spec_ar);
    const cplx end(230.0, -4.0);
    auto vz = [&](cplx t) { return velocity(t, p, spec_ar).z; };
    const cplx via_real = oracle::fixed_grid_integral(vz, {s.ts, cplx(s.t0(), 0.0), end});
    const cplx via_detour = oracle::fixed_grid_integral(vz, {s.ts, cplx(60.0, 40.0), cplx(150.0, -30.0), end});
    const cplx closed = trajectory(end, p, s, spec_ar).z;
    CHECK(std::abs(via_real - closed) < 1e-10 * std::abs(closed));
    CHECK(std::abs(via_detour - closed) < 1e-10 * std::abs(closed));
}

TEST_CASE("imaginary position is frozen along real time") {
    const Momentum p{0.05, 0.6};
    const SaddleSolution s = solve_saddle(p, spec_ar);
    const ComplexVec3 first = trajectory(cplx(s.t0(), 0.0), p, s, spec_ar);
    for (double t = s.t0(); t < 400.0; t += 7.3) {
        const ComplexVec3 r = trajectory(t, p, s, spec_ar);
        CHECK(std::abs(r.z.imag() - first.z.imag()) < 1e-12 * (1.0 + std::abs(r.z)));
        CHECK(std::abs(r.x.imag() - first.x.imag()) < 1e-13);
    }
}

TEST_CASE("Orbit bundles the same quantities") {
    const Momentum p{0.1, 0.2};
    const Orbit o(p, spec_ar);
    const cplx t(120.0, 3.0);
    const ComplexVec3 r = trajectory(t, p, o.saddle(), spec_ar);
    const ComplexVec3 v = velocity(t, p, spec_ar);
    CHECK(std::abs(o.r2(t) - r.norm2()) < 1e-12 * std::abs(r.norm2()));
    CHECK(std::abs(o.ca_function(t) - r.dot(v)) < 1e-12 * std::abs(r.dot(v)));
    const cplx d = oracle::derivative([&](cplx s) { return o.ca_function(s); }, t, cplx(1e-2, 0.0));
    CHECK(std::abs(o.ca_derivative(t) - d) < 1e-8 * std::abs(d));
    CHECK(std::abs(o.r2_prime(t) - 2.0 * o.ca_function(t)) == 0.0);
}
