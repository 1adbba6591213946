#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "slalom/classical.hpp"
#include "slalom/error.hpp"
#include "slalom/orbit.hpp"

using namespace slalom;

namespace {

constexpr double pi = std::numbers::pi;
const FieldParams spec_ar{0.05065, 0.04612, 1.0763};

bool is_min(CAKind k) { return k != CAKind::turning_max; }

// Independent residual of the soft-recollision system from the closed-form
// trajectory: position and velocity along z both vanish at t_r.
double sr_residual(const SoftRecollision& sr, const FieldParams& fp) {
    const Momentum p{0.0, sr.pz_sr};
    const SaddleSolution s = solve_saddle(p, fp);
    const ComplexVec3 r = trajectory(sr.tr, p, s, fp);
    const ComplexVec3 v = velocity(sr.tr, p, fp);
    return std::max(std::abs(r.z.real()), std::abs(v.z.real()));
}

}  // namespace

TEST_CASE("linearized momenta at gamma 0.98") {
    const double w_over_f = spec_ar.omega() / spec_ar.field();
    CHECK(linearized_soft_recollision(1, spec_ar).pz_sr * w_over_f ==
          doctest::Approx((std::sqrt(1.9604) - 1.0) / (2 * pi)).epsilon(1e-3));
    CHECK(linearized_soft_recollision(1, spec_ar).pz_sr * w_over_f == doctest::Approx(0.0637).epsilon(2e-3));
    CHECK(linearized_soft_recollision(2, spec_ar).pz_sr * w_over_f == doctest::Approx(0.2547).epsilon(2e-3));
}

TEST_CASE("exact soft recollisions satisfy the defining system") {
    for (double g : {0.1, 0.31, 0.75, 0.98}) {
        const FieldParams fp = FieldParams::with_gamma(0.05064, 1.0763, g);
        for (int n = 1; n <= 6; ++n) {
            const SoftRecollision sr = solve_soft_recollision(n, fp);
            CHECK(sr.n == n);
            CHECK(sr.family == (n % 2 ? Family::odd : Family::even));
            CHECK(sr_residual(sr, fp) < 1e-10);
            // omega t_r stays near (n+1) pi
            CHECK(std::abs(fp.omega() * sr.tr - (n + 1) * pi) < 0.5);
        }
    }
}

TEST_CASE("invalid order is rejected") {
    CHECK_THROWS_AS(solve_soft_recollision(0, spec_ar), DomainError);
}

TEST_CASE("odd family in the tunnelling limit") {
    const FieldParams fp = FieldParams::with_gamma(0.05064, 1.0763, 0.1);
    for (int n : {1, 3, 5}) {
        const double law = fp.gamma() * fp.kappa() / ((n + 1) * 2 * pi);
        CHECK(solve_soft_recollision(n, fp).pz_sr == doctest::Approx(law).epsilon(0.03));
    }
}

TEST_CASE("universal ratios") {
    const FieldParams fp = FieldParams::with_gamma(0.05064, 1.0763, 0.1);
    const auto odd = universal_ratios(Family::odd, 3, fp);
    const auto even = universal_ratios(Family::even, 3, fp);
    REQUIRE(odd.size() == 3);
    REQUIRE(even.size() == 3);
    const double odd_law[3] = {1.0 / 2, 2.0 / 3, 3.0 / 4};
    const double even_law[3] = {3.0 / 5, 5.0 / 7, 7.0 / 9};
    for (int i = 0; i < 3; ++i) {
        CHECK(odd[i] == doctest::Approx(odd_law[i]).epsilon(0.02));
        CHECK(even[i] == doctest::Approx(even_law[i]).epsilon(0.02));
    }
    for (int n = 1; n <= 4; ++n) {
        const double ratio = linearized_soft_recollision(n + 2, fp).pz_sr / linearized_soft_recollision(n, fp).pz_sr;
        CHECK(ratio == doctest::Approx((n + 1.0) / (n + 3.0)).epsilon(1e-14));
    }
}

TEST_CASE("exact momenta converge to the linear law as gamma shrinks") {
    for (int n = 1; n <= 6; ++n) {
        double prev = INFINITY;
        for (double g = 0.3; g >= 0.1 - 1e-12; g -= 0.025) {
            const FieldParams fp = FieldParams::with_gamma(0.05064, 1.0763, g);
            const double exact = solve_soft_recollision(n, fp).pz_sr;
            const double lin = linearized_soft_recollision(n, fp).pz_sr;
            const double rel = std::abs(exact - lin) / lin;
            CHECK(rel < prev);
            prev = rel;
        }
    }
}

TEST_CASE("no turning points on axis above F/omega") {
    const FieldParams fp = presets::argon_near_ir();
    const Momentum p{0.0, 1.05 * fp.momentum_scale()};
    const SaddleSolution s = solve_saddle(p, fp);
    const auto pts = classical_ca_scan(p, {s.t0(), s.t0() + 3 * fp.period()}, fp);
    for (const auto& c : pts) CHECK(c.kind == CAKind::collision);
}

TEST_CASE("just above a soft recollision a turning point is flanked by collisions") {
    const FieldParams fp = presets::argon_near_ir();
    const SoftRecollision sr = solve_soft_recollision(1, fp);
    const Momentum p{0.0, sr.pz_sr * 1.02};
    const auto pts = classical_ca_scan(p, {sr.tr - 0.6 / fp.omega(), sr.tr + 0.6 / fp.omega()}, fp);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].kind == CAKind::collision);
    CHECK(pts[1].kind == CAKind::turning_max);
    CHECK(pts[2].kind == CAKind::collision);
}

TEST_CASE("classical roots against a dense sign-change scan") {
    const FieldParams fp = presets::argon_near_ir();
    for (const Momentum p : {Momentum{0.0, 0.3}, Momentum{0.02, 0.8}, Momentum{0.1, 0.2},
                             Momentum{0.3, -0.4}, Momentum{0.001, 0.07}, Momentum{0.05, 0.05}}) {
        const SaddleSolution s = solve_saddle(p, fp);
        const RealWindow w{s.t0(), s.t0() + 2.75 * fp.period()};
        const auto pts = classical_ca_scan(p, w, fp);
        const int brute = oracle::sign_changes(
            [&](double t) { return classical_ca_function(t, p, fp); }, w.lo, w.hi, 10000);
        CHECK(static_cast<int>(pts.size()) == brute);
        for (const auto& c : pts) {
            CHECK(std::abs(classical_ca_function(c.t, p, fp)) < 1e-10);
            CHECK(c.t >= w.lo);
            CHECK(c.t <= w.hi);
        }
        for (std::size_t i = 1; i < pts.size(); ++i) {
            CHECK(pts[i].t >= pts[i - 1].t);
            CHECK(is_min(pts[i].kind) != is_min(pts[i - 1].kind));
        }
    }
}
