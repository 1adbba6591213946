#include "slalom/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "slalom/error.hpp"
#include "slalom/orbit.hpp"

namespace slalom {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int kSoftRecollisionMaxIterations = 200;
constexpr double kSoftRecollisionTolerance = 1e-10;

struct SrResidual {
    double g1;
    double g2;
    double d1_dpz;
    double d1_dtr;
    double d2_dtr;
};

// g1 = Re z_cl(t_r) and g2 = v_z(t_r) on the polarization axis. The p_z
// dependence of the start time enters through dt_s/dp_z = 1/(F cos omega t_s).
SrResidual sr_residual(double pz, double tr, const FieldParams& fp) {
    const Momentum p{0.0, pz};
    const Orbit orbit(p, fp, solve_saddle(p, fp));
    const cplx ts = orbit.saddle().ts;
    const double vz = orbit.vz(tr).real();
    const cplx dts = 1.0 / (fp.field() * std::cos(fp.omega() * ts));
    return {orbit.z(tr).real(), vz, ((tr - ts) - orbit.vz(ts) * dts).real(), vz,
            -fp.field() * std::cos(fp.omega() * tr)};
}

struct Extremum {
    double t;
    double g;
};

}  // namespace

SoftRecollision linearized_soft_recollision(int n, const FieldParams& fp) {
    if (n < 1) throw DomainError("soft-recollision index must be >= 1");
    const double g = fp.gamma();
    const double sign = n % 2 ? -1.0 : 1.0;
    const double pz = fp.momentum_scale() * (std::sqrt(1.0 + g * g) + sign) / ((n + 1) * pi);
    const double wtr = (n + 1) * pi - sign * pz / fp.momentum_scale();
    return {n, pz, wtr / fp.omega(), family_of(n), 0.0};
}

SoftRecollision solve_soft_recollision(int n, const FieldParams& fp) {
    SoftRecollision sr = linearized_soft_recollision(n, fp);
    double pz = sr.pz_sr;
    double tr = sr.tr;
    const double max_dt = 0.25 * pi / fp.omega();
    for (int it = 0; it < kSoftRecollisionMaxIterations; ++it) {
        const SrResidual r = sr_residual(pz, tr, fp);
        const double res = std::max(std::abs(r.g1), std::abs(r.g2));
        // [[d1_dpz, d1_dtr], [1, d2_dtr]] (dpz, dtr) = -(g1, g2)
        const double det = r.d1_dpz * r.d2_dtr - r.d1_dtr;
        if (det == 0.0 || !std::isfinite(det)) break;
        double dpz = (-r.g1 * r.d2_dtr + r.d1_dtr * r.g2) / det;
        double dtr = (-r.d1_dpz * r.g2 + r.g1) / det;
        if (std::abs(dtr) > max_dt) {
            const double scale = max_dt / std::abs(dtr);
            dpz *= scale;
            dtr *= scale;
        }
        const bool small_step = std::abs(dpz) <= 1e-15 * std::max(1.0, std::abs(pz)) &&
                                std::abs(dtr) <= 1e-14 * std::max(1.0, std::abs(tr));
        if (res < kSoftRecollisionTolerance && small_step) {
            sr.pz_sr = pz;
            sr.tr = tr;
            sr.residual = res;
            return sr;
        }
        pz += dpz;
        tr += dtr;
        if (!std::isfinite(pz) || !std::isfinite(tr)) break;
    }
    const SrResidual last = sr_residual(pz, tr, fp);
    const double res = std::max(std::abs(last.g1), std::abs(last.g2));
    if (res < kSoftRecollisionTolerance) {
        sr.pz_sr = pz;
        sr.tr = tr;
        sr.residual = res;
        return sr;
    }
    throw NumericalError("soft recollision n=" + std::to_string(n) +
                         " did not converge at gamma=" + std::to_string(fp.gamma()));
}

std::vector<double> universal_ratios(Family family, int count, const FieldParams& fp) {
    std::vector<double> out;
    int n = family == Family::odd ? 1 : 2;
    double prev = solve_soft_recollision(n, fp).pz_sr;
    for (int k = 0; k < count; ++k) {
        n += 2;
        const double next = solve_soft_recollision(n, fp).pz_sr;
        out.push_back(next / prev);
        prev = next;
    }
    return out;
}

const char* to_string(CAKind k) noexcept {
    switch (k) {
        case CAKind::turning_min: return "turning-min";
        case CAKind::turning_max: return "turning-max";
        case CAKind::collision: return "collision";
    }
    return "?";
}

double classical_ca_function(double t, const Momentum& p, const FieldParams& fp) {
    const Orbit orbit(p, fp);
    return p.px * p.px * (t - orbit.saddle().t0()) + orbit.z(t).real() * orbit.vz(t).real();
}

std::vector<ClassicalCAPoint> classical_ca_scan(const Momentum& p, RealWindow window,
                                                const FieldParams& fp) {
    std::vector<ClassicalCAPoint> out;
    if (!(window.hi > window.lo)) return out;

    const Orbit orbit(p, fp);
    const double t0 = orbit.saddle().t0();
    const double F = fp.field();
    const double w = fp.omega();
    const double px2 = p.px * p.px;

    auto rez = [&](double t) { return orbit.z(t).real(); };
    auto vz = [&](double t) { return p.pz - fp.momentum_scale() * std::sin(w * t); };
    auto g = [&](double t) { return px2 * (t - t0) + rez(t) * vz(t); };
    auto g1 = [&](double t) { return px2 + vz(t) * vz(t) - F * std::cos(w * t) * rez(t); };

    boost::math::tools::eps_tolerance<double> tol(52);
    auto bracket_root = [&](auto&& fn, double a, double b, double fa, double fb) {
        std::uintmax_t iters = 200;
        auto r = boost::math::tools::toms748_solve(fn, a, b, fa, fb, tol, iters);
        return 0.5 * (r.first + r.second);
    };

    const double zero_tol = 1e-10;

    if (p.px == 0.0) {
        // r.v factorizes into Re z times v_z: turning points and collisions.
        std::vector<double> turning;
        const double s = p.pz / fp.momentum_scale();
        if (std::abs(s) <= 1.0) {
            const double a = std::asin(s);
            const int kmin = static_cast<int>(std::floor((w * window.lo - pi) / (2 * pi))) - 1;
            const int kmax = static_cast<int>(std::ceil(w * window.hi / (2 * pi))) + 1;
            for (int k = kmin; k <= kmax; ++k) {
                for (double phase : {a, pi - a}) {
                    const double t = (phase + 2 * pi * k) / w;
                    if (t >= window.lo && t <= window.hi) turning.push_back(t);
                }
            }
            std::sort(turning.begin(), turning.end());
            turning.erase(std::unique(turning.begin(), turning.end(),
                                      [](double x, double y) { return std::abs(x - y) < 1e-12; }),
                          turning.end());
        }
        for (double t : turning) {
            const double zz = rez(t);
            CAKind kind = CAKind::collision;
            if (std::abs(zz) >= zero_tol) {
                kind = -F * std::cos(w * t) * zz > 0 ? CAKind::turning_min : CAKind::turning_max;
            }
            out.push_back({t, kind, p});
        }
        std::vector<double> knots{window.lo};
        knots.insert(knots.end(), turning.begin(), turning.end());
        knots.push_back(window.hi);
        for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
            const double a = knots[i];
            const double b = knots[i + 1];
            const double za = rez(a);
            const double zb = rez(b);
            if (std::abs(za) < zero_tol || std::abs(zb) < zero_tol) continue;
            if ((za < 0) != (zb < 0)) {
                out.push_back({bracket_root(rez, a, b, za, zb), CAKind::collision, p});
            }
        }
        std::sort(out.begin(), out.end(),
                  [](const ClassicalCAPoint& x, const ClassicalCAPoint& y) { return x.t < y.t; });
        return out;
    }

    // Critical points of g split the window into monotone pieces; they are
    // bracketed on a grid of g' fine enough to resolve every oscillation.
    const double span = window.hi - window.lo;
    const int samples = std::max(2000, static_cast<int>(2000.0 * span * w / (2 * pi)));
    std::vector<Extremum> knots{{window.lo, g(window.lo)}};
    double ta = window.lo;
    double da = g1(ta);
    for (int i = 1; i <= samples; ++i) {
        const double tb = window.lo + span * i / samples;
        const double db = g1(tb);
        if (da != 0.0 && (da < 0) != (db < 0)) {
            const double tc = db == 0.0 ? tb : bracket_root(g1, ta, tb, da, db);
            knots.push_back({tc, g(tc)});
        }
        ta = tb;
        da = db;
    }
    knots.push_back({window.hi, g(window.hi)});

    auto classify = [&](double t) {
        const double slope = g1(t);
        if (slope < 0) return CAKind::turning_max;
        const double rex = p.px * (t - t0);
        return std::abs(rez(t)) < std::abs(rex) ? CAKind::collision : CAKind::turning_min;
    };

    for (std::size_t i = 0; i < knots.size(); ++i) {
        const bool interior = i > 0 && i + 1 < knots.size();
        if (std::abs(knots[i].g) < zero_tol) {
            if (interior) {
                // Tangential contact: the two roots have merged.
                out.push_back({knots[i].t, CAKind::turning_max, p});
                const double rex = p.px * (knots[i].t - t0);
                out.push_back({knots[i].t,
                               std::abs(rez(knots[i].t)) < std::abs(rex) ? CAKind::collision
                                                                          : CAKind::turning_min,
                               p});
            } else {
                out.push_back({knots[i].t, classify(knots[i].t), p});
            }
            continue;
        }
        if (i + 1 == knots.size()) break;
        const Extremum& a = knots[i];
        const Extremum& b = knots[i + 1];
        if (std::abs(b.g) < zero_tol) continue;
        if ((a.g < 0) != (b.g < 0)) {
            const double t = bracket_root(g, a.t, b.t, a.g, b.g);
            out.push_back({t, classify(t), p});
        }
    }
    return out;
}

}  // namespace slalom
