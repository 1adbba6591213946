#include "slalom/closest_approach.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace slalom {

namespace {

constexpr double pi = std::numbers::pi;

bool newton_ca(const Orbit& orbit, cplx& t, int max_iterations, double scale_limit) {
    const cplx start = t;
    for (int it = 0; it < max_iterations; ++it) {
        const cplx d = orbit.ca_derivative(t);
        if (d == 0.0) return false;
        const cplx step = orbit.ca_function(t) / d;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return false;
        t -= step;
        if (std::abs(t - start) > scale_limit) return false;
        if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(t))) return true;
    }
    return true;
}

double min_spacing(const std::vector<cplx>& v) {
    double sp = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) sp = std::min(sp, std::abs(v[i] - v[j]));
    return sp;
}

}  // namespace

TimeWindow default_ca_window(const SaddleSolution& s, const FieldParams& fp, double T) {
    const double w = fp.omega();
    const double tau = s.tunnel_time();
    return {s.t0() - 0.5 * pi / w, T, -2.0 * tau, 2.0 * tau};
}

TimeWindow phase_window(const SaddleSolution& s, const FieldParams& fp, double omega_lo,
                        double omega_hi) {
    const double tau = s.tunnel_time();
    return {omega_lo / fp.omega(), omega_hi / fp.omega(), -2.0 * tau, 2.0 * tau};
}

bool polish_ca_root(const Orbit& orbit, cplx& t, int max_iterations) {
    const double limit = 1e3 / orbit.field().omega();
    if (!newton_ca(orbit, t, max_iterations, limit)) return false;
    return std::abs(orbit.ca_function(t)) < 1e-10;
}

CAPoint make_ca_point(const Orbit& orbit, cplx t) {
    CAPoint c;
    c.t = t;
    c.re_v2 = orbit.v2(t).real();
    const double im_tol = 1e-12 * std::max(1.0, std::abs(t));
    c.im_sign = t.imag() > im_tol ? 1 : (t.imag() < -im_tol ? -1 : 0);
    c.residual = std::abs(orbit.ca_function(t));
    const SaddleSolution& s = orbit.saddle();
    const double w = orbit.field().omega();
    if (std::abs(t - s.ts) < 1e-6 / w) {
        c.flags |= ca_saddle;
    } else if (std::abs(t - std::conj(s.ts)) < 0.2 * s.tunnel_time()) {
        c.flags |= ca_conjugate_saddle;
    }
    return c;
}

std::vector<CAPoint> find_ca_roots(const Orbit& orbit, const TimeWindow& window,
                                   const RootFinderOptions& opts) {
    const double w = orbit.field().omega();
    const double dedup = opts.dedup / w;
    const double diag = std::hypot(window.re_hi - window.re_lo, window.im_hi - window.im_lo);
    const double limit = std::max(10.0 * diag, 10.0 / w);
    std::vector<CAPoint> out;
    const int nr = std::max(opts.seeds_re, 2);
    const int ni = std::max(opts.seeds_im, 2);
    for (int i = 0; i < nr; ++i) {
        const double re = window.re_lo + (window.re_hi - window.re_lo) * i / (nr - 1);
        for (int j = 0; j < ni; ++j) {
            const double im = window.im_lo + (window.im_hi - window.im_lo) * j / (ni - 1);
            cplx t(re, im);
            if (!newton_ca(orbit, t, opts.max_iterations, limit)) continue;
            if (!window.contains(t)) continue;
            if (std::abs(orbit.ca_function(t)) >= opts.residual_tolerance) continue;
            const bool dup = std::any_of(out.begin(), out.end(), [&](const CAPoint& c) {
                return std::abs(c.t - t) < dedup;
            });
            if (!dup) out.push_back(make_ca_point(orbit, t));
        }
    }
    std::sort(out.begin(), out.end(), [](const CAPoint& a, const CAPoint& b) {
        return a.t.real() < b.t.real() || (a.t.real() == b.t.real() && a.t.imag() < b.t.imag());
    });
    return out;
}

std::vector<CAPoint> find_ca_roots(const Momentum& p, const SaddleSolution& s,
                                   const FieldParams& fp, const TimeWindow& window,
                                   const RootFinderOptions& opts) {
    return find_ca_roots(Orbit(p, fp, s), window, opts);
}

namespace {

class GateTracker {
public:
    explicit GateTracker(const FieldParams& fp) : fp_(fp) {}

    // Moves the roots from momentum a to momentum b, halving the step until
    // every root moves by less than a third of the current root spacing.
    std::vector<cplx> advance(const std::vector<cplx>& roots, Momentum a, Momentum b,
                              int depth = 0) {
        if (depth > 30) throw TrackingError("monodromy step underflow");
        const Orbit orbit(b, fp_);
        std::vector<cplx> moved = roots;
        bool ok = true;
        for (cplx& t : moved) {
            if (!polish_ca_root(orbit, t, 50)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            double shift = 0.0;
            for (std::size_t i = 0; i < roots.size(); ++i)
                shift = std::max(shift, std::abs(moved[i] - roots[i]));
            ok = shift < 0.3 * min_spacing(moved);
        }
        ++substeps_;
        if (ok) return moved;
        const Momentum mid{0.5 * (a.px + b.px), 0.5 * (a.pz + b.pz)};
        return advance(advance(roots, a, mid, depth + 1), mid, b, depth + 1);
    }

    int substeps() const noexcept { return substeps_; }

private:
    FieldParams fp_;
    int substeps_ = 0;
};

}  // namespace

MonodromyResult monodromy_test(const Momentum& center, double radius, int steps,
                               const FieldParams& fp, int turns) {
    if (steps < 4) steps = 4;
    std::vector<Momentum> loop;
    for (int k = 0; k <= steps; ++k) {
        const double th = -0.5 * pi + pi * k / steps;
        loop.push_back({center.px + radius * std::cos(th), center.pz + radius * std::sin(th)});
    }
    for (int k = 1; k <= steps; ++k) {
        loop.push_back({center.px, center.pz + radius - 2.0 * radius * k / steps});
    }

    const Momentum start = loop.front();
    const Orbit orbit(start, fp);
    RootFinderOptions opts;
    opts.seeds_re = 30;
    opts.seeds_im = 20;
    const auto found = find_ca_roots(orbit, phase_window(orbit.saddle(), fp, 1.5 * pi, 2.5 * pi), opts);
    if (found.size() != 3) {
        throw TrackingError("expected three gate roots at the loop start, found " +
                            std::to_string(found.size()));
    }

    MonodromyResult res;
    for (const auto& c : found) res.start_roots.push_back(c.t);
    std::vector<cplx> cur = res.start_roots;
    GateTracker tracker(fp);
    for (int turn = 0; turn < turns; ++turn) {
        for (std::size_t k = 1; k < loop.size(); ++k) cur = tracker.advance(cur, loop[k - 1], loop[k]);
    }
    res.end_roots = cur;
    res.steps_taken = tracker.substeps();

    const double sp = min_spacing(res.start_roots);
    for (const cplx& e : cur) {
        int best = 0;
        for (int j = 1; j < 3; ++j)
            if (std::abs(e - res.start_roots[j]) < std::abs(e - res.start_roots[best])) best = j;
        if (std::abs(e - res.start_roots[best]) > 1e-3 * sp)
            throw TrackingError("tracked root did not return to a starting root");
        res.permutation.push_back(best);
    }
    std::vector<int> sorted = res.permutation;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::vector<int>{0, 1, 2}) throw TrackingError("tracked roots collided");
    return res;
}

bool is_three_cycle(const std::vector<int>& perm) {
    if (perm.size() != 3) return false;
    for (int i = 0; i < 3; ++i)
        if (perm[i] == i) return false;
    return true;
}

}  // namespace slalom
