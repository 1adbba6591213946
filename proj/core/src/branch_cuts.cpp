#include "slalom/branch_cuts.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "slalom/error.hpp"

namespace slalom {

namespace {

constexpr double pi = std::numbers::pi;

bool across_cut(cplx a, cplx b) noexcept { return std::abs(a - b) > std::abs(a + b); }

}  // namespace

cplx DistanceField::node(int ix, int iy) const noexcept {
    const double re = region.re_lo + (region.re_hi - region.re_lo) * ix / (nx - 1);
    const double im = region.im_lo + (region.im_hi - region.im_lo) * iy / (ny - 1);
    return {re, im};
}

DistanceField distance_field(const Orbit& orbit, const TimeWindow& region, int nx, int ny) {
    if (nx < 2 || ny < 2) throw DomainError("distance field needs at least 2x2 nodes");
    if (!(region.re_hi > region.re_lo) || !(region.im_hi > region.im_lo)) {
        throw DomainError("distance field region is empty");
    }
    DistanceField f;
    f.region = region;
    f.nx = nx;
    f.ny = ny;
    const std::size_t n = static_cast<std::size_t>(nx) * ny;
    f.values.resize(n);
    f.cut_flags.assign(n, 0);
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix)
            f.values[static_cast<std::size_t>(iy) * nx + ix] = std::sqrt(orbit.r2(f.node(ix, iy)));
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const cplx a = f.at(ix, iy);
            const bool right = ix + 1 < nx && across_cut(a, f.at(ix + 1, iy));
            const bool up = iy + 1 < ny && across_cut(a, f.at(ix, iy + 1));
            if (right || up) f.cut_flags[static_cast<std::size_t>(iy) * nx + ix] = 1;
        }
    }
    return f;
}

int count_flag_clusters(const DistanceField& f) {
    std::vector<unsigned char> seen(f.cut_flags.size(), 0);
    std::vector<std::pair<int, int>> stack;
    int clusters = 0;
    for (int iy = 0; iy < f.ny; ++iy) {
        for (int ix = 0; ix < f.nx; ++ix) {
            const std::size_t k = static_cast<std::size_t>(iy) * f.nx + ix;
            if (!f.cut_flags[k] || seen[k]) continue;
            ++clusters;
            seen[k] = 1;
            stack.assign(1, {ix, iy});
            while (!stack.empty()) {
                const auto [cx, cy] = stack.back();
                stack.pop_back();
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int x = cx + dx;
                        const int y = cy + dy;
                        if (x < 0 || y < 0 || x >= f.nx || y >= f.ny) continue;
                        const std::size_t j = static_cast<std::size_t>(y) * f.nx + x;
                        if (f.cut_flags[j] && !seen[j]) {
                            seen[j] = 1;
                            stack.push_back({x, y});
                        }
                    }
                }
            }
        }
    }
    return clusters;
}

std::vector<BranchPoint> find_branch_points(const Orbit& orbit, const TimeWindow& window) {
    std::vector<BranchPoint> out;
    const double pperp = std::abs(orbit.momentum().px);
    if (pperp == 0.0) return out;
    const double w = orbit.field().omega();
    const cplx ts = orbit.saddle().ts;
    const double dedup = 1e-6 / w;
    constexpr int nr = 40;
    constexpr int ni = 20;
    for (CutFamily fam : {CutFamily::plus, CutFamily::minus}) {
        const cplx ip = (fam == CutFamily::plus ? 1.0 : -1.0) * cplx(0.0, pperp);
        auto g = [&](cplx t) { return orbit.z(t) - ip * (t - ts); };
        auto dg = [&](cplx t) { return orbit.vz(t) - ip; };
        for (int i = 0; i < nr; ++i) {
            for (int j = 0; j < ni; ++j) {
                cplx t(window.re_lo + (window.re_hi - window.re_lo) * i / (nr - 1),
                       window.im_lo + (window.im_hi - window.im_lo) * j / (ni - 1));
                bool converged = false;
                for (int it = 0; it < 60; ++it) {
                    const cplx d = g(t) / dg(t);
                    if (!std::isfinite(d.real()) || !std::isfinite(d.imag())) break;
                    t -= d;
                    if (std::abs(d) < 1e-13 * std::max(1.0, std::abs(t))) {
                        converged = true;
                        break;
                    }
                }
                if (!converged) continue;
                // One more step lands on the floating-point floor of g.
                t -= g(t) / dg(t);
                if (!window.contains(t) || std::abs(t - ts) < dedup) continue;
                const bool dup = std::any_of(out.begin(), out.end(), [&](const BranchPoint& b) {
                    return std::abs(b.t - t) < dedup;
                });
                if (!dup) out.push_back({t, fam});
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const BranchPoint& a, const BranchPoint& b) { return a.t.real() < b.t.real(); });
    return out;
}

CutCurve trace_cut(const BranchPoint& bp, const Orbit& orbit, const TimeWindow& bounds,
                   const TraceOptions& opts) {
    const double w = orbit.field().omega();
    const double im_max = 3.0 * orbit.saddle().tunnel_time();
    const double h_max = opts.max_step / w;
    const double h_min = opts.min_step / w;

    CutCurve cut;
    cut.points.push_back(bp.t);

    const cplx c = orbit.r2_prime(bp.t);
    if (std::abs(c) == 0.0) throw NumericalError("branch point is a double zero of r^2");
    // Near the branch point r^2 ~ c (t - t_b); the negative real ray runs along -1/c.
    cplx dir = -std::conj(c) / std::abs(c);
    cplx prev = bp.t;
    double h = opts.initial_step / w;

    auto correct = [&](cplx t, cplx& out) {
        for (int k = 0; k < 30; ++k) {
            const cplx g = orbit.r2(t);
            const cplx gp = orbit.r2_prime(t);
            const double agp = std::abs(gp);
            if (agp == 0.0) return false;
            if (std::abs(g.imag()) < opts.tolerance * std::abs(g)) {
                out = t;
                return g.real() < 0.0;
            }
            const double s = -g.imag() / agp;
            t += cplx(0.0, s) * std::conj(gp) / agp;
        }
        return false;
    };

    while (static_cast<int>(cut.points.size()) < opts.max_points) {
        cplx next;
        if (!correct(prev + h * dir, next) || std::abs(next - prev) > 2.0 * h) {
            h *= 0.5;
            if (h < h_min) throw NumericalError("cut tracing step underflow near another branch point");
            continue;
        }
        if (cut.points.size() > 1 && prev.imag() != 0.0 && (prev.imag() > 0) != (next.imag() > 0)) {
            cut.crosses_real_axis = true;
        }
        cut.points.push_back(next);
        prev = next;
        if (next.real() < bounds.re_lo || next.real() > bounds.re_hi || std::abs(next.imag()) > im_max)
            break;
        const cplx gp = orbit.r2_prime(next);
        dir = -std::conj(gp) / std::abs(gp);
        h = std::min(1.5 * h, h_max);
    }
    return cut;
}

const char* to_string(Topology t) noexcept { return t == Topology::open ? "open" : "closed"; }

TimeWindow first_recollision_window(const SaddleSolution& s, const FieldParams& fp) {
    return phase_window(s, fp, 1.5 * pi, 2.5 * pi);
}

TopologyReport classify_topology(const Orbit& orbit, const TimeWindow& recollision_window,
                                 const TopologyOptions& opts) {
    TopologyReport rep;
    RootFinderOptions ro;
    ro.seeds_re = 30;
    ro.seeds_im = 20;
    for (const CAPoint& c : find_ca_roots(orbit, recollision_window, ro))
        if (!c.excluded()) rep.gates.push_back(c);

    if (rep.gates.size() == 3) {
        const bool first = rep.gates.front().re_v2 > 0.0;
        const bool last = rep.gates.back().re_v2 > 0.0;
        rep.by_velocity = first && last ? Topology::closed : Topology::open;
        if (first != last) rep.note = "outer gates disagree on the sign of Re v^2";
    } else {
        rep.note = "recollision window holds " + std::to_string(rep.gates.size()) +
                   " gates instead of three";
    }

    if (opts.trace_cuts) {
        const double tau = orbit.saddle().tunnel_time();
        TimeWindow bw = recollision_window;
        bw.im_lo = -3.0 * tau;
        bw.im_hi = 3.0 * tau;
        rep.branch_points = find_branch_points(orbit, bw);
        bool crosses = false;
        for (const BranchPoint& bp : rep.branch_points) {
            rep.cuts.push_back(trace_cut(bp, orbit, bw));
            crosses = crosses || rep.cuts.back().crosses_real_axis;
        }
        rep.by_cuts = crosses ? Topology::closed : Topology::open;
    }

    if (rep.by_velocity) {
        rep.topology = *rep.by_velocity;
    } else if (rep.by_cuts) {
        rep.topology = *rep.by_cuts;
    }
    rep.consistent = !(rep.by_velocity && rep.by_cuts) || *rep.by_velocity == *rep.by_cuts;
    if (!rep.consistent) {
        if (!rep.note.empty()) rep.note += "; ";
        rep.note += "velocity and cut-tracing criteria disagree";
    }
    return rep;
}

}  // namespace slalom
