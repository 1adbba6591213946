#include "slalom/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace slalom {

namespace {

constexpr double pi = std::numbers::pi;

bool in_first_half_cycle(cplx t, double w) {
    const double wr = w * t.real();
    return -0.5 * pi < wr && wr < 0.5 * pi;
}

}  // namespace

const char* to_string(Navigator n) noexcept {
    return n == Navigator::automatic ? "automatic" : "standard";
}

double default_detection_time(const SaddleSolution& s, const FieldParams& fp, double periods) {
    return s.t0() + periods * fp.period();
}

std::vector<CAPoint> select_gates(const std::vector<CAPoint>& roots, const SaddleSolution& s,
                                  const FieldParams& fp, double u) {
    const double w = fp.omega();
    const double tau = s.tunnel_time();
    const double wt0 = w * s.t0();
    std::vector<CAPoint> out;
    for (const CAPoint& c : roots) {
        if (c.excluded()) continue;
        const double wr = w * c.t.real();
        const double im = c.t.imag();
        const bool rule1 = wr > wt0 + pi / 5 && -tau / 3 < im && im <= s.t_kappa.imag() && c.re_v2 > -u;
        const bool rule2 = -0.5 * pi < wr && wr < 0.5 * pi && 0.0 <= im && im < tau;
        const bool rule3 = 0.5 * pi < wr && wr < 1.5 * pi && im > 0.0;
        if (rule1 || rule2 || rule3) out.push_back(c);
    }
    std::sort(out.begin(), out.end(),
              [](const CAPoint& a, const CAPoint& b) { return a.t.real() < b.t.real(); });
    return out;
}

ContourPath build_contour(const std::vector<CAPoint>& gates, const SaddleSolution& s,
                          const FieldParams& fp, double T, bool from_t_kappa) {
    ContourPath path;
    path.nodes.push_back(from_t_kappa ? s.t_kappa : s.ts);
    const double w = fp.omega();
    const bool early_gate = std::any_of(gates.begin(), gates.end(),
                                        [&](const CAPoint& c) { return in_first_half_cycle(c.t, w); });
    if (!early_gate) path.nodes.push_back(cplx(s.t0(), 0.0));
    for (const CAPoint& c : gates) {
        if (std::abs(c.t - s.ts) < 1e-6 / w || c.t.real() > T) continue;
        path.nodes.push_back(c.t);
        path.selected_ca.push_back(c);
    }
    path.nodes.push_back(cplx(T, 0.0));
    return path;
}

ContourPath standard_contour(const SaddleSolution& s, double T, bool from_t_kappa) {
    ContourPath path;
    path.nodes = {from_t_kappa ? s.t_kappa : s.ts, cplx(s.t0(), 0.0), cplx(T, 0.0)};
    return path;
}

ContourPath navigate(const Orbit& orbit, double T, const NavigationOptions& opts) {
    const SaddleSolution& s = orbit.saddle();
    const FieldParams& fp = orbit.field();
    const auto roots = find_ca_roots(orbit, default_ca_window(s, fp, T), opts.roots);
    return build_contour(select_gates(roots, s, fp, opts.gate_tolerance), s, fp, T);
}

ValidationReport validate_contour(const ContourPath& path, const Orbit& orbit, int samples) {
    ValidationReport rep;
    const auto& nodes = path.nodes;
    if (nodes.size() < 2) return rep;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) total += std::abs(nodes[i + 1] - nodes[i]);

    double nearest = std::numeric_limits<double>::infinity();
    int segment = 0;
    cplx last;
    cplx cont;
    const auto visit = [&](cplx principal) {
        nearest = std::min(nearest, std::abs(principal));
        ++rep.samples;
        if (std::abs(principal - last) > std::abs(principal + last)) {
            ++rep.flips;
            if (rep.first_bad_segment < 0) rep.first_bad_segment = segment;
        }
        cont = std::abs(principal - cont) > std::abs(principal + cont) ? -principal : principal;
        last = principal;
        const double mag = std::abs(cont);
        if (mag > 0) rep.max_jump = std::max(rep.max_jump, std::abs(principal - cont) / mag);
    };
    // A cut crossed close to a branch point shows up only on a fine scale, so
    // steps where sqrt(r^2) changes by more than a quarter of its size are
    // bisected until it settles or the step is negligible.
    const auto refine = [&](auto&& self, cplx a, cplx fa, cplx b, cplx fb, int depth) -> void {
        if (depth < 40 && std::abs(fb - fa) > 0.25 * std::min(std::abs(fa), std::abs(fb))) {
            const cplx m = 0.5 * (a + b);
            const cplx fm = std::sqrt(orbit.r2(m));
            self(self, a, fa, m, fm, depth + 1);
            self(self, m, fm, b, fb, depth + 1);
            return;
        }
        visit(fb);
    };

    cplx prev_t = nodes.front();
    cplx prev_f = std::sqrt(orbit.r2(prev_t));
    last = cont = prev_f;
    nearest = std::abs(prev_f);
    rep.samples = 1;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        segment = static_cast<int>(i);
        const cplx a = nodes[i];
        const cplx b = nodes[i + 1];
        const double len = std::abs(b - a);
        const int n = std::max(64, total > 0 ? static_cast<int>(samples * len / total) : 64);
        for (int k = 1; k <= n; ++k) {
            const cplx t = a + (b - a) * (static_cast<double>(k) / n);
            const cplx f = std::sqrt(orbit.r2(t));
            refine(refine, prev_t, prev_f, t, f, 0);
            prev_t = t;
            prev_f = f;
        }
    }
    rep.continuous = rep.flips == 0;
    rep.nearest_singularity_distance = nearest;
    rep.near_singularity = nearest < kNearSingularityRadius;
    return rep;
}

}  // namespace slalom
