#include "slalom/frontend/serialize.hpp"

#include <cmath>

namespace slalom::frontend {

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json complex_list(const std::vector<cplx>& zs) {
    json out = json::array();
    for (cplx z : zs) out.push_back(to_json(z));
    return out;
}

const char* family_name(CutFamily f) { return f == CutFamily::plus ? "plus" : "minus"; }

}  // namespace

json to_json(cplx z) { return {{"re", num(z.real())}, {"im", num(z.imag())}}; }

cplx complex_from_json(const json& j) {
    if (j.is_array() && j.size() == 2) return {j.at(0).get<double>(), j.at(1).get<double>()};
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

json to_json(const FieldParams& fp) {
    return {{"F", num(fp.field())},          {"omega", num(fp.omega())},
            {"kappa", num(fp.kappa())},      {"Ip", num(fp.ip())},
            {"Z", num(fp.charge())},         {"gamma", num(fp.gamma())},
            {"Up", num(fp.ponderomotive())}, {"z_quiv", num(fp.quiver_radius())},
            {"period", num(fp.period())}};
}

json to_json(const Momentum& p) { return {{"px", num(p.px)}, {"pz", num(p.pz)}}; }

json to_json(const SaddleSolution& s) {
    return {{"ts", to_json(s.ts)},
            {"t_kappa", to_json(s.t_kappa)},
            {"t0", num(s.t0())},
            {"tunnel_time", num(s.tunnel_time())},
            {"z_exit", num(s.z_exit)}};
}

json to_json(const SoftRecollision& sr) {
    return {{"n", sr.n},
            {"family", sr.family == Family::odd ? "odd" : "even"},
            {"pz_sr", num(sr.pz_sr)},
            {"tr", num(sr.tr)},
            {"residual", num(sr.residual)}};
}

json to_json(const CAPoint& c) {
    json flags = json::array();
    if (c.flags & ca_saddle) flags.push_back("saddle");
    if (c.flags & ca_conjugate_saddle) flags.push_back("conjugate_saddle");
    return {{"t", to_json(c.t)},
            {"re_v2", num(c.re_v2)},
            {"im_sign", c.im_sign},
            {"residual", num(c.residual)},
            {"flags", flags}};
}

json to_json(const std::vector<CAPoint>& cs) {
    json out = json::array();
    for (const CAPoint& c : cs) out.push_back(to_json(c));
    return out;
}

json to_json(const ContourPath& path) {
    return {{"nodes", complex_list(path.nodes)}, {"selected_ca", to_json(path.selected_ca)}};
}

json to_json(const ValidationReport& r) {
    return {{"continuous", r.continuous},
            {"flips", r.flips},
            {"max_jump", num(r.max_jump)},
            {"nearest_singularity_distance", num(r.nearest_singularity_distance)},
            {"near_singularity", r.near_singularity},
            {"first_bad_segment", r.first_bad_segment},
            {"samples", r.samples}};
}

json to_json(const AmplitudeBreakdown& a) {
    return {{"p", to_json(a.p)},
            {"saddle", to_json(a.saddle)},
            {"detection_time", num(a.detection_time)},
            {"bound_phase", to_json(a.bound_phase)},
            {"kinetic_action", to_json(a.kinetic_action)},
            {"coulomb_action", to_json(a.coulomb_action)},
            {"log_amplitude", num(a.log_amplitude)},
            {"yield", num(a.yield)},
            {"log10_yield", num(a.log10_yield())},
            {"sfa_log_amplitude", num(a.sfa_log_amplitude)},
            {"sfa_yield", num(a.sfa_yield)},
            {"sfa_log10_yield", num(a.sfa_log10_yield())},
            {"quadrature_error", num(a.quadrature_error)},
            {"contour", to_json(a.contour)},
            {"validation", to_json(a.validation)}};
}

json to_json(const BranchPoint& b) { return {{"t", to_json(b.t)}, {"family", family_name(b.family)}}; }

json to_json(const CutCurve& c) {
    return {{"points", complex_list(c.points)}, {"crosses_real_axis", c.crosses_real_axis}};
}

json to_json(const TopologyReport& r) {
    json bps = json::array();
    for (const auto& b : r.branch_points) bps.push_back(to_json(b));
    json cuts = json::array();
    for (const auto& c : r.cuts) cuts.push_back(to_json(c));
    const auto opt = [](const std::optional<Topology>& t) { return t ? json(to_string(*t)) : json(nullptr); };
    return {{"topology", to_string(r.topology)},
            {"by_velocity", opt(r.by_velocity)},
            {"by_cuts", opt(r.by_cuts)},
            {"consistent", r.consistent},
            {"gates", to_json(r.gates)},
            {"branch_points", bps},
            {"cuts", cuts},
            {"note", r.note}};
}

json to_json(const TimeWindow& w) {
    return {{"re_lo", num(w.re_lo)}, {"re_hi", num(w.re_hi)}, {"im_lo", num(w.im_lo)}, {"im_hi", num(w.im_hi)}};
}

json to_json(const DistanceField& f) {
    std::vector<json> re, im;
    re.reserve(f.values.size());
    im.reserve(f.values.size());
    for (cplx v : f.values) {
        re.push_back(num(v.real()));
        im.push_back(num(v.imag()));
    }
    std::vector<int> flags(f.cut_flags.begin(), f.cut_flags.end());
    return {{"region", to_json(f.region)}, {"nx", f.nx}, {"ny", f.ny}, {"re", re}, {"im", im}, {"flags", flags}};
}

}  // namespace slalom::frontend
