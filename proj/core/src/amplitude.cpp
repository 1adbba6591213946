#include "slalom/amplitude.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "slalom/error.hpp"

namespace slalom {

namespace {

constexpr cplx I{0.0, 1.0};

cplx integrate_coulomb(const ContourPath& path, const Orbit& orbit, const QuadratureOptions& quad,
                       double* error_estimate) {
    const PathIntegral r =
        integrate_path([&](cplx t) { return orbit.coulomb_potential(t); }, path.nodes, quad);
    if (error_estimate) *error_estimate = r.error_estimate;
    return r.value;
}

void require_continuous(const ValidationReport& rep) {
    if (!rep.continuous) {
        throw CutCrossingError("contour crosses a branch cut of sqrt(r^2) on segment " +
                               std::to_string(rep.first_bad_segment));
    }
}

}  // namespace

double AmplitudeBreakdown::log10_yield() const noexcept {
    return 2.0 * log_amplitude / std::numbers::ln10;
}

double AmplitudeBreakdown::sfa_log10_yield() const noexcept {
    return 2.0 * sfa_log_amplitude / std::numbers::ln10;
}

cplx coulomb_action(const ContourPath& path, const Orbit& orbit, const QuadratureOptions& quad,
                    double* error_estimate, int validation_samples) {
    if (error_estimate) *error_estimate = 0.0;
    if (orbit.field().charge() == 0.0) return 0.0;
    require_continuous(validate_contour(path, orbit, validation_samples));
    return integrate_coulomb(path, orbit, quad, error_estimate);
}

cplx sfa_exponent(const Orbit& orbit, double T) {
    const SaddleSolution& s = orbit.saddle();
    return I * orbit.field().ip() * s.ts -
           I * kinetic_action(s.ts, cplx(T, 0.0), orbit.momentum(), orbit.field());
}

AmplitudeBreakdown amplitude_along(const Orbit& orbit, const ContourPath& path,
                                   const AmplitudeOptions& opts) {
    if (path.nodes.size() < 2) throw DomainError("contour needs at least two nodes");
    AmplitudeBreakdown out;
    out.p = orbit.momentum();
    out.saddle = orbit.saddle();
    out.detection_time = path.detection_time();
    out.contour = path;
    out.validation = validate_contour(path, orbit, opts.validation_samples);

    const double T = out.detection_time;
    out.bound_phase = I * orbit.field().ip() * out.saddle.ts;
    out.kinetic_action = kinetic_action(out.saddle.ts, cplx(T, 0.0), out.p, orbit.field());
    if (orbit.field().charge() != 0.0) {
        require_continuous(out.validation);
        out.coulomb_action = integrate_coulomb(path, orbit, opts.quadrature, &out.quadrature_error);
    }

    const cplx sfa = out.bound_phase - I * out.kinetic_action;
    out.sfa_log_amplitude = sfa.real();
    out.log_amplitude = (sfa - I * out.coulomb_action).real();
    out.sfa_yield = std::exp(2.0 * out.sfa_log_amplitude);
    out.yield = std::exp(2.0 * out.log_amplitude);
    return out;
}

AmplitudeBreakdown amplitude(const Momentum& p, const FieldParams& fp, const AmplitudeOptions& opts) {
    const Orbit orbit(p, fp);
    const double T = opts.detection_time.value_or(
        default_detection_time(orbit.saddle(), fp, opts.periods));
    if (T < orbit.saddle().t0() + 2.0 * fp.period() - 1e-9) {
        throw DomainError("detection time must lie at least two periods after t_0");
    }
    const ContourPath path = opts.navigator == Navigator::automatic
                                 ? navigate(orbit, T, opts.navigation)
                                 : standard_contour(orbit.saddle(), T);
    return amplitude_along(orbit, path, opts);
}

}  // namespace slalom
