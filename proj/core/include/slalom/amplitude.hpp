#pragma once

// Coulomb-corrected ionization amplitude for a single drift momentum:
//   a(p) ~ exp(i Ip t_s - (i/2) int_{t_s}^T (p+A)^2 dt - i int_{t_kappa}^T U(r_cl) dt)
// with U = -Z / sqrt(r_cl^2) and the shape factor set to one.

#include <optional>

#include "slalom/contour.hpp"
#include "slalom/quadrature.hpp"

namespace slalom {

struct AmplitudeOptions {
    /// Absolute detection time; when empty, t_0 + `periods` laser periods.
    std::optional<double> detection_time;
    double periods = 2.75;
    Navigator navigator = Navigator::automatic;
    NavigationOptions navigation;
    QuadratureOptions quadrature;
    int validation_samples = 10000;
};

struct AmplitudeBreakdown {
    Momentum p;
    SaddleSolution saddle;
    double detection_time = 0.0;
    /// i Ip t_s.
    cplx bound_phase;
    /// 1/2 int_{t_s}^T (p + A)^2 dt, closed form.
    cplx kinetic_action;
    /// int_{t_kappa}^T U dt along the contour.
    cplx coulomb_action;
    /// Re of the full exponent, i.e. ln|a|.
    double log_amplitude = 0.0;
    double yield = 0.0;
    /// Same with the Coulomb term dropped.
    double sfa_log_amplitude = 0.0;
    double sfa_yield = 0.0;
    ContourPath contour;
    ValidationReport validation;
    double quadrature_error = 0.0;

    double log10_yield() const noexcept;
    double sfa_log10_yield() const noexcept;
};

/// Integral of -Z/sqrt(r_cl^2) along the path. Validates the path first and
/// throws CutCrossingError if the principal branch jumps anywhere on it;
/// throws NumericalError when the quadrature cannot converge.
cplx coulomb_action(const ContourPath& path, const Orbit& orbit,
                    const QuadratureOptions& quad = {}, double* error_estimate = nullptr,
                    int validation_samples = 10000);

/// Bare-SFA exponent i Ip t_s - i (W(T) - W(t_s)).
cplx sfa_exponent(const Orbit& orbit, double T);

AmplitudeBreakdown amplitude(const Momentum& p, const FieldParams& fp,
                             const AmplitudeOptions& opts = {});

/// Amplitude along a caller-supplied contour ending on the real axis.
AmplitudeBreakdown amplitude_along(const Orbit& orbit, const ContourPath& path,
                                   const AmplitudeOptions& opts = {});

}  // namespace slalom
