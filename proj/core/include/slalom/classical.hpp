#pragma once

// Classical soft recollisions (simultaneous zero of position and velocity on
// the polarization axis) and the real closest-approach surface of the
// laser-driven trajectory.

#include <vector>

#include "slalom/field.hpp"

namespace slalom {

enum class Family { odd, even };

constexpr Family family_of(int n) noexcept { return n % 2 ? Family::odd : Family::even; }

struct SoftRecollision {
    int n = 0;
    double pz_sr = 0.0;
    /// Real recollision time, omega t_r ~ (n+1) pi.
    double tr = 0.0;
    Family family = Family::odd;
    /// Largest absolute residual of the two defining equations.
    double residual = 0.0;
};

/// p_z^sr ~ (F/omega)(sqrt(1+gamma^2) + (-1)^n) / ((n+1) pi), with the
/// matching first-order recollision time.
SoftRecollision linearized_soft_recollision(int n, const FieldParams& fp);

/// Two-dimensional Newton solve for (p_z, t_r) with the tunnel exit taken from
/// the full complex saddle. Throws DomainError for n < 1 and NumericalError
/// after 200 iterations without convergence.
SoftRecollision solve_soft_recollision(int n, const FieldParams& fp);

/// Ratios p(n+2)/p(n) of consecutive exact momenta in one family, starting
/// from n = 1 (odd) or n = 2 (even).
std::vector<double> universal_ratios(Family family, int count, const FieldParams& fp);

enum class CAKind { turning_min, turning_max, collision };

const char* to_string(CAKind k) noexcept;

struct ClassicalCAPoint {
    double t = 0.0;
    CAKind kind = CAKind::collision;
    Momentum p;
};

struct RealWindow {
    double lo = 0.0;
    double hi = 0.0;
};

/// Real roots of Re[r_cl(t)].v(t) inside the window, ascending in t. A root of
/// multiplicity two is reported twice.
std::vector<ClassicalCAPoint> classical_ca_scan(const Momentum& p, RealWindow window,
                                                const FieldParams& fp);

/// Re[r_cl(t)].v(t) for real t; exposed for diagnostics and tests.
double classical_ca_function(double t, const Momentum& p, const FieldParams& fp);

}  // namespace slalom
