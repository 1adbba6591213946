#pragma once

// Quantum orbits of the strong-field approximation: the ionization saddle
// point, the complex laser-driven trajectory that starts at the origin at the
// saddle time, and the closed-form kinetic action.

#include "slalom/field.hpp"

namespace slalom {

struct SaddleSolution {
    /// Ionization time t_s = t_0 + i tau_T, Im(t_s) > 0.
    cplx ts;
    /// t_s - i / kappa^2, the start of the Coulomb integral.
    cplx t_kappa;
    /// Re z_cl(t_0), the tunnel exit.
    double z_exit;

    double t0() const noexcept { return ts.real(); }
    double tunnel_time() const noexcept { return ts.imag(); }
};

struct ComplexVec3 {
    cplx x;
    cplx y;
    cplx z;

    cplx dot(const ComplexVec3& o) const noexcept { return x * o.x + y * o.y + z * o.z; }
    /// Analytic square, no conjugation.
    cplx norm2() const noexcept { return dot(*this); }
};

/// (1/omega) arcsin((omega/F)(p_z + i kappa_perp)) on the principal branch.
cplx saddle_closed_form(const Momentum& p, const FieldParams& fp);

/// |1/2 (p + A(t))^2 + Ip|.
double saddle_residual(cplx t, const Momentum& p, const FieldParams& fp);

/// Closed-form seed polished by Newton iteration on S_V'(t); throws
/// NumericalError if the residual does not drop below 1e-12 in 100 steps.
SaddleSolution solve_saddle(const Momentum& p, const FieldParams& fp);

/// r_cl(t) = integral from t_s to t of (p + A); an entire function of t.
ComplexVec3 trajectory(cplx t, const Momentum& p, const SaddleSolution& s, const FieldParams& fp);

ComplexVec3 velocity(cplx t, const Momentum& p, const FieldParams& fp);

/// Antiderivative W(t) of 1/2 (p + A(t))^2.
cplx kinetic_antiderivative(cplx t, const Momentum& p, const FieldParams& fp);

/// 1/2 integral from t1 to t2 of (p + A)^2, path independent.
cplx kinetic_action(cplx t1, cplx t2, const Momentum& p, const FieldParams& fp);

/// One momentum's quantum orbit with the quantities every later stage needs.
/// Cheap to copy.
class Orbit {
public:
    Orbit(const Momentum& p, const FieldParams& fp);
    Orbit(const Momentum& p, const FieldParams& fp, const SaddleSolution& s);

    const Momentum& momentum() const noexcept { return p_; }
    const FieldParams& field() const noexcept { return fp_; }
    const SaddleSolution& saddle() const noexcept { return s_; }

    ComplexVec3 position(cplx t) const noexcept;
    ComplexVec3 velocity(cplx t) const noexcept;

    cplx z(cplx t) const noexcept;
    cplx vz(cplx t) const noexcept;

    /// r_cl(t)^2 and its time derivative 2 r.v.
    cplx r2(cplx t) const noexcept;
    cplx r2_prime(cplx t) const noexcept;

    /// v(t)^2.
    cplx v2(cplx t) const noexcept;

    /// Closest-approach function r.v and its derivative v^2 - r.F.
    cplx ca_function(cplx t) const noexcept;
    cplx ca_derivative(cplx t) const noexcept;

    /// Principal-branch Coulomb potential -Z / sqrt(r^2).
    cplx coulomb_potential(cplx t) const noexcept;

private:
    Momentum p_;
    FieldParams fp_;
    SaddleSolution s_;
    cplx cos_ts_;
};

}  // namespace slalom
