#include "slalom/orbit.hpp"

#include <cmath>

#include "slalom/error.hpp"

namespace slalom {

namespace {

constexpr double kSaddleTolerance = 1e-12;
constexpr int kSaddleMaxIterations = 100;

cplx saddle_equation(cplx t, const Momentum& p, const FieldParams& fp) {
    const cplx vz = p.pz + vector_potential(t, fp);
    return 0.5 * (p.px * p.px + vz * vz) + fp.ip();
}

double tunnel_exit(cplx ts, const FieldParams& fp) {
    const double wt0 = fp.omega() * ts.real();
    const double wtau = fp.omega() * ts.imag();
    return fp.quiver_radius() * std::cos(wt0) * (1.0 - std::cosh(wtau));
}

}  // namespace

cplx saddle_closed_form(const Momentum& p, const FieldParams& fp) {
    const double kappa_perp = std::sqrt(fp.kappa() * fp.kappa() + p.px * p.px);
    const cplx arg = cplx(p.pz, kappa_perp) / fp.momentum_scale();
    cplx ts = std::asin(arg) / fp.omega();
    // asin maps the upper half plane into itself; keep the guard for p_z on the
    // branch lines |arg| > 1 with zero imaginary part, which cannot occur here.
    if (ts.imag() < 0.0) ts = std::conj(ts);
    return ts;
}

double saddle_residual(cplx t, const Momentum& p, const FieldParams& fp) {
    return std::abs(saddle_equation(t, p, fp));
}

SaddleSolution solve_saddle(const Momentum& p, const FieldParams& fp) {
    if (!std::isfinite(p.px) || !std::isfinite(p.pz)) {
        throw DomainError("momentum components must be finite");
    }
    cplx t = saddle_closed_form(p, fp);
    double residual = saddle_residual(t, p, fp);
    for (int it = 0; it < kSaddleMaxIterations && residual >= kSaddleTolerance; ++it) {
        // d/dt [1/2 (p_z + A)^2] = -(p_z + A) F cos(omega t)
        const cplx vz = p.pz + vector_potential(t, fp);
        const cplx deriv = -vz * electric_field(t, fp);
        if (deriv == 0.0) break;
        t -= saddle_equation(t, p, fp) / deriv;
        residual = saddle_residual(t, p, fp);
    }
    if (!(residual < kSaddleTolerance) || !(t.imag() > 0.0)) {
        throw NumericalError("saddle-point polishing did not converge (residual " +
                             std::to_string(residual) + ")");
    }
    const double inv_k2 = 1.0 / (fp.kappa() * fp.kappa());
    return SaddleSolution{t, t - cplx(0.0, inv_k2), tunnel_exit(t, fp)};
}

ComplexVec3 trajectory(cplx t, const Momentum& p, const SaddleSolution& s, const FieldParams& fp) {
    const cplx dt = t - s.ts;
    const double w = fp.omega();
    return {p.px * dt, 0.0,
            p.pz * dt + fp.quiver_radius() * (std::cos(w * t) - std::cos(w * s.ts))};
}

ComplexVec3 velocity(cplx t, const Momentum& p, const FieldParams& fp) {
    return {p.px, 0.0, p.pz + vector_potential(t, fp)};
}

cplx kinetic_antiderivative(cplx t, const Momentum& p, const FieldParams& fp) {
    const double F = fp.field();
    const double w = fp.omega();
    return 0.5 * (p.norm2() + F * F / (2.0 * w * w)) * t +
           (p.pz * F / (w * w)) * std::cos(w * t) -
           (F * F / (8.0 * w * w * w)) * std::sin(2.0 * w * t);
}

cplx kinetic_action(cplx t1, cplx t2, const Momentum& p, const FieldParams& fp) {
    if (t1 == t2) return 0.0;
    return kinetic_antiderivative(t2, p, fp) - kinetic_antiderivative(t1, p, fp);
}

Orbit::Orbit(const Momentum& p, const FieldParams& fp) : Orbit(p, fp, solve_saddle(p, fp)) {}

Orbit::Orbit(const Momentum& p, const FieldParams& fp, const SaddleSolution& s)
    : p_(p), fp_(fp), s_(s), cos_ts_(std::cos(fp.omega() * s.ts)) {}

ComplexVec3 Orbit::position(cplx t) const noexcept { return {p_.px * (t - s_.ts), 0.0, z(t)}; }

ComplexVec3 Orbit::velocity(cplx t) const noexcept { return {p_.px, 0.0, vz(t)}; }

cplx Orbit::z(cplx t) const noexcept {
    return p_.pz * (t - s_.ts) + fp_.quiver_radius() * (std::cos(fp_.omega() * t) - cos_ts_);
}

cplx Orbit::vz(cplx t) const noexcept {
    return p_.pz - fp_.momentum_scale() * std::sin(fp_.omega() * t);
}

cplx Orbit::r2(cplx t) const noexcept {
    const cplx x = p_.px * (t - s_.ts);
    const cplx zz = z(t);
    return x * x + zz * zz;
}

cplx Orbit::r2_prime(cplx t) const noexcept { return 2.0 * ca_function(t); }

cplx Orbit::v2(cplx t) const noexcept {
    const cplx v = vz(t);
    return p_.px * p_.px + v * v;
}

cplx Orbit::ca_function(cplx t) const noexcept {
    return p_.px * p_.px * (t - s_.ts) + z(t) * vz(t);
}

cplx Orbit::ca_derivative(cplx t) const noexcept {
    const double w = fp_.omega();
    const cplx c = std::cos(w * t);
    const cplx s = std::sin(w * t);
    const cplx v = p_.pz - fp_.momentum_scale() * s;
    const cplx zz = p_.pz * (t - s_.ts) + fp_.quiver_radius() * (c - cos_ts_);
    return p_.px * p_.px + v * v - zz * fp_.field() * c;
}

cplx Orbit::coulomb_potential(cplx t) const noexcept { return -fp_.charge() / std::sqrt(r2(t)); }

}  // namespace slalom
