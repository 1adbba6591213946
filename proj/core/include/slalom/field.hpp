#pragma once

// Laser field and target parameters. Everything in this header is in atomic
// units; conversions from laboratory units live with the command-line tool.

#include <complex>
#include <numbers>

namespace slalom {

using cplx = std::complex<double>;

/// Monochromatic, linearly polarized field F(t) = F cos(omega t) z acting on a
/// target with ionization potential Ip = kappa^2 / 2 and asymptotic charge Z.
class FieldParams {
public:
    /// Throws DomainError unless field, omega and kappa are positive and finite.
    FieldParams(double field, double omega, double kappa, double charge = 1.0);

    /// kappa is taken as sqrt(2 Ip) and Ip is then re-derived from kappa, so
    /// that kappa() * kappa() == 2 * Ip() holds exactly.
    static FieldParams from_ip(double field, double omega, double ip, double charge = 1.0);

    /// Keeps F and kappa and picks omega so that omega kappa / F == gamma.
    static FieldParams with_gamma(double field, double kappa, double gamma, double charge = 1.0);

    double field() const noexcept { return field_; }
    double omega() const noexcept { return omega_; }
    double kappa() const noexcept { return kappa_; }
    double ip() const noexcept { return ip_; }
    double charge() const noexcept { return charge_; }

    double gamma() const noexcept { return omega_ * kappa_ / field_; }
    double ponderomotive() const noexcept { return field_ * field_ / (4.0 * omega_ * omega_); }
    double quiver_radius() const noexcept { return field_ / (omega_ * omega_); }
    /// F / omega, the natural momentum scale.
    double momentum_scale() const noexcept { return field_ / omega_; }
    double period() const noexcept { return 2.0 * std::numbers::pi / omega_; }

    bool operator==(const FieldParams&) const = default;

private:
    double field_;
    double omega_;
    double kappa_;
    double ip_;
    double charge_;
};

struct DerivedParams {
    double gamma;
    double ponderomotive;
    double quiver_radius;
};

DerivedParams derived_params(const FieldParams& fp) noexcept;

/// Drift momentum at the detector. Cylindrical symmetry about the polarization
/// axis lets p_y = 0 without loss of generality.
struct Momentum {
    double px = 0.0;
    double pz = 0.0;

    double perp() const noexcept;
    double norm2() const noexcept { return px * px + pz * pz; }
    bool operator==(const Momentum&) const = default;
};

/// A_z(t) = -(F/omega) sin(omega t), analytic in complex t.
cplx vector_potential(cplx t, const FieldParams& fp);

/// F(t) = F cos(omega t) = -dA/dt.
cplx electric_field(cplx t, const FieldParams& fp);

namespace presets {

/// Argon, 9e13 W/cm^2, lambda near 1 um: the gamma ~ 0.98 configuration used
/// for the closest-approach and branch-cut studies.
FieldParams argon_near_ir();

/// Same atom and intensity at a wavelength stretched so that gamma = 0.31.
FieldParams argon_mid_ir();

}  // namespace presets

}  // namespace slalom
