#include "slalom/field.hpp"

#include <cmath>
#include <string>

#include "slalom/error.hpp"

namespace slalom {

namespace {

void require_positive(double value, const char* name) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw DomainError(std::string(name) + " must be positive and finite, got " +
                          std::to_string(value));
    }
}

}  // namespace

FieldParams::FieldParams(double field, double omega, double kappa, double charge)
    : field_(field), omega_(omega), kappa_(kappa), ip_(0.5 * kappa * kappa), charge_(charge) {
    require_positive(field, "field amplitude");
    require_positive(omega, "omega");
    require_positive(kappa, "kappa");
    if (!std::isfinite(charge) || charge < 0.0) {
        throw DomainError("ion charge must be finite and non-negative");
    }
}

FieldParams FieldParams::from_ip(double field, double omega, double ip, double charge) {
    require_positive(ip, "ionization potential");
    return FieldParams(field, omega, std::sqrt(2.0 * ip), charge);
}

FieldParams FieldParams::with_gamma(double field, double kappa, double gamma, double charge) {
    require_positive(gamma, "gamma");
    return FieldParams(field, gamma * field / kappa, kappa, charge);
}

DerivedParams derived_params(const FieldParams& fp) noexcept {
    return {fp.gamma(), fp.ponderomotive(), fp.quiver_radius()};
}

double Momentum::perp() const noexcept { return std::abs(px); }

cplx vector_potential(cplx t, const FieldParams& fp) {
    return -fp.momentum_scale() * std::sin(fp.omega() * t);
}

cplx electric_field(cplx t, const FieldParams& fp) {
    return fp.field() * std::cos(fp.omega() * t);
}

namespace presets {

// Ip = 15.76 eV, I = 9e13 W/cm^2, lambda = 0.9925 um.
FieldParams argon_near_ir() { return FieldParams(0.05064, 0.045908, 1.0763); }

FieldParams argon_mid_ir() { return FieldParams::with_gamma(0.05064, 1.0763, 0.31); }

}  // namespace presets

}  // namespace slalom
