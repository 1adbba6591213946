#include "slalom/frontend/units.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "slalom/error.hpp"

namespace slalom::frontend {

namespace units {

double ev_to_hartree(double ev) { return ev / hartree_ev; }
double hartree_to_ev(double eh) { return eh * hartree_ev; }
double intensity_to_field(double w_cm2) { return std::sqrt(w_cm2 / atomic_intensity_w_cm2); }
double field_to_intensity(double field) { return field * field * atomic_intensity_w_cm2; }
double wavelength_to_omega(double um) { return omega_times_um / um; }
double omega_to_wavelength(double omega) { return omega_times_um / omega; }

}  // namespace units

const std::vector<Target>& known_targets() {
    static const std::vector<Target> targets{
        {"H", 13.598434, 1.0},  {"He", 24.587389, 1.0}, {"Ne", 21.564540, 1.0},
        {"Ar", 15.759610, 1.0}, {"Kr", 13.999605, 1.0}, {"Xe", 12.129842, 1.0},
    };
    return targets;
}

std::optional<Target> find_target(const std::string& symbol) {
    const auto lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
        return s;
    };
    for (const Target& t : known_targets())
        if (lower(t.symbol) == lower(symbol)) return t;
    return std::nullopt;
}

FieldParams resolve(const LabSettings& s) {
    const auto target = find_target(s.target);
    if (!target && !s.ip_ev) throw DomainError("unknown target '" + s.target + "'");
    const double ip_ev = s.ip_ev.value_or(target ? target->ip_ev : 0.0);
    if (!(ip_ev > 0.0)) throw DomainError("ionization potential must be positive");
    if (!s.field_au && !(s.intensity_w_cm2 > 0.0)) throw DomainError("intensity must be positive");
    if (!s.omega_au && !s.gamma && !(s.wavelength_um > 0.0)) throw DomainError("wavelength must be positive");

    const double ip = units::ev_to_hartree(ip_ev);
    const double kappa = std::sqrt(2.0 * ip);
    const double field = s.field_au.value_or(units::intensity_to_field(s.intensity_w_cm2));
    const double charge = s.charge.value_or(target ? target->charge : 1.0);
    if (s.gamma) {
        if (!(*s.gamma > 0.0)) throw DomainError("gamma must be positive");
        return FieldParams::with_gamma(field, kappa, *s.gamma, charge);
    }
    const double omega = s.omega_au.value_or(units::wavelength_to_omega(s.wavelength_um));
    return FieldParams::from_ip(field, omega, ip, charge);
}

}  // namespace slalom::frontend
