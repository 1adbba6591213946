#pragma once

// Laboratory units at the tool boundary. The core only ever sees atomic units.

#include <optional>
#include <string>
#include <vector>

#include "slalom/field.hpp"

namespace slalom::frontend {

namespace units {

inline constexpr double hartree_ev = 27.211386245988;
/// Intensity whose peak field is one atomic unit, W/cm^2.
inline constexpr double atomic_intensity_w_cm2 = 3.50944758e16;
/// omega [a.u.] times wavelength [um].
inline constexpr double omega_times_um = 0.0455633525;

double ev_to_hartree(double ev);
double hartree_to_ev(double eh);
double intensity_to_field(double w_cm2);
double field_to_intensity(double field);
double wavelength_to_omega(double um);
double omega_to_wavelength(double omega);

}  // namespace units

struct Target {
    std::string symbol;
    double ip_ev;
    double charge;
};

const std::vector<Target>& known_targets();

/// Case-insensitive symbol lookup.
std::optional<Target> find_target(const std::string& symbol);

/// Laser and target in laboratory units. Any of the atomic-unit overrides
/// replaces the converted value; gamma replaces the wavelength.
struct LabSettings {
    std::string target = "Ar";
    std::optional<double> ip_ev;
    double intensity_w_cm2 = 9e13;
    double wavelength_um = 0.9925;
    std::optional<double> gamma;
    std::optional<double> field_au;
    std::optional<double> omega_au;
    std::optional<double> charge;
};

/// Throws DomainError for unknown targets or non-physical values.
FieldParams resolve(const LabSettings& s);

}  // namespace slalom::frontend
