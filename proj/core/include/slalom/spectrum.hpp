#pragma once

// Photoelectron momentum maps and wavelength scans built from per-momentum
// amplitudes, plus their CSV persistence.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slalom/amplitude.hpp"

namespace slalom {

/// Runs body(i) for i in [0, n) on `jobs` threads (0 picks the hardware
/// concurrency). Each index is visited exactly once; results written to
/// per-index slots are therefore independent of the thread count.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body);

struct NodeResult {
    double log10_yield = 0.0;
    double sfa_log10_yield = 0.0;
    bool ok = false;
    std::string error;
};

/// Never throws: numerical failures become a sentinel record with ok = false.
NodeResult evaluate_node(const Momentum& p, const FieldParams& fp, const AmplitudeOptions& opts);

struct SpectrumSettings {
    AmplitudeOptions amplitude;
    int jobs = 0;
    /// Average the two half-cycle contributions at +p_z and -p_z.
    bool symmetrize = true;
};

struct SpectrumGrid {
    std::vector<double> px_axis;
    std::vector<double> pz_axis;
    /// log10 of the yield, index [ipx * pz_axis.size() + ipz]; NaN where masked.
    std::vector<double> log10_yield;
    std::vector<unsigned char> mask;
    FieldParams field{1.0, 1.0, 1.0};
    double periods = 2.75;
    std::size_t masked = 0;
    std::vector<std::string> failures;

    double at(std::size_t ipx, std::size_t ipz) const { return log10_yield[ipx * pz_axis.size() + ipz]; }
    bool masked_at(std::size_t ipx, std::size_t ipz) const { return mask[ipx * pz_axis.size() + ipz] != 0; }
};

/// log10(1/2 (10^a + 10^b)) without overflow.
double log10_mean(double a, double b) noexcept;

/// Throws DomainError for axes that are not strictly increasing or that reach
/// |p| >= 3 F/omega.
SpectrumGrid momentum_map(const FieldParams& fp, const std::vector<double>& px_axis,
                          const std::vector<double>& pz_axis, const SpectrumSettings& settings = {});

struct WavelengthScanSettings {
    /// p_x = multiplier / (kappa (t_r - t_0)) with t_r the first soft
    /// recollision, i.e. the transverse excursion there is multiplier / kappa.
    double px_multiplier = 0.05;
    int classical_orders = 6;
    SpectrumSettings spectrum;
};

struct WavelengthScan {
    std::vector<double> omegas;
    std::vector<double> gammas;
    std::vector<double> px_values;
    std::vector<double> pz_axis;
    /// Index [iw * pz_axis.size() + ipz].
    std::vector<double> log10_yield;
    std::vector<unsigned char> mask;
    /// classical_pz[iw][n-1] = exact p_z^sr for order n, NaN if unsolved.
    std::vector<std::vector<double>> classical_pz;
    double px_multiplier = 0.05;
    std::size_t masked = 0;

    std::vector<double> row(std::size_t iw) const;
};

/// Same F, kappa and charge as `base`, one row per frequency. Keldysh
/// parameters outside (0.1, 1.2) are rejected with DomainError.
WavelengthScan wavelength_scan(const FieldParams& base, const std::vector<double>& omegas,
                               const std::vector<double>& pz_axis,
                               const WavelengthScanSettings& settings = {});

/// p_x from the transverse-excursion rule above.
double transverse_probe_momentum(const FieldParams& fp, double multiplier);

/// Midpoint of the steepest downward step of a log-yield row inside
/// [lo, hi], skipping NaN entries; empty if the band holds fewer than two
/// valid points.
std::optional<double> steepest_drop(const std::vector<double>& axis, const std::vector<double>& log10y,
                                    double lo, double hi);

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// "# key: value" comment lines, then px,pz,log10_yield rows ("nan" where masked).
void write_csv(std::ostream& os, const SpectrumGrid& grid, const Metadata& meta);

/// "# key: value" lines, then omega,gamma,px,pz,log10_yield rows.
void write_csv(std::ostream& os, const WavelengthScan& scan, const Metadata& meta);

}  // namespace slalom
