#include "slalom/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <ostream>
#include <thread>

#include "slalom/classical.hpp"
#include "slalom/error.hpp"

namespace slalom {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

void require_increasing(const std::vector<double>& axis, const char* name) {
    if (axis.empty()) throw DomainError(std::string(name) + " axis is empty");
    for (std::size_t i = 1; i < axis.size(); ++i) {
        if (!(axis[i] > axis[i - 1])) {
            throw DomainError(std::string(name) + " axis must be strictly increasing");
        }
    }
}

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_meta(std::ostream& os, const Metadata& meta) {
    for (const auto& [k, v] : meta) os << "# " << k << ": " << v << '\n';
}

}  // namespace

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
    if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    jobs = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(jobs), std::max<std::size_t>(n, 1)));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                body(i);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

NodeResult evaluate_node(const Momentum& p, const FieldParams& fp, const AmplitudeOptions& opts) {
    NodeResult r;
    try {
        const AmplitudeBreakdown a = amplitude(p, fp, opts);
        r.log10_yield = a.log10_yield();
        r.sfa_log10_yield = a.sfa_log10_yield();
        r.ok = std::isfinite(r.log10_yield);
        if (!r.ok) r.error = "non-finite yield";
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

double log10_mean(double a, double b) noexcept {
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log10(0.5 * (1.0 + std::pow(10.0, lo - hi)));
}

SpectrumGrid momentum_map(const FieldParams& fp, const std::vector<double>& px_axis,
                          const std::vector<double>& pz_axis, const SpectrumSettings& settings) {
    require_increasing(px_axis, "p_x");
    require_increasing(pz_axis, "p_z");
    const double pmax = 3.0 * fp.momentum_scale();
    for (double px : px_axis)
        for (double pz : {pz_axis.front(), pz_axis.back()})
            if (std::hypot(px, pz) >= pmax) throw DomainError("momentum grid reaches |p| >= 3 F/omega");

    SpectrumGrid g;
    g.px_axis = px_axis;
    g.pz_axis = pz_axis;
    g.field = fp;
    g.periods = settings.amplitude.periods;
    const std::size_t npz = pz_axis.size();
    const std::size_t n = px_axis.size() * npz;
    g.log10_yield.assign(n, nan);
    g.mask.assign(n, 0);
    std::vector<std::string> errors(n);

    parallel_for(n, settings.jobs, [&](std::size_t k) {
        const Momentum p{px_axis[k / npz], pz_axis[k % npz]};
        const NodeResult fwd = evaluate_node(p, fp, settings.amplitude);
        if (!fwd.ok) {
            g.mask[k] = 1;
            errors[k] = fwd.error;
            return;
        }
        if (!settings.symmetrize) {
            g.log10_yield[k] = fwd.log10_yield;
            return;
        }
        const NodeResult back = evaluate_node({p.px, -p.pz}, fp, settings.amplitude);
        if (!back.ok) {
            g.mask[k] = 1;
            errors[k] = back.error;
            return;
        }
        g.log10_yield[k] = log10_mean(fwd.log10_yield, back.log10_yield);
    });

    for (std::size_t k = 0; k < n; ++k) {
        if (!g.mask[k]) continue;
        ++g.masked;
        g.failures.push_back("px=" + fmt_double(px_axis[k / npz]) + " pz=" + fmt_double(pz_axis[k % npz]) +
                             ": " + errors[k]);
    }
    return g;
}

double transverse_probe_momentum(const FieldParams& fp, double multiplier) {
    const SoftRecollision sr = solve_soft_recollision(1, fp);
    const SaddleSolution s = solve_saddle({0.0, sr.pz_sr}, fp);
    return multiplier / (fp.kappa() * (sr.tr - s.t0()));
}

std::vector<double> WavelengthScan::row(std::size_t iw) const {
    const std::size_t npz = pz_axis.size();
    return {log10_yield.begin() + static_cast<std::ptrdiff_t>(iw * npz),
            log10_yield.begin() + static_cast<std::ptrdiff_t>((iw + 1) * npz)};
}

WavelengthScan wavelength_scan(const FieldParams& base, const std::vector<double>& omegas,
                               const std::vector<double>& pz_axis,
                               const WavelengthScanSettings& settings) {
    require_increasing(pz_axis, "p_z");
    if (omegas.empty()) throw DomainError("wavelength scan needs at least one frequency");
    WavelengthScan scan;
    scan.omegas = omegas;
    scan.pz_axis = pz_axis;
    scan.px_multiplier = settings.px_multiplier;
    std::vector<FieldParams> fields;
    for (double w : omegas) {
        const FieldParams fp(base.field(), w, base.kappa(), base.charge());
        if (!(fp.gamma() > 0.1 && fp.gamma() < 1.2)) {
            throw DomainError("wavelength scan keeps gamma in (0.1, 1.2); got " + fmt_double(fp.gamma()));
        }
        fields.push_back(fp);
        scan.gammas.push_back(fp.gamma());
        scan.px_values.push_back(transverse_probe_momentum(fp, settings.px_multiplier));
        std::vector<double> classical;
        for (int n = 1; n <= settings.classical_orders; ++n) {
            try {
                classical.push_back(solve_soft_recollision(n, fp).pz_sr);
            } catch (const NumericalError&) {
                classical.push_back(nan);
            }
        }
        scan.classical_pz.push_back(std::move(classical));
    }

    const std::size_t npz = pz_axis.size();
    const std::size_t n = omegas.size() * npz;
    scan.log10_yield.assign(n, nan);
    scan.mask.assign(n, 0);
    parallel_for(n, settings.spectrum.jobs, [&](std::size_t k) {
        const std::size_t iw = k / npz;
        const Momentum p{scan.px_values[iw], pz_axis[k % npz]};
        const NodeResult r = evaluate_node(p, fields[iw], settings.spectrum.amplitude);
        if (r.ok) {
            scan.log10_yield[k] = r.log10_yield;
        } else {
            scan.mask[k] = 1;
        }
    });
    scan.masked = static_cast<std::size_t>(std::count(scan.mask.begin(), scan.mask.end(), 1));
    return scan;
}

std::optional<double> steepest_drop(const std::vector<double>& axis, const std::vector<double>& log10y,
                                    double lo, double hi) {
    std::optional<double> best;
    double best_drop = 0.0;
    std::size_t prev = axis.size();
    for (std::size_t i = 0; i < axis.size(); ++i) {
        if (axis[i] < lo || axis[i] > hi || std::isnan(log10y[i])) continue;
        if (prev < axis.size()) {
            const double drop = log10y[prev] - log10y[i];
            if (!best || drop > best_drop) {
                best_drop = drop;
                best = 0.5 * (axis[prev] + axis[i]);
            }
        }
        prev = i;
    }
    return best;
}

void write_csv(std::ostream& os, const SpectrumGrid& grid, const Metadata& meta) {
    write_meta(os, meta);
    os << "px,pz,log10_yield\n";
    for (std::size_t i = 0; i < grid.px_axis.size(); ++i)
        for (std::size_t j = 0; j < grid.pz_axis.size(); ++j)
            os << fmt_double(grid.px_axis[i]) << ',' << fmt_double(grid.pz_axis[j]) << ','
               << fmt_double(grid.at(i, j)) << '\n';
}

void write_csv(std::ostream& os, const WavelengthScan& scan, const Metadata& meta) {
    write_meta(os, meta);
    os << "omega,gamma,px,pz,log10_yield\n";
    const std::size_t npz = scan.pz_axis.size();
    for (std::size_t i = 0; i < scan.omegas.size(); ++i)
        for (std::size_t j = 0; j < npz; ++j)
            os << fmt_double(scan.omegas[i]) << ',' << fmt_double(scan.gammas[i]) << ','
               << fmt_double(scan.px_values[i]) << ',' << fmt_double(scan.pz_axis[j]) << ','
               << fmt_double(scan.log10_yield[i * npz + j]) << '\n';
}

}  // namespace slalom
