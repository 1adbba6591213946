#include "slalom/frontend/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "slalom/error.hpp"
#include "slalom/frontend/manifest.hpp"
#include "slalom/frontend/service.hpp"
#include "slalom/spectrum.hpp"

namespace slalom::frontend {

namespace {

constexpr double pi = std::numbers::pi;

struct InvalidArgs : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    LabSettings lab;
    int jobs = 0;
    std::string out;
    double px = 0.0;
    double pz = 0.0;
    double periods = 2.75;
    std::string navigator = "automatic";
    // classical-sr
    std::string orders = "1..6";
    bool json_out = false;
    // cuts
    double phase_lo = 1.5;
    double phase_hi = 2.5;
    int nx = 0;
    int ny = 0;
    bool no_trace = false;
    // spectrum
    double px_min = 1e-4, px_max = 0.012;
    int npx = 80;
    double pz_min = 0.62, pz_max = 0.92;
    int npz = 60;
    bool no_symmetrize = false;
    // scan-wavelength
    double lambda_min = 1.0, lambda_max = 3.0;
    int nlambda = 15;
    double px_multiplier = 0.05;
    int classical_orders = 6;
    // serve
    std::string host = "127.0.0.1";
    int port = 8765;
    double timeout = 30.0;
    std::string cors = "*";
};

void add_lab_options(CLI::App* sub, Options& o) {
    sub->add_option("--target", o.lab.target, "Atom symbol (H, He, Ne, Ar, Kr, Xe)")->capture_default_str();
    sub->add_option("--ip-ev", o.lab.ip_ev, "Ionization potential in eV; overrides the target value");
    sub->add_option("--intensity", o.lab.intensity_w_cm2, "Peak intensity in W/cm^2")->capture_default_str();
    sub->add_option("--lambda-um", o.lab.wavelength_um, "Wavelength in micrometres")->capture_default_str();
    sub->add_option("--gamma", o.lab.gamma, "Keldysh parameter; replaces the wavelength");
    sub->add_option("--field-au", o.lab.field_au, "Field amplitude in atomic units; replaces the intensity");
    sub->add_option("--omega-au", o.lab.omega_au, "Angular frequency in atomic units; replaces the wavelength");
    sub->add_option("--charge", o.lab.charge, "Asymptotic ion charge Z");
}

void add_momentum(CLI::App* sub, Options& o) {
    sub->add_option("--px", o.px, "Transverse drift momentum (a.u.)")->required();
    sub->add_option("--pz", o.pz, "Longitudinal drift momentum (a.u.)")->required();
}

void add_out(CLI::App* sub, Options& o, const std::string& help) { sub->add_option("-o,--out", o.out, help); }

std::pair<int, int> parse_orders(const std::string& s) {
    const auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            const int n = std::stoi(s);
            return {n, n};
        }
        return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw InvalidArgs("--n expects N or A..B, got '" + s + "'");
    }
}

Navigator parse_navigator(const std::string& s) {
    if (s == "automatic" || s == "auto") return Navigator::automatic;
    if (s == "standard") return Navigator::standard;
    throw InvalidArgs("--navigator must be automatic or standard");
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::vector<double> axis(double lo, double hi, int n) {
    if (n < 1) throw InvalidArgs("grid sizes must be positive");
    if (n == 1) return {lo};
    if (!(hi > lo)) throw InvalidArgs("axis maximum must exceed its minimum");
    std::vector<double> a(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return a;
}

class Runner {
public:
    Runner(Options& o, std::vector<std::string> args) : o_(o), args_(std::move(args)) {}

    int emit_json(const std::string& command, const json& result, const json& settings = json::object()) {
        const std::string text = result.dump(2) + "\n";
        if (o_.out.empty()) {
            std::cout << text;
            return 0;
        }
        write_text_file(o_.out, text);
        write_manifest(command, settings, 0, {});
        return 0;
    }

    void write_manifest(const std::string& command, const json& settings, std::size_t masked,
                        const std::vector<std::string>& failures) {
        RunManifest m;
        m.command = command;
        m.arguments = args_;
        m.lab = o_.lab;
        m.field = field();
        m.settings = settings;
        m.output = o_.out;
        m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        m.masked = masked;
        m.failures = failures;
        write_text_file(manifest_path_for(o_.out), to_json(m).dump(2) + "\n");
    }

    FieldParams field() const { return resolve(o_.lab); }

    int saddle() {
        const FieldParams fp = field();
        const Momentum p{o_.px, o_.pz};
        const SaddleSolution s = solve_saddle(p, fp);
        json out = {{"field", to_json(fp)}, {"p", to_json(p)}, {"saddle", to_json(s)}};
        out["saddle"]["residual"] = std::abs(saddle_residual(s.ts, p, fp));
        out["saddle"]["closed_form"] = to_json(saddle_closed_form(p, fp));
        return emit_json("saddle", out);
    }

    int classical_sr() {
        const FieldParams fp = field();
        const auto [lo, hi] = parse_orders(o_.orders);
        if (lo < 1 || hi < lo || hi > 40) throw InvalidArgs("--n range must satisfy 1 <= A <= B <= 40");
        json rows = json::array();
        std::vector<double> exact;
        for (int n = lo; n <= hi; ++n) {
            const SoftRecollision sr = solve_soft_recollision(n, fp);
            const double lin = linearized_soft_recollision(n, fp).pz_sr;
            exact.push_back(sr.pz_sr);
            json row = to_json(sr);
            row["pz_linear"] = lin;
            row["relative_deviation"] = (sr.pz_sr - lin) / lin;
            row["omega_tr_over_pi"] = fp.omega() * sr.tr / pi;
            row["pz_over_F_omega"] = sr.pz_sr / fp.momentum_scale();
            const int back = n - 2 - lo;
            row["ratio_to_n_minus_2"] = back >= 0 ? json(sr.pz_sr / exact[static_cast<std::size_t>(back)]) : json(nullptr);
            rows.push_back(row);
        }
        if (o_.json_out || !o_.out.empty()) {
            return emit_json("classical-sr", {{"field", to_json(fp)}, {"orders", rows}}, {{"n", o_.orders}});
        }
        std::cout << "# gamma = " << fmt("%.6g", fp.gamma()) << ", F/omega = " << fmt("%.6g", fp.momentum_scale())
                  << " a.u.\n";
        std::cout << "n  family  pz_sr        pz_linear    rel_dev      omega_tr/pi  p(n)/p(n-2)\n";
        for (const json& r : rows) {
            const std::string ratio =
                r["ratio_to_n_minus_2"].is_null() ? "-" : fmt("%.6f", r["ratio_to_n_minus_2"].get<double>());
            std::printf("%-2d %-7s %-12.6g %-12.6g %-12.4e %-12.6f %s\n", r["n"].get<int>(),
                        r["family"].get<std::string>().c_str(), r["pz_sr"].get<double>(),
                        r["pz_linear"].get<double>(), r["relative_deviation"].get<double>(),
                        r["omega_tr_over_pi"].get<double>(), ratio.c_str());
        }
        return 0;
    }

    int tca() {
        const FieldParams fp = field();
        const Orbit orbit({o_.px, o_.pz}, fp);
        const double T = default_detection_time(orbit.saddle(), fp, o_.periods);
        const TimeWindow w = default_ca_window(orbit.saddle(), fp, T);
        const auto roots = find_ca_roots(orbit, w);
        return emit_json("tca",
                         {{"field", to_json(fp)},
                          {"p", to_json(orbit.momentum())},
                          {"detection_time", T},
                          {"window", to_json(w)},
                          {"roots", to_json(roots)},
                          {"gates", to_json(select_gates(roots, orbit.saddle(), fp))}},
                         {{"periods", o_.periods}});
    }

    int cuts() {
        const FieldParams fp = field();
        const Orbit orbit({o_.px, o_.pz}, fp);
        const TimeWindow w = phase_window(orbit.saddle(), fp, o_.phase_lo * pi, o_.phase_hi * pi);
        const TopologyReport rep = classify_topology(orbit, w, {!o_.no_trace});
        json out = {{"field", to_json(fp)}, {"p", to_json(orbit.momentum())}, {"window", to_json(w)},
                    {"topology", to_json(rep)}};
        if (o_.nx > 0 || o_.ny > 0) {
            if (o_.nx < 2 || o_.ny < 2) throw InvalidArgs("--nx and --ny must both be at least 2");
            out["distance_field"] = to_json(distance_field(orbit, w, o_.nx, o_.ny));
        }
        return emit_json("cuts", out, {{"phase_lo_pi", o_.phase_lo}, {"phase_hi_pi", o_.phase_hi}});
    }

    int contour() {
        const FieldParams fp = field();
        const Orbit orbit({o_.px, o_.pz}, fp);
        const double T = default_detection_time(orbit.saddle(), fp, o_.periods);
        const ContourPath path = parse_navigator(o_.navigator) == Navigator::automatic
                                     ? navigate(orbit, T)
                                     : standard_contour(orbit.saddle(), T);
        json out = to_json(path);
        out["validation"] = to_json(validate_contour(path, orbit));
        out["field"] = to_json(fp);
        return emit_json("contour", out, {{"periods", o_.periods}, {"navigator", o_.navigator}});
    }

    AmplitudeOptions amplitude_options() const {
        AmplitudeOptions a;
        a.periods = o_.periods;
        a.navigator = parse_navigator(o_.navigator);
        return a;
    }

    json amplitude_settings() const {
        const AmplitudeOptions a = amplitude_options();
        return {{"periods", a.periods},
                {"navigator", to_string(a.navigator)},
                {"gate_tolerance", a.navigation.gate_tolerance},
                {"quadrature", {{"rule", "Gauss-Kronrod 31, globally adaptive bisection"},
                                {"abs_tolerance", a.quadrature.abs_tolerance},
                                {"max_depth", a.quadrature.max_depth}}},
                {"validation_samples", a.validation_samples}};
    }

    int amp() {
        const FieldParams fp = field();
        json out = to_json(amplitude({o_.px, o_.pz}, fp, amplitude_options()));
        out["field"] = to_json(fp);
        return emit_json("amp", out, amplitude_settings());
    }

    Metadata csv_metadata(const std::string& command, const FieldParams& fp) const {
        return {{"tool", std::string("slalom ") + tool_version()},
                {"command", command},
                {"F", fmt("%.10g", fp.field())},
                {"omega", fmt("%.10g", fp.omega())},
                {"kappa", fmt("%.10g", fp.kappa())},
                {"Z", fmt("%.10g", fp.charge())},
                {"gamma", fmt("%.10g", fp.gamma())},
                {"periods", fmt("%.10g", o_.periods)},
                {"navigator", o_.navigator},
                {"quadrature", "Gauss-Kronrod 31 adaptive, abs tolerance 1e-9"},
                {"manifest", manifest_path_for(o_.out)}};
    }

    int spectrum() {
        const FieldParams fp = field();
        if (o_.out.empty()) o_.out = "spectrum.csv";
        SpectrumSettings s;
        s.amplitude = amplitude_options();
        s.jobs = o_.jobs;
        s.symmetrize = !o_.no_symmetrize;
        const SpectrumGrid g =
            momentum_map(fp, axis(o_.px_min, o_.px_max, o_.npx), axis(o_.pz_min, o_.pz_max, o_.npz), s);
        Metadata meta = csv_metadata("spectrum", fp);
        meta.emplace_back("symmetrized", s.symmetrize ? "yes" : "no");
        meta.emplace_back("masked", std::to_string(g.masked));
        std::ostringstream csv;
        write_csv(csv, g, meta);
        write_text_file(o_.out, csv.str());
        json settings = amplitude_settings();
        settings["grid"] = {{"px", {o_.px_min, o_.px_max, o_.npx}}, {"pz", {o_.pz_min, o_.pz_max, o_.npz}}};
        settings["symmetrize"] = s.symmetrize;
        settings["jobs"] = o_.jobs;
        write_manifest("spectrum", settings, g.masked, g.failures);
        if (g.masked > 0) std::cerr << "warning: " << g.masked << " of " << g.log10_yield.size() << " nodes masked\n";
        return 0;
    }

    int scan_wavelength() {
        const FieldParams base = field();
        if (o_.out.empty()) o_.out = "scan.csv";
        std::vector<double> omegas;
        for (double lam : axis(o_.lambda_min, o_.lambda_max, o_.nlambda)) {
            omegas.push_back(units::wavelength_to_omega(lam));
        }
        WavelengthScanSettings s;
        s.px_multiplier = o_.px_multiplier;
        s.classical_orders = o_.classical_orders;
        s.spectrum.amplitude = amplitude_options();
        s.spectrum.jobs = o_.jobs;
        const WavelengthScan scan = wavelength_scan(base, omegas, axis(o_.pz_min, o_.pz_max, o_.npz), s);
        Metadata meta = csv_metadata("scan-wavelength", base);
        meta.emplace_back("px_multiplier", fmt("%.10g", o_.px_multiplier));
        meta.emplace_back("masked", std::to_string(scan.masked));
        std::ostringstream csv;
        write_csv(csv, scan, meta);
        write_text_file(o_.out, csv.str());

        std::ostringstream classical;
        classical << "# manifest: " << manifest_path_for(o_.out) << "\nlambda_um,omega,gamma,n,pz_sr\n";
        for (std::size_t i = 0; i < omegas.size(); ++i)
            for (std::size_t n = 0; n < scan.classical_pz[i].size(); ++n)
                classical << fmt("%.10g", units::omega_to_wavelength(omegas[i])) << ',' << fmt("%.10g", omegas[i])
                          << ',' << fmt("%.10g", scan.gammas[i]) << ',' << n + 1 << ','
                          << (std::isnan(scan.classical_pz[i][n]) ? "nan" : fmt("%.10g", scan.classical_pz[i][n]))
                          << '\n';
        write_text_file(o_.out + ".classical.csv", classical.str());

        json settings = amplitude_settings();
        settings["lambda_um"] = {o_.lambda_min, o_.lambda_max, o_.nlambda};
        settings["pz"] = {o_.pz_min, o_.pz_max, o_.npz};
        settings["px_multiplier"] = o_.px_multiplier;
        settings["px_values"] = scan.px_values;
        settings["classical_output"] = o_.out + ".classical.csv";
        write_manifest("scan-wavelength", settings, scan.masked, {});
        if (scan.masked > 0) std::cerr << "warning: " << scan.masked << " nodes masked\n";
        return 0;
    }

    int serve_cmd() {
        ServiceConfig cfg;
        cfg.field = field();
        cfg.periods = o_.periods;
        cfg.timeout_seconds = o_.timeout;
        cfg.cors_origin = o_.cors;
        std::cerr << "serving on http://" << o_.host << ':' << o_.port << '\n';
        if (!serve(cfg, o_.host, o_.port)) {
            std::cerr << "error: cannot listen on " << o_.host << ':' << o_.port << '\n';
            return 1;
        }
        return 0;
    }

private:
    Options& o_;
    std::vector<std::string> args_;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

int run_cli(int argc, char** argv) {
    Options o;
    CLI::App app{"Coulomb-corrected strong-field ionization amplitudes on navigated complex-time contours"};
    app.set_version_flag("--version", std::string("slalom ") + tool_version());
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("-j,--jobs", o.jobs, "Worker threads for grid commands (0 = logical cores)")
        ->envname("SLALOM_JOBS")
        ->check(CLI::NonNegativeNumber);

    auto* saddle = app.add_subcommand("saddle", "Complex ionization time t_s for one momentum");
    add_lab_options(saddle, o);
    add_momentum(saddle, o);
    add_out(saddle, o, "Write JSON here (and a manifest next to it)");

    auto* csr = app.add_subcommand("classical-sr", "Exact and linearized soft-recollision momenta");
    add_lab_options(csr, o);
    csr->add_option("--n", o.orders, "Order or range A..B")->capture_default_str();
    csr->add_flag("--json", o.json_out, "Print JSON instead of a table");
    add_out(csr, o, "Write JSON here");

    auto* tca = app.add_subcommand("tca", "Complex closest-approach times and the selected gates");
    add_lab_options(tca, o);
    add_momentum(tca, o);
    tca->add_option("--periods", o.periods, "Detection horizon after t_0 in periods")->capture_default_str();
    add_out(tca, o, "Write JSON here");

    auto* cuts = app.add_subcommand("cuts", "Branch points, cuts and topology of one recollision");
    add_lab_options(cuts, o);
    add_momentum(cuts, o);
    cuts->add_option("--phase-lo", o.phase_lo, "Window start, omega t in units of pi")->capture_default_str();
    cuts->add_option("--phase-hi", o.phase_hi, "Window end, omega t in units of pi")->capture_default_str();
    cuts->add_option("--nx", o.nx, "Also sample sqrt(r^2) on an nx-by-ny grid");
    cuts->add_option("--ny", o.ny, "Grid rows");
    cuts->add_flag("--no-trace", o.no_trace, "Skip cut tracing, use the velocity test only");
    add_out(cuts, o, "Write JSON here");

    auto* contour = app.add_subcommand("contour", "Integration contour and its validation report");
    add_lab_options(contour, o);
    add_momentum(contour, o);
    contour->add_option("--periods", o.periods, "Detection horizon after t_0 in periods")->capture_default_str();
    contour->add_option("--navigator", o.navigator, "automatic or standard")->capture_default_str();
    add_out(contour, o, "Write JSON here");

    auto* amp = app.add_subcommand("amp", "Amplitude breakdown for one momentum");
    add_lab_options(amp, o);
    add_momentum(amp, o);
    amp->add_option("--periods", o.periods, "Detection horizon after t_0 in periods")->capture_default_str();
    amp->add_option("--navigator", o.navigator, "automatic or standard")->capture_default_str();
    add_out(amp, o, "Write JSON here");

    auto* spec = app.add_subcommand("spectrum", "Momentum map on a (px, pz) grid");
    add_lab_options(spec, o);
    spec->add_option("--px-min", o.px_min)->capture_default_str();
    spec->add_option("--px-max", o.px_max)->capture_default_str();
    spec->add_option("--npx", o.npx)->capture_default_str();
    spec->add_option("--pz-min", o.pz_min)->capture_default_str();
    spec->add_option("--pz-max", o.pz_max)->capture_default_str();
    spec->add_option("--npz", o.npz)->capture_default_str();
    spec->add_option("--periods", o.periods)->capture_default_str();
    spec->add_option("--navigator", o.navigator)->capture_default_str();
    spec->add_flag("--no-symmetrize", o.no_symmetrize, "Keep only the +pz half cycle");
    add_out(spec, o, "CSV output (default spectrum.csv)");

    auto* scan = app.add_subcommand("scan-wavelength", "On-axis-like yield against wavelength and pz");
    add_lab_options(scan, o);
    scan->add_option("--lambda-min", o.lambda_min, "Shortest wavelength, um")->capture_default_str();
    scan->add_option("--lambda-max", o.lambda_max, "Longest wavelength, um")->capture_default_str();
    scan->add_option("--nlambda", o.nlambda)->capture_default_str();
    scan->add_option("--pz-min", o.pz_min)->capture_default_str();
    scan->add_option("--pz-max", o.pz_max)->capture_default_str();
    scan->add_option("--npz", o.npz)->capture_default_str();
    scan->add_option("--px-multiplier", o.px_multiplier, "Transverse excursion at the first return, units of 1/kappa")
        ->capture_default_str();
    scan->add_option("--orders", o.classical_orders, "Classical orders to list")->capture_default_str();
    scan->add_option("--periods", o.periods)->capture_default_str();
    add_out(scan, o, "CSV output (default scan.csv)");

    auto* srv = app.add_subcommand("serve", "JSON service for interactive exploration");
    add_lab_options(srv, o);
    srv->add_option("--host", o.host)->capture_default_str();
    srv->add_option("--port", o.port)->capture_default_str();
    srv->add_option("--timeout", o.timeout, "Per-request compute budget, seconds")->capture_default_str();
    srv->add_option("--cors-origin", o.cors)->capture_default_str();
    srv->add_option("--periods", o.periods)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    Runner run(o, std::vector<std::string>(argv + 1, argv + argc));
    try {
        if (*saddle) return run.saddle();
        if (*csr) return run.classical_sr();
        if (*tca) return run.tca();
        if (*cuts) return run.cuts();
        if (*contour) return run.contour();
        if (*amp) return run.amp();
        if (*spec) return run.spectrum();
        if (*scan) return run.scan_wavelength();
        if (*srv) return run.serve_cmd();
    } catch (const InvalidArgs& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const TrackingError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

}  // namespace slalom::frontend
