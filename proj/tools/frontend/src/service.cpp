#include "slalom/frontend/service.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <future>
#include <memory>
#include <numbers>
#include <thread>

#include <httplib.h>

#include "slalom/error.hpp"
#include "slalom/frontend/manifest.hpp"
#include "slalom/frontend/serialize.hpp"

namespace slalom::frontend {

namespace {

struct BadRequest : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Timeout {};

using Handler = json (*)(const FieldParams&, const json&, const ServiceConfig&);

Momentum momentum_from(const json& body, const FieldParams& fp) {
    if (!body.contains("px") || !body.contains("pz")) throw BadRequest("body needs numeric px and pz");
    const Momentum p{body.at("px").get<double>(), body.at("pz").get<double>()};
    if (!std::isfinite(p.px) || !std::isfinite(p.pz)) throw BadRequest("px and pz must be finite");
    if (std::sqrt(p.norm2()) >= 3.0 * fp.momentum_scale()) throw DomainError("|p| must stay below 3 F/omega");
    return p;
}

double horizon(const Orbit& orbit, const json& body, const ServiceConfig& cfg) {
    const double periods = body.value("periods", cfg.periods);
    if (!(periods >= 2.0)) throw DomainError("detection horizon must be at least two periods after t_0");
    return default_detection_time(orbit.saddle(), orbit.field(), periods);
}

std::vector<cplx> nodes_from(const json& body) {
    if (!body.contains("nodes") || !body.at("nodes").is_array()) throw BadRequest("body needs a nodes array");
    std::vector<cplx> nodes;
    for (const json& n : body.at("nodes")) nodes.push_back(complex_from_json(n));
    if (nodes.size() < 2) throw BadRequest("a contour needs at least two nodes");
    for (cplx t : nodes)
        if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) throw BadRequest("contour nodes must be finite");
    return nodes;
}

json route_saddle(const FieldParams& fp, const json& body, const ServiceConfig&) {
    const Momentum p = momentum_from(body, fp);
    const SaddleSolution s = solve_saddle(p, fp);
    json out = to_json(s);
    out["residual"] = std::abs(saddle_residual(s.ts, p, fp));
    return out;
}

json route_tca(const FieldParams& fp, const json& body, const ServiceConfig& cfg) {
    const Orbit orbit(momentum_from(body, fp), fp);
    const double T = horizon(orbit, body, cfg);
    const TimeWindow w = default_ca_window(orbit.saddle(), fp, T);
    const auto roots = find_ca_roots(orbit, w);
    return {{"window", to_json(w)}, {"roots", to_json(roots)},
            {"gates", to_json(select_gates(roots, orbit.saddle(), fp, body.value("u", 1e-8)))}};
}

json route_branchmap(const FieldParams& fp, const json& body, const ServiceConfig& cfg) {
    const Orbit orbit(momentum_from(body, fp), fp);
    TimeWindow region = first_recollision_window(orbit.saddle(), fp);
    if (body.contains("region")) {
        const json& r = body.at("region");
        region = {r.at("re_lo").get<double>(), r.at("re_hi").get<double>(), r.at("im_lo").get<double>(),
                  r.at("im_hi").get<double>()};
        if (!(region.re_hi > region.re_lo) || !(region.im_hi > region.im_lo)) throw BadRequest("empty region");
    }
    const int nx = body.value("nx", 300);
    const int ny = body.value("ny", 200);
    if (nx < 2 || ny < 2 || nx > cfg.max_nx || ny > cfg.max_ny) {
        throw BadRequest("grid must be between 2x2 and " + std::to_string(cfg.max_nx) + "x" +
                         std::to_string(cfg.max_ny));
    }
    const TopologyReport topo = classify_topology(orbit, region, {body.value("trace_cuts", true)});
    return {{"field", to_json(distance_field(orbit, region, nx, ny))}, {"topology", to_json(topo)}};
}

json route_contour_auto(const FieldParams& fp, const json& body, const ServiceConfig& cfg) {
    const Orbit orbit(momentum_from(body, fp), fp);
    const ContourPath path = navigate(orbit, horizon(orbit, body, cfg));
    json out = to_json(path);
    out["validation"] = to_json(validate_contour(path, orbit));
    return out;
}

json route_contour_validate(const FieldParams& fp, const json& body, const ServiceConfig&) {
    const Orbit orbit(momentum_from(body, fp), fp);
    ContourPath path;
    path.nodes = nodes_from(body);
    const ValidationReport rep = validate_contour(path, orbit);
    json out = {{"validation", to_json(rep)}, {"coulomb_action", nullptr}, {"log10_yield", nullptr}};
    if (rep.continuous && path.nodes.back().imag() == 0.0) {
        const AmplitudeBreakdown a = amplitude_along(orbit, path);
        out["coulomb_action"] = to_json(a.coulomb_action);
        out["log10_yield"] = a.log10_yield();
        out["sfa_log10_yield"] = a.sfa_log10_yield();
    } else if (rep.continuous) {
        out["coulomb_action"] = to_json(coulomb_action(path, orbit));
    }
    return out;
}

json route_trajectory(const FieldParams& fp, const json& body, const ServiceConfig& cfg) {
    const Orbit orbit(momentum_from(body, fp), fp);
    const std::vector<cplx> nodes =
        body.contains("nodes") ? nodes_from(body) : navigate(orbit, horizon(orbit, body, cfg)).nodes;
    const int samples = body.value("samples", 2000);
    if (samples < 2 || samples > cfg.max_trajectory_samples) {
        throw BadRequest("samples must be between 2 and " + std::to_string(cfg.max_trajectory_samples));
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) total += std::abs(nodes[i + 1] - nodes[i]);
    json t = json::array(), x = json::array(), z = json::array(), d = json::array();
    for (int k = 0; k < samples; ++k) {
        // Uniform in arc length along the polyline.
        double s = total * k / (samples - 1);
        std::size_t i = 0;
        while (i + 2 < nodes.size() && s > std::abs(nodes[i + 1] - nodes[i])) {
            s -= std::abs(nodes[i + 1] - nodes[i]);
            ++i;
        }
        const double len = std::abs(nodes[i + 1] - nodes[i]);
        const cplx tk = len > 0 ? nodes[i] + (nodes[i + 1] - nodes[i]) * std::min(1.0, s / len) : nodes[i];
        const ComplexVec3 r = orbit.position(tk);
        t.push_back(to_json(tk));
        x.push_back(to_json(r.x));
        z.push_back(to_json(r.z));
        d.push_back(to_json(std::sqrt(orbit.r2(tk))));
    }
    return {{"nodes", [&] {
                 json n = json::array();
                 for (cplx c : nodes) n.push_back(to_json(c));
                 return n;
             }()},
            {"t", t},
            {"x", x},
            {"z", z},
            {"distance", d}};
}

json route_amplitude(const FieldParams& fp, const json& body, const ServiceConfig& cfg) {
    const Momentum p = momentum_from(body, fp);
    AmplitudeOptions opts;
    opts.periods = body.value("periods", cfg.periods);
    const std::string nav = body.value("navigator", "automatic");
    if (nav == "standard") {
        opts.navigator = Navigator::standard;
    } else if (nav != "automatic") {
        throw BadRequest("navigator must be 'automatic' or 'standard'");
    }
    return to_json(amplitude(p, fp, opts));
}

json route_health(const FieldParams& fp, const json&, const ServiceConfig& cfg) {
    return {{"status", "ok"}, {"version", tool_version()}, {"field", to_json(fp)}, {"periods", cfg.periods},
            {"routes", service_routes()}};
}

struct Route {
    const char* path;
    const char* method;
    Handler handler;
};

const Route routes[] = {
    {"/saddle", "POST", route_saddle},
    {"/tca", "POST", route_tca},
    {"/branchmap", "POST", route_branchmap},
    {"/contour/auto", "POST", route_contour_auto},
    {"/contour/validate", "POST", route_contour_validate},
    {"/trajectory", "POST", route_trajectory},
    {"/amplitude", "POST", route_amplitude},
    {"/health", "GET", route_health},
};

FieldParams field_for(const json& body, const ServiceConfig& cfg) {
    if (!body.contains("gamma")) return cfg.field;
    const double g = body.at("gamma").get<double>();
    if (!(g >= cfg.gamma_min && g <= cfg.gamma_max)) {
        throw DomainError("gamma must lie in [" + std::to_string(cfg.gamma_min) + ", " +
                          std::to_string(cfg.gamma_max) + "]");
    }
    return FieldParams::with_gamma(cfg.field.field(), cfg.field.kappa(), g, cfg.field.charge());
}

// The work runs on its own thread so a slow request can be abandoned; it only
// touches copies, so letting it finish in the background is harmless.
json run_with_deadline(Handler h, const json& body, const ServiceConfig& cfg) {
    auto promise = std::make_shared<std::promise<json>>();
    std::future<json> result = promise->get_future();
    std::thread([promise, h, body, cfg] {
        try {
            const FieldParams fp = field_for(body, cfg);
            promise->set_value(h(fp, body, cfg));
        } catch (...) {
            promise->set_exception(std::current_exception());
        }
    }).detach();
    const auto budget = std::chrono::duration<double>(cfg.timeout_seconds);
    if (result.wait_for(budget) != std::future_status::ready) throw Timeout{};
    return result.get();
}

Response error(int status, const std::string& kind, const std::string& message) {
    return {status, json{{"error", kind}, {"message", message}}.dump()};
}

}  // namespace

const std::vector<std::string>& service_routes() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const Route& r : routes) v.emplace_back(r.path);
        return v;
    }();
    return names;
}

Response handle(const ServiceConfig& cfg, const Request& req) {
    const Route* route = nullptr;
    for (const Route& r : routes)
        if (req.path == r.path) route = &r;
    if (!route) return error(404, "not_found", "no route " + req.path);
    if (req.method != route->method) return error(405, "method_not_allowed", route->path + std::string(" takes ") + route->method);

    try {
        json body = json::object();
        if (!req.body.empty()) body = json::parse(req.body);
        if (!body.is_object()) return error(400, "bad_request", "body must be a JSON object");
        return {200, run_with_deadline(route->handler, body, cfg).dump()};
    } catch (const Timeout&) {
        return error(504, "timeout", "computation exceeded " + std::to_string(cfg.timeout_seconds) + " s");
    } catch (const json::exception& e) {
        return error(400, "bad_request", e.what());
    } catch (const BadRequest& e) {
        return error(400, "bad_request", e.what());
    } catch (const DomainError& e) {
        return error(422, "domain", e.what());
    } catch (const CutCrossingError& e) {
        return error(422, "cut_crossing", e.what());
    } catch (const NumericalError& e) {
        return error(422, "numerical", e.what());
    } catch (const TrackingError& e) {
        return error(422, "numerical", e.what());
    }
}

bool serve(const ServiceConfig& cfg, const std::string& host, int port) {
    httplib::Server svr;
    svr.set_default_headers({{"Access-Control-Allow-Origin", cfg.cors_origin},
                             {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                             {"Access-Control-Allow-Headers", "Content-Type"}});
    const auto bridge = [&cfg](const httplib::Request& in, httplib::Response& out) {
        const Response r = handle(cfg, {in.method, in.path, in.body});
        out.status = r.status;
        out.set_content(r.body, "application/json");
    };
    for (const Route& r : routes) {
        if (std::string(r.method) == "GET") {
            svr.Get(r.path, bridge);
        } else {
            svr.Post(r.path, bridge);
        }
    }
    svr.Options(R"(.*)", [](const httplib::Request&, httplib::Response& out) { out.status = 204; });
    return svr.listen(host, port);
}

}  // namespace slalom::frontend
