#include <chrono>
#include <thread>

#include "doctest.h"
#include "slalom/frontend/serialize.hpp"
#include "slalom/frontend/service.hpp"

using namespace slalom;
using namespace slalom::frontend;

namespace {

ServiceConfig config() {
    ServiceConfig c;
    c.field = presets::argon_near_ir();
    return c;
}

json post(const std::string& path, const json& body, int expect = 200, const ServiceConfig& cfg = config()) {
    const Response r = handle(cfg, {"POST", path, body.dump()});
    REQUIRE(r.status == expect);
    return json::parse(r.body);
}

json momentum(double px, double pz) { return {{"px", px}, {"pz", pz}}; }

}  // namespace

TEST_CASE("saddle route") {
    const json s = post("/saddle", momentum(0.1, 0.2));
    CHECK(s["residual"].get<double>() < 1e-12);
    CHECK(s["ts"]["im"].get<double>() > 0.0);
}

TEST_CASE("standard contour at a cut-crossing momentum is reported discontinuous") {
    const FieldParams fp = presets::argon_near_ir();
    const SaddleSolution s = solve_saddle({0.02, 0.8}, fp);
    const ContourPath std_path = standard_contour(s, default_detection_time(s, fp));
    json body = momentum(0.02, 0.8);
    body["nodes"] = to_json(std_path)["nodes"];
    const json v = post("/contour/validate", body);
    CHECK(v["validation"]["continuous"] == false);
    CHECK(v["coulomb_action"].is_null());
}

TEST_CASE("auto contour validates on the round trip") {
    const json path = post("/contour/auto", momentum(0.02, 0.8));
    CHECK(path["validation"]["continuous"] == true);
    json body = momentum(0.02, 0.8);
    body["nodes"] = path["nodes"];
    const json v = post("/contour/validate", body);
    CHECK(v["validation"]["continuous"] == true);
    const json a = post("/amplitude", momentum(0.02, 0.8));
    CHECK(v["log10_yield"].get<double>() == doctest::Approx(a["log10_yield"].get<double>()).epsilon(1e-12));
}

TEST_CASE("branch map flags differ across the topology transition") {
    const double fw = presets::argon_near_ir().momentum_scale();
    json lo = momentum(0.001, 0.063 * fw);
    json hi = momentum(0.001, 0.0635 * fw);
    lo["nx"] = hi["nx"] = 60;
    lo["ny"] = hi["ny"] = 40;
    const json a = post("/branchmap", lo);
    const json b = post("/branchmap", hi);
    const auto crosses = [](const json& m) {
        bool any = false;
        for (const json& c : m["topology"]["cuts"]) any = any || c["crosses_real_axis"].get<bool>();
        return any;
    };
    CHECK_FALSE(crosses(a));
    CHECK(crosses(b));
    CHECK(a["topology"]["topology"] == "open");
    CHECK(b["topology"]["topology"] == "closed");
    CHECK(a["field"]["re"].size() == 60 * 40);
    CHECK(a["field"]["flags"].size() == 60 * 40);
}

TEST_CASE("tca and trajectory routes") {
    const json t = post("/tca", momentum(0.1, 0.2));
    CHECK(t["roots"].size() >= 3);
    CHECK(t["gates"].size() >= 1);
    json body = momentum(0.1, 0.2);
    body["samples"] = 50;
    const json tr = post("/trajectory", body);
    CHECK(tr["t"].size() == 50);
    CHECK(tr["z"].size() == 50);
    CHECK(std::abs(tr["t"][49]["im"].get<double>()) == 0.0);
}

TEST_CASE("identical requests give identical bodies") {
    const ServiceConfig cfg = config();
    const std::string body = momentum(0.1, 0.5).dump();
    const Response a = handle(cfg, {"POST", "/amplitude", body});
    const Response b = handle(cfg, {"POST", "/amplitude", body});
    CHECK(a.status == 200);
    CHECK(a.body == b.body);
}

TEST_CASE("error statuses") {
    const ServiceConfig cfg = config();
    CHECK(handle(cfg, {"POST", "/saddle", "{not json"}).status == 400);
    CHECK(handle(cfg, {"POST", "/saddle", R"({"px": 0.1})"}).status == 400);
    CHECK(handle(cfg, {"POST", "/saddle", R"({"px": "a", "pz": 0.1})"}).status == 400);
    CHECK(handle(cfg, {"POST", "/branchmap", R"({"px": 0.1, "pz": 0.2, "nx": 1201})"}).status == 400);
    CHECK(handle(cfg, {"POST", "/saddle", R"({"px": 0.1, "pz": 0.2, "gamma": 3.0})"}).status == 422);
    CHECK(handle(cfg, {"POST", "/saddle", R"({"px": 0.1, "pz": 10.0})"}).status == 422);
    CHECK(handle(cfg, {"POST", "/amplitude", R"({"px": 0.02, "pz": 0.8, "navigator": "standard"})"}).status == 422);
    CHECK(handle(cfg, {"POST", "/nowhere", "{}"}).status == 404);
    CHECK(handle(cfg, {"GET", "/saddle", ""}).status == 405);

    ServiceConfig hurried = cfg;
    hurried.timeout_seconds = 1e-6;
    const Response slow = handle(hurried, {"POST", "/branchmap", R"({"px": 0.1, "pz": 0.2, "nx": 600, "ny": 400})"});
    CHECK(slow.status == 504);
    CHECK(json::parse(slow.body)["error"] == "timeout");
    // let the abandoned computation finish before the process exits
    std::this_thread::sleep_for(std::chrono::seconds(3));
}

TEST_CASE("gamma override") {
    json body = momentum(0.1, 0.2);
    body["gamma"] = 0.5;
    const json s = post("/saddle", body);
    const json base = post("/saddle", momentum(0.1, 0.2));
    CHECK(s["tunnel_time"] != base["tunnel_time"]);
}

TEST_CASE("health lists the routes") {
    const Response r = handle(config(), {"GET", "/health", ""});
    CHECK(r.status == 200);
    CHECK(json::parse(r.body)["routes"].size() == service_routes().size());
}
