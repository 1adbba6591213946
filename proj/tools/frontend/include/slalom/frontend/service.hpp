#pragma once

// Stateless JSON service over the core. `handle` is a pure function of the
// configuration and the request, so it is tested without a socket; `serve`
// only binds it to HTTP.

#include <string>
#include <vector>

#include "slalom/field.hpp"

namespace slalom::frontend {

struct ServiceConfig {
    FieldParams field{1.0, 1.0, 1.0};
    /// Detection horizon in laser periods after t_0.
    double periods = 2.75;
    int max_nx = 1200;
    int max_ny = 800;
    int max_trajectory_samples = 20000;
    /// Per-request compute budget.
    double timeout_seconds = 30.0;
    std::string cors_origin = "*";
    /// Requests may override gamma only inside this band.
    double gamma_min = 0.1;
    double gamma_max = 1.5;
};

struct Request {
    std::string method;
    std::string path;
    std::string body;
};

struct Response {
    int status = 200;
    std::string body;
};

const std::vector<std::string>& service_routes();

Response handle(const ServiceConfig& cfg, const Request& req);

/// Blocks until the server stops. Returns false if the port could not be bound.
bool serve(const ServiceConfig& cfg, const std::string& host, int port);

}  // namespace slalom::frontend
