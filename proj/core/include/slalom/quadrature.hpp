#pragma once

// Adaptive Gauss-Kronrod quadrature of an analytic function along a
// piecewise-linear path in the complex plane.

#include <functional>
#include <vector>

#include "slalom/field.hpp"

namespace slalom {

struct QuadratureOptions {
    double abs_tolerance = 1e-9;
    /// Bisection depth inside one straight segment.
    int max_depth = 40;
};

struct PathIntegral {
    cplx value;
    double error_estimate = 0.0;
    int pieces = 0;
};

/// Throws NumericalError if the tolerance cannot be met within the depth limit.
PathIntegral integrate_path(const std::function<cplx(cplx)>& f, const std::vector<cplx>& nodes,
                            const QuadratureOptions& opts = {});

}  // namespace slalom
