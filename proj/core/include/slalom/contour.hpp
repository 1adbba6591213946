#pragma once

// Integration contours from the ionization time to the detection time that
// thread the gates between branch cuts of sqrt(r_cl(t)^2).

#include <vector>

#include "slalom/closest_approach.hpp"

namespace slalom {

enum class Navigator { automatic, standard };

const char* to_string(Navigator n) noexcept;

struct ContourPath {
    /// Piecewise-linear path; first node t_kappa (or t_s), last node real T.
    std::vector<cplx> nodes;
    std::vector<CAPoint> selected_ca;

    cplx start() const { return nodes.front(); }
    double detection_time() const { return nodes.back().real(); }
};

/// t_0 plus the given number of laser periods.
double default_detection_time(const SaddleSolution& s, const FieldParams& fp, double periods = 2.75);

/// Keeps the roots that satisfy any of the three gate rules, sorted by real
/// part. Roots flagged as t_s or its mirror image are never gates.
std::vector<CAPoint> select_gates(const std::vector<CAPoint>& roots, const SaddleSolution& s,
                                  const FieldParams& fp, double u = 1e-8);

/// Starts at t_kappa (or t_s), passes through t_0 unless a gate already lies
/// in the first half cycle, then through each gate and finally to T.
ContourPath build_contour(const std::vector<CAPoint>& gates, const SaddleSolution& s,
                          const FieldParams& fp, double T, bool from_t_kappa = true);

/// t_kappa -> t_0 -> T.
ContourPath standard_contour(const SaddleSolution& s, double T, bool from_t_kappa = true);

struct NavigationOptions {
    double gate_tolerance = 1e-8;
    RootFinderOptions roots;
};

/// Root search over the default window, gate selection and contour assembly.
ContourPath navigate(const Orbit& orbit, double T, const NavigationOptions& opts = {});

struct ValidationReport {
    bool continuous = true;
    /// Sample steps where sqrt(r^2) had to change sign to stay continuous.
    int flips = 0;
    /// Largest relative gap |s - c| / |c| between the principal root s and its
    /// analytic continuation c along the path.
    double max_jump = 0.0;
    double nearest_singularity_distance = 0.0;
    bool near_singularity = false;
    /// Index of the segment holding the first flip, or -1.
    int first_bad_segment = -1;
    int samples = 0;
};

inline constexpr double kNearSingularityRadius = 0.5;

/// Continues sqrt(r_cl^2) along roughly `samples` points (at least 64 per
/// segment, more where it varies fast) and compares it with the principal
/// branch.
ValidationReport validate_contour(const ContourPath& path, const Orbit& orbit, int samples = 10000);

}  // namespace slalom
