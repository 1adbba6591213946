#pragma once

// Geometry of the complex distance sqrt(r_cl(t)^2): sampled field, branch
// points, cut curves and the open/closed classification of a recollision.

#include <optional>
#include <string>
#include <vector>

#include "slalom/closest_approach.hpp"

namespace slalom {

struct DistanceField {
    TimeWindow region;
    int nx = 0;
    int ny = 0;
    /// Row-major, values[iy * nx + ix] at t = re(ix) + i im(iy).
    std::vector<cplx> values;
    /// Set on a node whose right or upper neighbour lies across a cut: Im of
    /// the principal root flips sign while Re is small against |Im|.
    std::vector<unsigned char> cut_flags;

    cplx node(int ix, int iy) const noexcept;
    cplx at(int ix, int iy) const noexcept { return values[static_cast<std::size_t>(iy) * nx + ix]; }
    bool flagged(int ix, int iy) const noexcept {
        return cut_flags[static_cast<std::size_t>(iy) * nx + ix] != 0;
    }
};

/// Throws DomainError if the resolution is below 2x2.
DistanceField distance_field(const Orbit& orbit, const TimeWindow& region, int nx, int ny);

/// Number of 8-connected clusters of flagged nodes.
int count_flag_clusters(const DistanceField& f);

enum class CutFamily { plus, minus };

struct BranchPoint {
    cplx t;
    /// z_cl(t) = +i p_perp (t - t_s) for plus, -i p_perp (t - t_s) for minus.
    CutFamily family = CutFamily::plus;
};

/// Newton roots of z_cl(t) -/+ i p_perp (t - t_s) in the window, excluding the
/// double zero at t_s. Empty for p_perp = 0.
std::vector<BranchPoint> find_branch_points(const Orbit& orbit, const TimeWindow& window);

struct CutCurve {
    std::vector<cplx> points;
    bool crosses_real_axis = false;
};

struct TraceOptions {
    /// Initial and maximum step, in units of 1/omega.
    double initial_step = 1e-3;
    double max_step = 0.05;
    double min_step = 1e-12;
    /// Accepted nodes satisfy |Im r^2| < tolerance |r^2|.
    double tolerance = 1e-9;
    int max_points = 200000;
};

/// Follows Im r^2 = 0 with Re r^2 decreasing from the branch point until the
/// curve leaves Re t in [bounds.re_lo, bounds.re_hi] or |Im t| exceeds three
/// tunnelling times. Throws NumericalError on step-size underflow.
CutCurve trace_cut(const BranchPoint& bp, const Orbit& orbit, const TimeWindow& bounds,
                   const TraceOptions& opts = {});

enum class Topology { open, closed };

const char* to_string(Topology t) noexcept;

struct TopologyReport {
    Topology topology = Topology::open;
    /// Sign test on Re v^2 at the outer gates; empty when the window does
    /// not hold the gate triple.
    std::optional<Topology> by_velocity;
    /// Whether any traced cut crosses the real axis; empty if not computed.
    std::optional<Topology> by_cuts;
    bool consistent = true;
    std::vector<CAPoint> gates;
    std::vector<BranchPoint> branch_points;
    std::vector<CutCurve> cuts;
    std::string note;
};

struct TopologyOptions {
    bool trace_cuts = true;
};

/// Default recollision window: omega t in (3pi/2, 5pi/2), the first soft
/// recollision.
TimeWindow first_recollision_window(const SaddleSolution& s, const FieldParams& fp);

TopologyReport classify_topology(const Orbit& orbit, const TimeWindow& recollision_window,
                                 const TopologyOptions& opts = {});

}  // namespace slalom
