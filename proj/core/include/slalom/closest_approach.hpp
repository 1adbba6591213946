#pragma once

// Complex closest-approach times: roots of r_cl(t).v(t) = 0.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "slalom/orbit.hpp"

namespace slalom {

enum CAFlags : std::uint32_t {
    ca_none = 0,
    /// The root is t_s itself, where r_cl vanishes.
    ca_saddle = 1u << 0,
    /// The mirror image of t_s below the real axis; not a physical gate.
    ca_conjugate_saddle = 1u << 1,
};

struct CAPoint {
    cplx t;
    double re_v2 = 0.0;
    /// -1, 0 or +1.
    int im_sign = 0;
    double residual = 0.0;
    std::uint32_t flags = ca_none;

    bool excluded() const noexcept { return flags & (ca_saddle | ca_conjugate_saddle); }
};

/// Rectangle in the complex time plane.
struct TimeWindow {
    double re_lo = 0.0;
    double re_hi = 0.0;
    double im_lo = 0.0;
    double im_hi = 0.0;

    bool contains(cplx t) const noexcept {
        return t.real() >= re_lo && t.real() <= re_hi && t.imag() >= im_lo && t.imag() <= im_hi;
    }
};

/// Re(omega t) in (Re(omega t_s) - pi/2, omega T], Im t in [-2 tau_T, 2 tau_T].
TimeWindow default_ca_window(const SaddleSolution& s, const FieldParams& fp, double T);

/// Rectangle over one recollision region, omega t in (omega_lo, omega_hi), with
/// the default imaginary extent.
TimeWindow phase_window(const SaddleSolution& s, const FieldParams& fp, double omega_lo,
                        double omega_hi);

struct RootFinderOptions {
    int seeds_re = 60;
    int seeds_im = 40;
    int max_iterations = 60;
    double residual_tolerance = 1e-10;
    /// Roots closer than this times 1/omega are merged.
    double dedup = 1e-6;
};

/// Multi-start Newton on f = r.v with f' = v^2 - r.F, deduplicated and
/// sorted by real part.
std::vector<CAPoint> find_ca_roots(const Orbit& orbit, const TimeWindow& window,
                                   const RootFinderOptions& opts = {});

std::vector<CAPoint> find_ca_roots(const Momentum& p, const SaddleSolution& s,
                                   const FieldParams& fp, const TimeWindow& window,
                                   const RootFinderOptions& opts = {});

/// Polishes a single starting guess; returns false if Newton does not reach
/// the residual tolerance.
bool polish_ca_root(const Orbit& orbit, cplx& t, int max_iterations = 60);

CAPoint make_ca_point(const Orbit& orbit, cplx t);

class TrackingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MonodromyResult {
    /// permutation[i] is the index of the starting root that root i ends on.
    std::vector<int> permutation;
    std::vector<cplx> start_roots;
    std::vector<cplx> end_roots;
    int steps_taken = 0;
};

/// Follows the gate triple of the first soft recollision (omega t in
/// (3pi/2, 5pi/2)) around a loop in momentum space: the half circle of the
/// given radius in p_x >= center.px, closed by its diameter. The loop starts
/// and ends at (center.px, center.pz - radius). Throws TrackingError when the
/// tracker cannot keep the roots apart.
MonodromyResult monodromy_test(const Momentum& center, double radius, int steps,
                               const FieldParams& fp, int turns = 1);

bool is_three_cycle(const std::vector<int>& perm);

}  // namespace slalom
