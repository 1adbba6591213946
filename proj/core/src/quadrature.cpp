#include "slalom/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "slalom/error.hpp"

namespace slalom {

namespace {

using gk31 = boost::math::quadrature::gauss_kronrod<double, 31>;

constexpr std::size_t max_pieces = 50000;

struct Piece {
    cplx a, b;
    cplx value;
    double err = 0.0;
    double l1 = 0.0;
    int depth = 0;
};

Piece panel(const std::function<cplx(cplx)>& f, cplx a, cplx b, int depth) {
    Piece p{a, b, cplx(0.0), 0.0, 0.0, depth};
    const cplx h = b - a;
    p.value = gk31::integrate([&](double s) { return f(a + h * s) * h; }, 0.0, 1.0, 0, 0.0, &p.err, &p.l1);
    if (!std::isfinite(p.value.real()) || !std::isfinite(p.value.imag())) {
        throw NumericalError("quadrature produced a non-finite value");
    }
    return p;
}

}  // namespace

// Globally adaptive: one Gauss-Kronrod panel per piece, always bisecting the
// piece with the largest error estimate until the summed estimate meets the
// tolerance. The 1e-14 l1 floor keeps rounding noise on large integrands from
// forcing endless splits; an integrable endpoint singularity only costs a
// geometric run of ever smaller pieces.
PathIntegral integrate_path(const std::function<cplx(cplx)>& f, const std::vector<cplx>& nodes,
                            const QuadratureOptions& opts) {
    PathIntegral acc{cplx(0.0), 0.0, 0};
    if (nodes.size() < 2) return acc;
    const auto worse = [](const Piece& x, const Piece& y) { return x.err < y.err; };
    std::vector<Piece> heap;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (nodes[i + 1] == nodes[i]) continue;
        heap.push_back(panel(f, nodes[i], nodes[i + 1], 0));
    }
    if (heap.empty()) return acc;
    std::make_heap(heap.begin(), heap.end(), worse);

    double err = 0.0;
    double l1 = 0.0;
    for (const Piece& p : heap) {
        err += p.err;
        l1 += p.l1;
    }
    while (err > std::max(opts.abs_tolerance, 1e-14 * l1)) {
        std::pop_heap(heap.begin(), heap.end(), worse);
        const Piece worst = heap.back();
        heap.pop_back();
        if (worst.depth >= opts.max_depth || heap.size() + 2 > max_pieces) {
            throw NumericalError("quadrature did not converge on a path segment (error " +
                                 std::to_string(err) + ")");
        }
        const cplx m = 0.5 * (worst.a + worst.b);
        for (const Piece& half : {panel(f, worst.a, m, worst.depth + 1), panel(f, m, worst.b, worst.depth + 1)}) {
            err += half.err;
            l1 += half.l1;
            heap.push_back(half);
            std::push_heap(heap.begin(), heap.end(), worse);
        }
        err -= worst.err;
        l1 -= worst.l1;
    }
    // Sum small pieces first.
    std::sort(heap.begin(), heap.end(), [](const Piece& x, const Piece& y) { return std::abs(x.value) < std::abs(y.value); });
    for (const Piece& p : heap) acc.value += p.value;
    acc.error_estimate = err;
    acc.pieces = static_cast<int>(heap.size());
    return acc;
}

}  // namespace slalom
