#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "capillary/types.hpp"

// Numerical kernels: adaptive Gauss-Kronrod quadrature with analytic removal
// of inverse-square-root endpoint singularities, bracketed monotone root
// finding (Brent), and an adaptive Runge-Kutta integrator for the capillarity
// system. The integrator is the independent oracle used to cross-check every
// quadrature-built curve.

namespace capillary::numerics {

enum class SingularEnd { lo, hi, none };

// Integration range. Both bounds are angles in (-pi, pi); `singular_end`
// declares at which endpoint the integrand carries a 1/sqrt singularity.
struct Quadrant {
    double lo;
    double hi;
    SingularEnd singular_end = SingularEnd::none;
};

// Tolerance could not be met within the subdivision budget; carries the
// best available estimate.
struct QuadratureError : std::runtime_error {
    double best_estimate;
    double error_estimate;
    QuadratureError(const std::string& msg, double best, double err)
        : std::runtime_error(msg), best_estimate(best), error_estimate(err) {}
};

// Endpoint singularity stronger than x^(-1/2); the integral does not exist.
struct NonIntegrableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1].
inline constexpr double kGK_nodes[8] = {
    0.0,
    0.2077849550078985,
    0.4058451513773972,
    0.5860872354676911,
    0.7415311855993945,
    0.8648644233597691,
    0.9491079123427585,
    0.9914553711208126,
};
inline constexpr double kGK_wk[8] = {
    0.2094821410847278,
    0.2044329400752989,
    0.1903505780647854,
    0.1690047266392679,
    0.1406532597155259,
    0.1047900103222502,
    0.0630920926299785,
    0.0229353220105292,
};
// Gauss weights attach to the even-index nodes (0, 2, 4, 6).
inline constexpr double kGK_wg[4] = {
    0.4179591836734694,
    0.3818300505051189,
    0.2797053914892767,
    0.1294849661688697,
};

template <class F>
std::pair<double, double> gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double f0 = f(c);
    double k = kGK_wk[0] * f0;
    double g = kGK_wg[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kGK_nodes[i];
        const double fi = f(c + dx) + f(c - dx);
        k += kGK_wk[i] * fi;
        if ((i & 1) == 0) g += kGK_wg[i / 2] * fi;
    }
    k *= h;
    g *= h;
    double err = std::fabs(k - g);
    // classic QUADPACK sharpening of the raw difference
    err = err * std::sqrt(std::min(1.0, 200.0 * err / (std::fabs(k) + 1e-300)));
    return {k, std::max(err, std::fabs(k) * 1e-16)};
}

// Adaptive bisection on [a, b] with a global absolute error budget.
template <class F>
double adaptive_gk(const F& f, double a, double b, double abs_tol) {
    if (a == b) return 0.0;
    struct Seg { double a, b, val, err; };
    auto [v0, e0] = gk15(f, a, b);
    std::vector<Seg> segs{{a, b, v0, e0}};
    const double total_len = std::fabs(b - a);
    const double min_len = total_len * 0x1p-52;
    const std::size_t max_segs = 6000;
    while (true) {
        double sum = 0.0, errsum = 0.0;
        std::size_t worst = 0;
        double worst_err = -1.0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            sum += segs[i].val;
            errsum += segs[i].err;
            if (segs[i].err > worst_err) { worst_err = segs[i].err; worst = i; }
        }
        if (errsum <= abs_tol) return sum;
        const Seg s = segs[worst];
        if (segs.size() >= max_segs || std::fabs(s.b - s.a) <= min_len)
            throw QuadratureError("quadrature: tolerance not reached within subdivision budget",
                                  sum, errsum);
        const double m = 0.5 * (s.a + s.b);
        auto [vl, el] = gk15(f, s.a, m);
        auto [vr, er] = gk15(f, m, s.b);
        segs[worst] = {s.a, m, vl, el};
        segs.push_back({m, s.b, vr, er});
    }
}

}  // namespace detail

// Improper integral of `f` over `range`. A declared singular endpoint is
// removed analytically by the substitution x = end -/+ t^2, which turns any
// A/sqrt(x - end) behavior into a bounded smooth integrand; adaptive
// Gauss-Kronrod then resolves the rest. Throws NonIntegrableError when the
// endpoint blow-up is stronger than x^(-1/2), QuadratureError when the
// subdivision budget is exhausted.
template <class F>
double quad_singular(const F& f, const Quadrant& range, double abs_tol) {
    if (!(abs_tol > 0.0)) throw std::domain_error("quad_singular: abs_tol must be positive");
    if (!(range.lo < range.hi)) {
        if (range.lo == range.hi) return 0.0;
        throw std::domain_error("quad_singular: range.lo must be < range.hi");
    }
    if (range.singular_end == SingularEnd::none)
        return detail::adaptive_gk(f, range.lo, range.hi, abs_tol);

    const double len = range.hi - range.lo;
    const double T = std::sqrt(len);
    const bool at_lo = range.singular_end == SingularEnd::lo;
    auto g = [&](double t) {
        const double x = at_lo ? range.lo + t * t : range.hi - t * t;
        return 2.0 * t * f(x);
    };
    try {
        // dx and 2t dt carry the same orientation, no sign flip either way
        return detail::adaptive_gk(g, 0.0, T, abs_tol);
    } catch (const QuadratureError& qe) {
        // Distinguish a genuinely divergent endpoint (worse than x^(-1/2):
        // the substituted integrand still blows up at t = 0) from a merely
        // exhausted budget.
        const double near = std::fabs(g(1e-12 * T));
        const double far = std::fabs(g(1e-6 * T));
        if (!std::isfinite(near) || near > 100.0 * (far + 1.0))
            throw NonIntegrableError(
                "quad_singular: endpoint singularity stronger than x^(-1/2)");
        throw;
    }
}

// Root of a continuous, strictly monotone g on [bracket_lo, bracket_hi] with
// a sign change. Brent's method with guaranteed bisection fallback; `tol` is
// the absolute width of the final enclosing interval. Deterministic.
template <class G>
double solve_monotone(const G& g, double bracket_lo, double bracket_hi, double tol) {
    if (!(tol > 0.0)) throw std::domain_error("solve_monotone: tol must be positive");
    double a = bracket_lo, b = bracket_hi;
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw BracketError("solve_monotone: invalid bracket");
    double fa = g(a), fb = g(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw BracketError("solve_monotone: no sign change on bracket");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) { c = a; fc = fa; d = b - a; e = d; }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {  // secant
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {  // inverse quadratic
                const double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d; d = p / q;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = g(b);
    }
    return b;
}

// Adaptive integration of the capillarity system
//     dU/dxi = tan(psi),  dpsi/dxi = B*U / cos(psi)
// from `start` toward `xi_end` (either direction) with an embedded
// Runge-Kutta 5(4) pair and proportional step control. Integration stops
// with a flagged partial curve when |psi| runs into pi/2 (vertical tangent)
// or |U| blows up. First-integral drift stays below ~10 * step_tol.
//
// n_record > 0 asks for samples at exactly n_record+1 uniformly spaced
// abscissae (steps land on the nodes); n_record == 0 records every accepted
// step.
ProfileCurve shoot(double B, const OdeState& start, double xi_end, double step_tol = 1e-9,
                   int n_record = 0);

}  // namespace capillary::numerics
