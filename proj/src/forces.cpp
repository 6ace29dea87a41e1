#include "capillary/forces.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "capillary/barriers.hpp"
#include "capillary/numerics.hpp"
#include "capillary/profile.hpp"

namespace capillary::forces {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuadTol = 1e-11;

double golden_min(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while ((b - a) > rel_tol * (std::fabs(a) + std::fabs(b))) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

ForceValue force_of_curve(const ProfileCurve& curve, double B, double gamma2) {
    if (curve.samples.size() < 2) throw std::invalid_argument("force_of_curve: empty curve");
    if (std::fabs(curve.xi_min() + 1.0) > 1e-6 || std::fabs(curve.xi_max() - 1.0) > 1e-6)
        throw std::invalid_argument("force_of_curve: curve does not reach both plates");
    if (curve.crossing && curve.crossing->xi >= -1.0 - 1e-9 && curve.crossing->xi <= 1.0 + 1e-9) {
        const double s = std::sin(0.5 * curve.crossing->psi);
        return {-4.0 * s * s};
    }
    const double u2 = curve.back().u;
    return {B * u2 * u2 - 2.0 * (1.0 - std::sin(gamma2))};
}

double force_at(const PlateConfig& config) {
    return profile::force_from_join(profile::solve_join_data(config));
}

double symmetric_force_limit(double gamma2) {
    if (!(gamma2 >= 0.0 && gamma2 <= kPi / 2))
        throw std::domain_error("symmetric_force_limit: gamma2 must lie in [0, pi/2]");
    // sin(pi - gamma2) = sin(gamma2): the two supplementary-angle forms of the
    // limit agree identically.
    return -2.0 * (1.0 - std::sin(gamma2));
}

AdmissibleRanges admissible_ranges(double B, double gamma2) {
    if (!(B > 0.0)) throw std::domain_error("admissible_ranges: B must be positive");
    const double psi2 = kPi / 2 - gamma2;
    AdmissibleRanges r;
    r.upper_lo = barriers::psi1_zero(B, gamma2);
    r.upper_hi = psi2;
    r.lower_lo = psi2;
    const barriers::Psi10 p = barriers::psi10(B, gamma2);
    r.lower_hi = p.value;
    r.lower_hi_closed = p.wide;  // (psi2, pi/2] when IV0 does not reach plate 1
    return r;
}

ForceSweep sweep_force(const PlateConfig& config, double B_hi, double B_lo, int n) {
    if (!(B_hi > B_lo && B_lo > 0.0))
        throw std::domain_error("sweep_force: need B_hi > B_lo > 0");
    if (n < 3) throw std::domain_error("sweep_force: need at least 3 grid points");

    const double psi1 = config.psi1();
    const double psi2 = config.psi2();

    ForceSweep sweep;
    if (std::fabs(psi1 - psi2) <= 1e-12) {
        sweep.classification = SweepClass::Symmetric;
    } else if (psi1 < psi2) {
        const double lo = barriers::psi1_zero(B_hi, config.gamma2);
        sweep.classification =
            psi1 > lo ? SweepClass::UpperClass : SweepClass::Generic;
    } else {
        const AdmissibleRanges r = admissible_ranges(B_hi, config.gamma2);
        const bool in_lower = r.lower_hi_closed ? (psi1 <= r.lower_hi) : (psi1 < r.lower_hi);
        sweep.classification = in_lower ? SweepClass::LowerClass : SweepClass::Generic;
    }

    auto force_of = [&](double b) {
        return force_at(PlateConfig(config.gamma1, config.gamma2, b));
    };

    sweep.points.reserve(static_cast<std::size_t>(n));
    const double lr = std::log(B_lo), hr = std::log(B_hi);
    for (int i = 0; i < n; ++i) {
        const double b = std::exp(lr + (hr - lr) * static_cast<double>(i) / (n - 1));
        try {
            sweep.points.push_back({b, force_of(b)});
        } catch (const std::exception&) {
            sweep.truncated = true;
        }
    }

    // interior minimum of the algebraic force, refined by golden section
    std::size_t imin = 0;
    for (std::size_t i = 1; i < sweep.points.size(); ++i)
        if (sweep.points[i].F < sweep.points[imin].F) imin = i;
    if (imin > 0 && imin + 1 < sweep.points.size()) {
        const double a = sweep.points[imin - 1].B;
        const double b = sweep.points[imin + 1].B;
        const double b_star = golden_min(force_of, a, b, 1e-8);
        sweep.extremum = SweepExtremum{b_star, force_of(b_star), 2.0 * std::sqrt(b_star / B_hi)};
    }
    return sweep;
}

double extremal_position(const NeighborClass& cls, double gamma2, double B_start) {
    if (!(B_start > 0.0)) throw std::domain_error("extremal_position: B_start must be positive");
    const double psi2 = kPi / 2 - gamma2;
    if (cls.kind == NeighborClass::Kind::Upper) {
        const double lo = barriers::psi1_zero(B_start, gamma2);
        if (!(cls.psi1 > lo && cls.psi1 < psi2))
            throw std::domain_error("extremal_position: psi1 outside the upper-class range");
        // eliminate B between the extremal-arc width and the full-span width:
        // delta_xi = 2 J(psi1+) / J(psi1_zero)
        const double j_plus = profile::arc_width(B_start, cls.psi1, 0.0, cls.psi1, psi2, kQuadTol);
        const double j_zero = profile::arc_width(B_start, lo, 0.0, lo, psi2, kQuadTol);
        return 2.0 * j_plus / j_zero;
    }
    const AdmissibleRanges r = admissible_ranges(B_start, gamma2);
    const bool ok = cls.psi1 > r.lower_lo &&
                    (r.lower_hi_closed ? cls.psi1 <= r.lower_hi : cls.psi1 < r.lower_hi);
    if (!ok) throw std::domain_error("extremal_position: psi1 outside the lower-class range");
    return profile::arc_width(B_start, psi2, 0.0, psi2, cls.psi1, kQuadTol);
}

double force_physical(double F_normalized, const PhysicalParams& params) {
    return params.sigma * F_normalized;
}

}  // namespace capillary::forces
