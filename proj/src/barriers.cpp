#include "capillary/barriers.hpp"

#include <cmath>
#include <numbers>

#include "capillary/numerics.hpp"
#include "capillary/profile.hpp"

namespace capillary::barriers {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuadTol = 1e-11;
constexpr double kRootXtol = 1e-14;

using numerics::Quadrant;
using numerics::SingularEnd;

void require_gamma2(double gamma2) {
    if (!(gamma2 >= 0.0 && gamma2 < kPi / 2))
        throw std::domain_error("gamma2 must lie in [0, pi/2)");
}

// Root in (lo_limit, hi_limit) of arc_width(B, psi_c, 0, ...) = 2 where the
// width is monotone in the moving endpoint.
double moving_lower_end(double B, double psi_c, double psi_hi, double lo_limit) {
    auto g = [&](double s) { return profile::arc_width(B, psi_c, 0.0, s, psi_hi, kQuadTol) - 2.0; };
    double lo = lo_limit + 0.5 * (psi_hi - lo_limit);
    int guard = 0;
    while (g(lo) <= 0.0) {
        lo = lo_limit + 0.5 * (lo - lo_limit);
        if (++guard > 900) throw std::runtime_error("barrier angle bracket collapsed");
    }
    return numerics::solve_monotone(g, lo, psi_hi * (1.0 - 1e-15), kRootXtol);
}

}  // namespace

const char* to_string(BarrierKind k) {
    switch (k) {
        case BarrierKind::T: return "T";
        case BarrierKind::G: return "G";
        case BarrierKind::I: return "I";
        case BarrierKind::II: return "II";
        case BarrierKind::III: return "III";
        case BarrierKind::IV: return "IV";
        case BarrierKind::IV0: return "IV0";
        case BarrierKind::V: return "V";
    }
    return "?";
}

BarrierKind barrier_kind_from_string(const std::string& s) {
    if (s == "T") return BarrierKind::T;
    if (s == "G") return BarrierKind::G;
    if (s == "I") return BarrierKind::I;
    if (s == "II") return BarrierKind::II;
    if (s == "III") return BarrierKind::III;
    if (s == "IV") return BarrierKind::IV;
    if (s == "IV0") return BarrierKind::IV0;
    if (s == "V") return BarrierKind::V;
    throw std::domain_error("unknown barrier kind: " + s);
}

Criticals critical_separations(double gamma2) {
    if (gamma2 == 0.0) return {0.0, 0.0};  // empty inclination range
    if (!(gamma2 > 0.0 && gamma2 < kPi / 2))
        throw std::domain_error("critical_separations: gamma2 must lie in (0, pi/2)");
    const double psi2 = kPi / 2 - gamma2;

    // IV0 is vertically tangent to plate 1 when its graph width equals 2:
    // sqrt(2 B0) = (1/2) * integral_{psi2}^{pi/2} cos / sqrt(sin gamma2 - cos).
    auto f0 = [&](double psi) {
        double q = profile::cos_gap(psi2, psi);
        if (q < 0.0) q = 0.0;
        return std::cos(psi) / std::sqrt(q);
    };
    const double i0 = numerics::quad_singular(f0, Quadrant{psi2, kPi / 2, SingularEnd::lo}, 1e-12);

    // V (the negative C = 1 curve) is vertically tangent to plate 1 when
    // sqrt(B00) = (1/(2 sqrt 2)) * integral_{psi2}^{pi/2} cos / sqrt(1 - cos).
    auto f00 = [&](double psi) {
        double q = profile::cos_gap(0.0, psi);
        if (q < 0.0) q = 0.0;
        return std::cos(psi) / std::sqrt(q);
    };
    const double i00 = numerics::quad_singular(f00, Quadrant{psi2, kPi / 2, SingularEnd::lo}, 1e-12);

    return {i0 * i0 / 8.0, i00 * i00 / 8.0};
}

double c1_arc_antiderivative(double psi) {
    if (!(psi > 0.0 && psi < kPi))
        throw std::domain_error("c1_arc_antiderivative: psi must lie in (0, pi)");
    const double r2 = std::numbers::sqrt2;
    return r2 * (std::log(std::tan(0.25 * psi)) + 2.0 * std::cos(0.5 * psi));
}

double psi1_zero(double B, double gamma2) {
    if (!(B > 0.0)) throw std::domain_error("psi1_zero: B must be positive");
    require_gamma2(gamma2);
    const double psi2 = kPi / 2 - gamma2;
    auto g = [&](double s) { return profile::arc_width(B, s, 0.0, s, psi2, kQuadTol) - 2.0; };
    double lo = 0.5 * psi2;
    int guard = 0;
    while (g(lo) <= 0.0) {
        lo *= 0.5;
        if (++guard > 900)
            throw std::runtime_error(
                "psi1_zero: no crossing-at-plate-1 solution below the T barrier bound");
    }
    return numerics::solve_monotone(g, lo, psi2 * (1.0 - 1e-15), kRootXtol);
}

Psi10 psi10(double B, double gamma2) {
    if (!(B > 0.0)) throw std::domain_error("psi10: B must be positive");
    if (!(gamma2 > 0.0 && gamma2 < kPi / 2))
        throw std::domain_error("psi10: gamma2 must lie in (0, pi/2)");
    const double psi2 = kPi / 2 - gamma2;
    const Criticals cr = critical_separations(gamma2);
    if (B > cr.B0) return {kPi / 2, true};
    auto g = [&](double s) { return profile::arc_width(B, psi2, 0.0, psi2, s, kQuadTol) - 2.0; };
    if (g(kPi / 2) <= 0.0) return {kPi / 2, false};  // B == B0 up to rounding
    return {numerics::solve_monotone(g, psi2 * (1.0 + 1e-15), kPi / 2, kRootXtol), false};
}

double barrier_angle_at_pi1(BarrierKind kind, double B, double gamma2) {
    require_gamma2(gamma2);
    const double psi2 = kPi / 2 - gamma2;
    switch (kind) {
        case BarrierKind::T: return -kPi / 2;
        case BarrierKind::G: return 0.0;
        case BarrierKind::I: return moving_lower_end(B, 0.0, psi2, 0.0);
        case BarrierKind::II: return psi1_zero(B, gamma2);
        case BarrierKind::III: return psi2;
        case BarrierKind::IV0: {
            const Psi10 p = psi10(B, gamma2);
            if (p.wide) throw std::domain_error("barrier IV0 does not reach plate 1 (B > B0)");
            return p.value;
        }
        case BarrierKind::V: {
            const Criticals cr = critical_separations(gamma2);
            if (B > cr.B00) throw std::domain_error("barrier V does not reach plate 1 (B > B00)");
            auto g = [&](double s) {
                return profile::arc_width(B, 0.0, 0.0, psi2, s, kQuadTol) - 2.0;
            };
            if (g(kPi / 2) <= 0.0) return kPi / 2;
            return numerics::solve_monotone(g, psi2 * (1.0 + 1e-15), kPi / 2, kRootXtol);
        }
        case BarrierKind::IV: return kPi / 2;
    }
    throw std::domain_error("unknown barrier kind");
}

ProfileCurve barrier(BarrierKind kind, double B, double gamma2, int n_samples) {
    if (!(B > 0.0)) throw std::domain_error("barrier: B must be positive");
    require_gamma2(gamma2);
    const double psi2 = kPi / 2 - gamma2;

    switch (kind) {
        case BarrierKind::T:
            return profile::solve_join(PlateConfig(0.0, gamma2, B), n_samples);
        case BarrierKind::G:
            return profile::solve_join(PlateConfig(kPi / 2, gamma2, B), n_samples);
        case BarrierKind::III:
            return profile::solve_join(PlateConfig(kPi - gamma2, gamma2, B), n_samples);
        case BarrierKind::IV:
            return profile::solve_join(PlateConfig(kPi, gamma2, B), n_samples);
        case BarrierKind::I: {
            const double s = moving_lower_end(B, 0.0, psi2, 0.0);
            ProfileCurve c = profile::arc_anchored(B, 0.0, 0.0, s, psi2, +1, -1.0, n_samples);
            c.on_barrier = true;
            return c;
        }
        case BarrierKind::II: {
            const double s = psi1_zero(B, gamma2);
            ProfileCurve c = profile::arc_anchored(B, s, 0.0, s, psi2, +1, -1.0, n_samples);
            c.crossing = Crossing{-1.0, s};
            c.on_barrier = true;
            return c;
        }
        case BarrierKind::IV0: {
            if (gamma2 == 0.0)
                throw std::domain_error("barrier IV0 degenerates for gamma2 = 0");
            const Psi10 p = psi10(B, gamma2);
            const double top = p.value;
            double anchor = -1.0;
            if (p.wide)
                anchor = 1.0 - profile::arc_width(B, psi2, 0.0, psi2, kPi / 2, kQuadTol);
            ProfileCurve c =
                profile::arc_anchored(B, psi2, 0.0, top, psi2, -1, anchor, n_samples);
            c.truncated = p.wide;
            c.crossing = Crossing{c.back().xi, psi2};
            c.on_barrier = true;
            return c;
        }
        case BarrierKind::V: {
            const Criticals cr = critical_separations(gamma2);
            const bool reaches = B <= cr.B00;
            double top = kPi / 2;
            double anchor = -1.0;
            if (reaches) {
                top = barrier_angle_at_pi1(BarrierKind::V, B, gamma2);
            } else {
                anchor = 1.0 - profile::arc_width(B, 0.0, 0.0, psi2, kPi / 2, kQuadTol);
            }
            ProfileCurve c = profile::arc_anchored(B, 0.0, 0.0, top, psi2, -1, anchor, n_samples);
            c.truncated = !reaches;
            c.on_barrier = true;
            return c;
        }
    }
    throw std::domain_error("unknown barrier kind");
}

std::pair<double, double> closed_form_I(double gamma2, double psi) {
    if (!(gamma2 > 0.0 && gamma2 < kPi / 2))
        throw std::domain_error("closed_form_I: gamma2 must lie in (0, pi/2)");
    const double psi2 = kPi / 2 - gamma2;
    if (!(psi > 0.0))
        throw std::domain_error("closed_form_I: psi must be positive (curve extends to -infinity)");
    if (psi > psi2 + 1e-12)
        throw std::domain_error("closed_form_I: psi must not exceed psi2");
    const double u = std::sqrt(2.0 * (1.0 - std::cos(psi)));
    const double x_rel = std::log(std::tan(0.25 * psi) / std::tan(0.25 * psi2)) -
                         4.0 * std::sin(0.25 * (psi + psi2)) * std::sin(0.25 * (psi - psi2));
    return {x_rel, u};
}

BarrierAtlas make_atlas(double gamma2, double B, int n_samples) {
    if (!(gamma2 > 0.0 && gamma2 < kPi / 2))
        throw std::domain_error("make_atlas: gamma2 must lie in (0, pi/2)");
    BarrierAtlas atlas;
    atlas.gamma2 = gamma2;
    atlas.B = B;
    const Criticals cr = critical_separations(gamma2);
    atlas.B0 = cr.B0;
    atlas.B00 = cr.B00;
    atlas.regime = B > cr.B0 ? Regime::Wide
                             : (B > cr.B00 ? Regime::Intermediate : Regime::Narrow);
    atlas.psi1_zero = psi1_zero(B, gamma2);
    const Psi10 p = psi10(B, gamma2);
    if (!p.wide) atlas.psi10 = p.value;
    for (BarrierKind k : {BarrierKind::T, BarrierKind::G, BarrierKind::I, BarrierKind::II,
                          BarrierKind::III, BarrierKind::IV, BarrierKind::IV0, BarrierKind::V})
        atlas.curves.emplace(k, barrier(k, B, gamma2, n_samples));
    return atlas;
}

}  // namespace capillary::barriers
