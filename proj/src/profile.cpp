#include "capillary/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "capillary/numerics.hpp"

namespace capillary::profile {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWidthQuadTol = 1e-11;   // per width evaluation inside root solves
constexpr double kSegQuadTol = 1e-12;     // per sample segment of an arc
constexpr double kClampTol = 1e-12;       // treat C - cos psi in (-kClampTol, 0) as 0
constexpr double kRootXtol = 1e-14;

using numerics::Quadrant;
using numerics::SingularEnd;

// Integral over [lo, hi] of cos psi / sqrt(dC + cos psi_c - cos psi), scaled
// by 1/sqrt(2B). The inverse-square-root substitution psi = s0 +/- t^2 is
// applied at the near-singular endpoint s0 (where cos is largest); offsets
// from s0 are kept in t^2 form so the gap stays fully accurate even when
// t^2 underflows relative to s0.
double width_integral(double B, double psi_c, double dC, double lo, double hi,
                      SingularEnd se, double tol) {
    if (lo == hi) return 0.0;
    const bool at_lo = se != SingularEnd::hi;
    const double s0 = at_lo ? lo : hi;
    const double dir = at_lo ? 1.0 : -1.0;
    const double base = dC + cos_gap(psi_c, s0);  // gap at the expansion endpoint
    auto g = [&](double t) {
        const double d = dir * t * t;  // psi - s0
        // cos(s0) - cos(s0 + d) without cancellation
        const double step = 2.0 * std::sin(s0 + 0.5 * d) * std::sin(0.5 * d);
        double q = base + step;
        if (q < 0.0) q = 0.0;
        return 2.0 * t * std::cos(s0 + d) / std::sqrt(q);
    };
    const double T = std::sqrt(hi - lo);
    // For small positive `base` the integrand dips to zero on a t-scale far
    // below any node spacing; integrate that structural region separately so
    // the refinement actually sees it.
    double t_dip = 0.0;
    if (base > 0.0) {
        const double slope = std::fabs(std::sin(s0));
        t_dip = slope > 1e-3 ? std::sqrt(base / slope) : std::pow(2.0 * base, 0.25);
    }
    double val;
    if (t_dip > 0.0 && 16.0 * t_dip < T) {
        val = numerics::quad_singular(g, Quadrant{0.0, 16.0 * t_dip, SingularEnd::none},
                                      0.5 * tol) +
              numerics::quad_singular(g, Quadrant{16.0 * t_dip, T, SingularEnd::none},
                                      0.5 * tol);
    } else {
        val = numerics::quad_singular(g, Quadrant{0.0, T, SingularEnd::none}, tol);
    }
    return val / std::sqrt(2.0 * B);
}

// Crossing-curve total width as a function of the crossing angle psi0:
// branch [psi0, psi_left] below the axis plus branch [psi0, psi2] above it.
double crossing_width(double B, double psi0, double psi_left, double psi2, double tol) {
    double w = 0.0;
    if (psi_left > psi0)
        w += width_integral(B, psi0, 0.0, psi0, psi_left, SingularEnd::lo, tol);
    if (psi2 > psi0)
        w += width_integral(B, psi0, 0.0, psi0, psi2, SingularEnd::lo, tol);
    return w;
}

// Solve crossing_width(psi0) = target for psi0 in (0, hi_end). The width
// diverges logarithmically as psi0 -> 0 and is strictly decreasing.
double solve_crossing_angle(double B, double psi_left, double psi2, double hi_end,
                            double target) {
    auto g = [&](double p0) {
        return crossing_width(B, p0, psi_left, psi2, kWidthQuadTol) - target;
    };
    double lo = 0.5 * hi_end;
    double glo = g(lo);
    int guard = 0;
    while (glo <= 0.0) {
        lo *= 0.5;
        if (++guard > 900 || lo < 1e-290)
            throw NoJoinError("crossing angle bracket collapsed");
        glo = g(lo);
    }
    return numerics::solve_monotone(g, lo, hi_end, kRootXtol);
}

// Solve width(dC) = target for dC >= 0 on a fixed psi-interval, log
// parametrized. Returns 0 (data on a barrier) when even dC -> 0 cannot
// stretch the arc to the target.
struct DcRoot {
    double dC;
    bool on_barrier;
};

DcRoot solve_dc(double B, double psi_c, double lo, double hi, double target) {
    auto g = [&](double z) {
        return arc_width(B, psi_c, std::exp(z), lo, hi, kWidthQuadTol) - target;
    };
    double z_lo = -110.0;
    if (g(z_lo) <= 0.0) return {0.0, true};
    double z_hi = 0.0;
    int guard = 0;
    while (g(z_hi) > 0.0) {
        z_hi += 3.0;
        if (++guard > 40) throw NoJoinError("first-integral bracket expansion failed");
    }
    const double z = numerics::solve_monotone(g, z_lo, z_hi, 1e-13);
    return {std::exp(z), false};
}

}  // namespace

double first_integral(double B, double u, double psi) {
    return 0.5 * B * u * u + std::cos(psi);
}

double cos_gap(double psi_c, double psi) {
    return 2.0 * std::sin(0.5 * (psi_c + psi)) * std::sin(0.5 * (psi - psi_c));
}

double height_at(double B, double C, double psi, int sign) {
    if (!(B > 0.0)) throw std::domain_error("height_at: B must be positive");
    double q = C - std::cos(psi);
    if (q < 0.0) {
        if (q < -kClampTol) throw std::domain_error("height_at: C - cos psi is negative");
        q = 0.0;
    }
    return sign * std::sqrt(2.0 / B * q);
}

double arc_width(double B, double psi_c, double dC, double psi_a, double psi_b, double abs_tol) {
    if (!(B > 0.0)) throw std::domain_error("arc_width: B must be positive");
    if (psi_a == psi_b) return 0.0;
    const double lo = std::min(psi_a, psi_b);
    const double hi = std::max(psi_a, psi_b);
    if (lo < 0.0 && hi > 0.0) {
        // the inclination sweep straddles the horizontal point; split there
        return width_integral(B, psi_c, dC, lo, 0.0, SingularEnd::hi, 0.5 * abs_tol) +
               width_integral(B, psi_c, dC, 0.0, hi, SingularEnd::lo, 0.5 * abs_tol);
    }
    const SingularEnd se =
        std::fabs(lo) <= std::fabs(hi) ? SingularEnd::lo : SingularEnd::hi;
    return width_integral(B, psi_c, dC, lo, hi, se, abs_tol);
}

ProfileCurve arc_anchored(double B, double psi_c, double dC, double psi_from, double psi_to,
                          int sign, double anchor_xi, int n_samples) {
    if (!(B > 0.0)) throw std::domain_error("arc: B must be positive");
    if (dC < 0.0) {
        if (dC < -kClampTol) throw std::domain_error("arc: C below cos(anchor)");
        dC = 0.0;
    }
    ProfileCurve out;
    out.B = B;
    out.C = std::cos(psi_c) + dC;

    if (psi_from == psi_to) {
        const double q = dC + cos_gap(psi_c, psi_from);
        out.samples.push_back({anchor_xi, sign * std::sqrt(std::max(0.0, 2.0 / B * q)), psi_from});
        out.branches.push_back({0, 0, sign});
        return out;
    }
    if (sign > 0 ? psi_from > psi_to : psi_from < psi_to)
        throw std::domain_error("arc: psi orientation inconsistent with height sign");
    const int n = std::max(2, n_samples);
    out.samples.reserve(static_cast<std::size_t>(n));

    double xi = anchor_xi;
    double prev_psi = psi_from;
    for (int k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / (n - 1);
        const double psi = k == n - 1 ? psi_to : psi_from + t * (psi_to - psi_from);
        double q = dC + cos_gap(psi_c, psi);
        if (q < 0.0) {
            if (q < -kClampTol) {
                if (k == 0 || k == n - 1)
                    throw std::domain_error("arc: C - cos psi negative at an endpoint");
                throw BranchSplitError("arc: C - cos psi vanishes inside the branch");
            }
            q = 0.0;
        }
        if (k > 0)
            xi += arc_width(B, psi_c, dC, std::min(prev_psi, psi), std::max(prev_psi, psi),
                            kSegQuadTol);
        out.samples.push_back({xi, sign * std::sqrt(2.0 / B * q), psi});
        prev_psi = psi;
    }
    out.branches.push_back({0, out.samples.size() - 1, sign});
    return out;
}

ProfileCurve arc(double B, double C, double psi_from, double psi_to, int sign, double anchor_xi,
                 int n_samples) {
    const double lo = std::min(psi_from, psi_to);
    const double hi = std::max(psi_from, psi_to);
    double psi_c;
    if (lo < 0.0 && hi > 0.0)
        psi_c = 0.0;
    else
        psi_c = std::fabs(lo) <= std::fabs(hi) ? lo : hi;
    const double dC = C - std::cos(psi_c);
    if (dC < -kClampTol) {
        // C - cos psi changes sign: inside the interval when C clears the far
        // endpoint, hopeless otherwise
        const double far = psi_c == lo ? hi : lo;
        if (psi_c == 0.0 || C >= std::cos(far) - kClampTol)
            throw BranchSplitError("arc: C - cos psi vanishes inside the branch");
        throw std::domain_error("arc: C below cos psi over the whole branch");
    }
    return arc_anchored(B, psi_c, std::max(0.0, dC), psi_from, psi_to, sign, anchor_xi,
                        n_samples);
}

JoinData solve_join_data(const PlateConfig& config) {
    const double B = config.B;
    const double psi1 = config.psi1();
    const double psi2 = config.psi2();

    JoinData jd;
    jd.B = B;
    jd.psi1 = psi1;
    jd.psi2 = psi2;

    // data within this width residual of a barrier snap onto it (the induced
    // shift in C is of the residual squared, far below every tolerance here)
    constexpr double kBarrierWindow = 1e-9;

    if (psi1 < psi2) {
        // at or above the symmetric solution
        double w_max = std::numeric_limits<double>::infinity();
        if (psi1 > 0.0)
            w_max = width_integral(B, psi1, 0.0, psi1, psi2, SingularEnd::lo, kWidthQuadTol);
        if (std::fabs(w_max - 2.0) <= kBarrierWindow) {
            // exactly barrier II: crossing at the foot of plate 1
            jd.topology = JoinTopology::PositiveSingle;
            jd.anchor_psi = psi1;
            jd.dC = 0.0;
            jd.C = std::cos(psi1);
            jd.on_barrier = true;
            jd.psi0 = psi1;
            jd.xi_cross = -1.0;
            return jd;
        }
        if (w_max > 2.0) {
            const double anchor = psi1 > 0.0 ? psi1 : 0.0;
            const auto root = solve_dc(B, anchor, psi1, psi2, 2.0);
            jd.topology = JoinTopology::PositiveSingle;
            jd.anchor_psi = anchor;
            jd.dC = root.dC;
            jd.C = std::cos(anchor) + root.dC;
            jd.on_barrier = anchor == psi1 && (root.on_barrier || root.dC < 1e-18);
            if (jd.on_barrier) {
                jd.psi0 = psi1;
                jd.xi_cross = -1.0;
            }
            return jd;
        }
        const double psi0 = solve_crossing_angle(B, psi1, psi2, psi1, 2.0);
        jd.topology = JoinTopology::Crossing;
        jd.anchor_psi = psi0;
        jd.dC = 0.0;
        jd.C = std::cos(psi0);
        jd.psi0 = psi0;
        jd.xi_cross = -1.0 + width_integral(B, psi0, 0.0, psi0, psi1, SingularEnd::lo,
                                            kWidthQuadTol);
        return jd;
    }

    // psi1 >= psi2: at or below the symmetric solution
    const double t_min =
        psi1 == psi2
            ? 0.0
            : width_integral(B, psi2, 0.0, psi2, psi1, SingularEnd::lo, kWidthQuadTol);
    if (std::fabs(t_min - 2.0) <= kBarrierWindow) {
        // data on the rigid curve through the foot of plate 2
        jd.topology = JoinTopology::NegativeSingle;
        jd.anchor_psi = psi2;
        jd.dC = 0.0;
        jd.C = std::cos(psi2);
        jd.on_barrier = true;
        jd.psi0 = psi2;
        jd.xi_cross = 1.0;
        return jd;
    }
    if (t_min < 2.0) {
        const double psi0 = solve_crossing_angle(B, psi1, psi2, psi2, 2.0);
        jd.topology = JoinTopology::Crossing;
        jd.anchor_psi = psi0;
        jd.dC = 0.0;
        jd.C = std::cos(psi0);
        jd.psi0 = psi0;
        jd.xi_cross = -1.0 + width_integral(B, psi0, 0.0, psi0, psi1, SingularEnd::lo,
                                            kWidthQuadTol);
        return jd;
    }
    const auto root = solve_dc(B, psi2, psi2, psi1, 2.0);
    jd.topology = JoinTopology::NegativeSingle;
    jd.anchor_psi = psi2;
    jd.dC = root.dC;
    jd.C = std::cos(psi2) + root.dC;
    jd.on_barrier = root.on_barrier || root.dC < 1e-18;
    if (jd.on_barrier) {
        jd.psi0 = psi2;
        jd.xi_cross = 1.0;
    }
    return jd;
}

ProfileCurve solve_join(const PlateConfig& config, int n_samples) {
    const JoinData jd = solve_join_data(config);
    ProfileCurve out;
    switch (jd.topology) {
        case JoinTopology::PositiveSingle:
            out = arc_anchored(jd.B, jd.anchor_psi, jd.dC, jd.psi1, jd.psi2, +1, -1.0,
                               n_samples);
            if (jd.on_barrier) out.crossing = Crossing{-1.0, jd.psi1};
            break;
        case JoinTopology::NegativeSingle:
            out = arc_anchored(jd.B, jd.anchor_psi, jd.dC, jd.psi1, jd.psi2, -1, -1.0,
                               n_samples);
            if (jd.on_barrier) out.crossing = Crossing{1.0, jd.psi2};
            break;
        case JoinTopology::Crossing: {
            const double psi0 = *jd.psi0;
            ProfileCurve left =
                arc_anchored(jd.B, psi0, 0.0, jd.psi1, psi0, -1, -1.0, n_samples);
            const double xi0 = left.back().xi;
            ProfileCurve right = arc_anchored(jd.B, psi0, 0.0, psi0, jd.psi2, +1, xi0,
                                              n_samples);
            out = std::move(left);
            // the crossing sample is shared; keep one copy
            out.samples.insert(out.samples.end(), right.samples.begin() + 1,
                               right.samples.end());
            out.branches.push_back(
                {out.branches.back().last, out.samples.size() - 1, +1});
            out.crossing = Crossing{xi0, psi0};
            break;
        }
    }
    out.B = jd.B;
    out.C = jd.C;
    out.on_barrier = jd.on_barrier;
    // root residual grows like the width derivative near barrier corners
    if (std::fabs(out.back().xi - 1.0) > 5e-7)
        throw NoJoinError("joining solution failed to span the channel");
    return out;
}

double crossing_angle_symmetric(double B, double gamma2) {
    if (!(B > 0.0)) throw std::domain_error("crossing_angle_symmetric: B must be positive");
    if (!(gamma2 >= 0.0 && gamma2 <= kPi / 2))
        throw std::domain_error("crossing_angle_symmetric: gamma2 must lie in [0, pi/2]");
    const double psi2 = kPi / 2 - gamma2;
    if (psi2 == 0.0) return 0.0;  // flat solution
    return solve_crossing_angle(B, psi2, psi2, psi2, 2.0);
}

double force_from_join(const JoinData& jd) {
    if (jd.topology == JoinTopology::Crossing) {
        const double s = std::sin(0.5 * *jd.psi0);
        return -4.0 * s * s;
    }
    const double s = std::sin(0.5 * jd.anchor_psi);
    return 2.0 * (jd.dC - 2.0 * s * s);  // 2(C - 1), cancellation-free
}

bool check_noncrossing(const ProfileCurve& a, const ProfileCurve& b) {
    const double lo = std::max(a.xi_min(), b.xi_min());
    const double hi = std::min(a.xi_max(), b.xi_max());
    if (!(lo < hi)) throw std::invalid_argument("check_noncrossing: no common interval");
    const int n = 1024;
    double scale = 1.0;
    std::vector<double> diff(n + 1);
    int ref = 0;
    double ref_mag = -1.0;
    for (int i = 0; i <= n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / n;
        diff[i] = a.height_at_xi(x) - b.height_at_xi(x);
        scale = std::max({scale, std::fabs(a.height_at_xi(x)), std::fabs(b.height_at_xi(x))});
        if (std::fabs(diff[i]) > ref_mag) {
            ref_mag = std::fabs(diff[i]);
            ref = i;
        }
    }
    const double tol = 1e-9 * scale;
    const double s = diff[ref] >= 0.0 ? 1.0 : -1.0;
    for (int i = 0; i <= n; ++i)
        if (s * diff[i] < -tol) return false;
    return true;
}

}  // namespace capillary::profile
