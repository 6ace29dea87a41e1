#pragma once

#include <optional>

#include "capillary/types.hpp"

// Solution curves of the capillarity system built from the first integral
//
//     (B/2) u^2 + cos psi = C,
//
// parametrized by inclination: dxi/dpsi = cos psi / (B u). Arcs of constant
// height sign are assembled into joining solutions of the two-plate problem
// (plates at xi = -/+1, width exactly 2).

namespace capillary::profile {

// C = (B/2) u^2 + cos psi.
double first_integral(double B, double u, double psi);

// u = sign * sqrt((2/B)(C - cos psi)). Values of C - cos psi in (-1e-12, 0)
// clamp to zero (endpoint touch); anything lower is a domain error.
double height_at(double B, double C, double psi, int sign);

// cos(psi_c) - cos(psi) in cancellation-free product form.
double cos_gap(double psi_c, double psi);

// xi-extent of a constant-sign arc between inclinations psi_a < psi_b, for
// the first-integral constant C = cos(psi_c) + dC (dC >= 0):
//     (1/sqrt(2B)) * integral of cos psi / sqrt(dC + cos psi_c - cos psi).
// psi_c must be the maximum point of cos over [psi_a, psi_b] (an endpoint,
// or 0 when the interval straddles it); dC = 0 makes the integrand singular
// there and is removed analytically.
double arc_width(double B, double psi_c, double dC, double psi_a, double psi_b,
                 double abs_tol = 1e-10);

// Single monotone-psi branch sampled at n_samples psi-nodes, anchored so the
// first sample (the left end) sits at anchor_xi. sign = +1 requires
// psi_from <= psi_to, sign = -1 requires psi_from >= psi_to (psi decreases
// left to right below the axis). C - cos psi may vanish only at endpoints.
ProfileCurve arc(double B, double C, double psi_from, double psi_to, int sign,
                 double anchor_xi, int n_samples = 512);

// Same with the first-integral constant split as C = cos(psi_c) + dC for
// stability near barrier data.
ProfileCurve arc_anchored(double B, double psi_c, double dC, double psi_from,
                          double psi_to, int sign, double anchor_xi, int n_samples = 512);

// Interior zero of C - cos psi: the requested arc would cross the axis and
// must be split by the caller.
struct BranchSplitError : std::domain_error {
    using std::domain_error::domain_error;
};

struct NoJoinError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class JoinTopology {
    PositiveSingle,  // u > 0 across the channel (C >= cos psi1 anchor)
    NegativeSingle,  // u < 0 across the channel
    Crossing         // crosses the axis between the plates
};

// Scalar solution of the joining problem, cheap enough for sweeps: the
// topology, anchor decomposition C = cos(anchor_psi) + dC, and for crossing
// curves the crossing angle psi0 and abscissa xi_cross.
struct JoinData {
    JoinTopology topology;
    double B = 0.0;
    double psi1 = 0.0, psi2 = 0.0;
    double anchor_psi = 0.0;
    double dC = 0.0;
    double C = 0.0;
    std::optional<double> psi0;
    double xi_cross = 0.0;
    bool on_barrier = false;
};

JoinData solve_join_data(const PlateConfig& config);

// The unique curve meeting plate 1 at inclination psi1 (xi = -1) and plate 2
// at inclination psi2 (xi = +1). Crossing solutions are assembled from two
// branches sharing the crossing angle with reversed orientation.
ProfileCurve solve_join(const PlateConfig& config, int n_samples = 512);

// Crossing angle psi0* of the symmetric solution (gamma1 = pi - gamma2):
// half-width condition 1 = (1/sqrt(2B)) * J(psi0*). gamma2 = pi/2 returns 0.
double crossing_angle_symmetric(double B, double gamma2);

// Normalized force of a joining configuration without building the sampled
// curve: -2(1 - cos psi0) for crossing solutions, 2(C - 1) otherwise.
double force_from_join(const JoinData& jd);

// True iff the height ordering of two curves with matched inclination at a
// common abscissa persists over their whole common interval (they do not
// cross). Throws if the curves share no interval.
bool check_noncrossing(const ProfileCurve& a, const ProfileCurve& b);

}  // namespace capillary::profile
