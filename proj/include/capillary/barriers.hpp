#pragma once

#include <map>
#include <optional>
#include <utility>

#include "capillary/types.hpp"

// The eight reference curves that partition the joining solutions for a
// prescribed contact angle gamma2 on plate 2: T (gamma1 = 0), G (pi/2),
// I (the zero-force curve, C = 1), II (through the foot of plate 1), III
// (the symmetric solution), IV (gamma1 = pi), IV0 (through the foot of
// plate 2) and V (the negative C = 1 curve). IV0 and V are rigidly attached
// to plate 2 and reach plate 1 only below the critical separations B0 and
// B00 respectively.

namespace capillary::barriers {

enum class BarrierKind { T, G, I, II, III, IV, IV0, V };

const char* to_string(BarrierKind k);
BarrierKind barrier_kind_from_string(const std::string& s);

struct Criticals {
    double B0;
    double B00;
};

// B0: separation at which IV0 is vertically tangent to plate 1;
// B00: separation at which IV coincides with V. Both from the width of the
// respective rigid curve; gamma2 = 0 returns {0, 0}.
Criticals critical_separations(double gamma2);

// Elementary antiderivative of cos psi / sqrt(2 (1 - cos psi)):
// closed-form route for C = 1 arc widths (cross-checked against quadrature).
double c1_arc_antiderivative(double psi);

// Inclination of barrier II on plate 1: the root of
//   2 sqrt(2B) = integral_{psi}^{psi2} cos t dt / sqrt(cos psi - cos t),
// unique in (0, psi2).
double psi1_zero(double B, double gamma2);

struct Psi10 {
    double value;  // inclination of IV0 on plate 1, in (psi2, pi/2]
    bool wide;     // B > B0: IV0 does not reach plate 1, value = pi/2 by convention
};

Psi10 psi10(double B, double gamma2);

// Inclination at plate 1 of the named barrier for this (B, gamma2); for IV0
// and V only defined when the curve reaches plate 1.
double barrier_angle_at_pi1(BarrierKind kind, double B, double gamma2);

// The barrier curve itself, sampled with n_samples nodes per branch. IV0 and
// V come back `truncated` (graph cut at the vertical point) when they do not
// reach plate 1.
ProfileCurve barrier(BarrierKind kind, double B, double gamma2, int n_samples = 512);

// Explicit parametric point of barrier I in physical units with kappa = 1:
//   u = sqrt(2 (1 - cos psi)),
//   x - x2 = log(tan(psi/4) / tan(psi2/4)) - 4 sin((psi+psi2)/4) sin((psi-psi2)/4)
// for 0 < psi <= psi2. Returns (x_rel, u).
std::pair<double, double> closed_form_I(double gamma2, double psi);

struct BarrierAtlas {
    double gamma2 = 0.0;
    double B = 0.0;
    double B0 = 0.0;
    double B00 = 0.0;
    double psi1_zero = 0.0;
    std::optional<double> psi10;  // absent in the wide regime
    Regime regime = Regime::Wide;
    std::map<BarrierKind, ProfileCurve> curves;
};

BarrierAtlas make_atlas(double gamma2, double B, int n_samples = 512);

}  // namespace capillary::barriers
