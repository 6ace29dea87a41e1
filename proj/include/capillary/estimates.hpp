#pragma once

#include "capillary/types.hpp"

// Checkable meniscus-height and narrow-channel force estimates. Bounds are
// exposed as values (with validity flags) so tests and the CLI can report
// margins rather than bare booleans.

namespace capillary::estimates {

// Strict upper bound sqrt((2/B)(cos psi0* - sin gamma2)) for the height of
// the symmetric solution on the half-channel (0, 1).
double symmetric_height_bound(double B, double gamma2);

struct HeightBounds {
    double lambda;            // sin psi2 - sin psi1, datum mismatch
    double U_m_sq_lower;      // lower bound on min height squared (may be negative = vacuous)
    double oscillation_upper; // bound on U_M - U_m via 2/(B*U_m_lower)
    bool oscillation_valid;   // B < lambda^2 / (8 (1 - sin gamma2))
    bool small_gap_regime;    // B < lambda^2 / 32: B*U_m^2 > lambda^2/(8B) applies
    double small_gap_lower;   // lambda^2 / (8 B^2), lower bound on U_m^2 in that regime
    enum class Side { Above, Below } side;  // meniscus above or below the axis for small B
};

// Bounds for the non-symmetric case gamma1 + gamma2 != pi. The case
// lambda < 0 is handled by reflection and reported with side = Below.
HeightBounds height_bounds_generic(double B, double gamma1, double gamma2);

// Separation threshold lambda^2 / (8 (1 - sin gamma2)) below which the
// joining solution lies above the zero-force barrier and the plates attract.
// gamma2 = pi/2 returns +infinity.
double attraction_threshold(double gamma1, double gamma2);

// Height jump sqrt(2 (1 - sin gamma2)) of the narrow-channel transition, in
// sqrt(kappa)-normalized units.
double height_jump(double gamma2);

}  // namespace capillary::estimates
