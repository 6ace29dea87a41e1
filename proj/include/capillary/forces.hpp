#pragma once

#include <optional>
#include <vector>

#include "capillary/types.hpp"

// Signed normalized horizontal forces between the plates. Sign convention:
// negative repels, positive attracts. Curves crossing the axis between the
// plates give F = -2(1 - cos psi0); non-crossing curves give F = B*u0^2
// where u0 is the extremum height of the extended meniscus, equivalently
// F = B*u2^2 - 2(1 - sin gamma2) through the first integral.

namespace capillary::forces {

struct ForceValue {
    double normalized;  // F / sigma
};

// Force of a curve joining both plates (samples must span [-1, 1]).
ForceValue force_of_curve(const ProfileCurve& curve, double B, double gamma2);

// Normalized force for given joining data, without building a sampled curve.
double force_at(const PlateConfig& config);

// Limit of the symmetric (supplementary-angle) repelling force as the plates
// come together: -2(1 - sin gamma2). Lower bound, approached but never
// attained.
double symmetric_force_limit(double gamma2);

// Admissible inclination ranges on plate 1 for the two neighbor classes of
// the symmetric solution: upper (psi1_zero, psi2) open, lower (psi2, hi]
// with hi = pi/2 closed in the wide regime, hi = psi10 open otherwise.
struct AdmissibleRanges {
    double upper_lo, upper_hi;  // open interval
    double lower_lo, lower_hi;
    bool lower_hi_closed;
};

AdmissibleRanges admissible_ranges(double B, double gamma2);

struct NeighborClass {
    enum class Kind { Upper, Lower } kind;
    double psi1;  // the chosen fixed inclination on plate 1
};

enum class SweepClass { UpperClass, LowerClass, Symmetric, Generic };

struct SweepPoint {
    double B;
    double F;
};

struct SweepExtremum {
    double B_star;
    double F_star;
    double xi_star;  // extremal separation in units of the starting frame (2 = start)
};

struct ForceSweep {
    std::vector<SweepPoint> points;  // ascending in B
    std::optional<SweepExtremum> extremum;
    SweepClass classification = SweepClass::Generic;
    bool truncated = false;
};

// Force versus separation with both contact angles held fixed, on a
// log-spaced grid of n points over [B_lo, B_hi]; an interior minimum is
// refined by golden-section search. config.B is ignored; B_hi is the
// starting separation of the plate-approach experiment.
ForceSweep sweep_force(const PlateConfig& config, double B_hi, double B_lo, int n);

// Separation (in units of the starting frame, where the initial separation
// is 2) at which the extremal repelling force of the given neighbor class is
// achieved. Upper class: 2*J(psi1+)/J(psi1_zero(B_start)); lower class:
// K(psi1-)/sqrt(2 B_start).
double extremal_position(const NeighborClass& cls, double gamma2, double B_start);

// F = sigma * F_normalized.
double force_physical(double F_normalized, const PhysicalParams& params);

}  // namespace capillary::forces
