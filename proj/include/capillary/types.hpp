#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Core value types shared by all modules: sampled profile curves of the
// planar capillarity system
//
//     (sin psi)_xi = B * U,   U_xi = tan psi
//
// in the normalized frame where the plates sit at xi = -1 and xi = +1,
// together with the plate-pair problem data.

namespace capillary {

// One sampled state of a profile curve. `u` is the dimensionless height,
// `psi` the inclination of the curve against the horizontal.
struct OdeState {
    double xi = 0.0;
    double u = 0.0;
    double psi = 0.0;
};

// A maximal sub-range of samples on which psi is monotone in xi.
// `sign` is the sign of u there (equals the sign of dpsi/dxi).
struct Branch {
    std::size_t first = 0;
    std::size_t last = 0;
    int sign = 0;
};

// Axis crossing of a curve: u(xi0) = 0 with inclination psi0.
struct Crossing {
    double xi = 0.0;
    double psi = 0.0;
};

enum class CurveFlag {
    Complete,         // reached the requested end
    VerticalTangent,  // |psi| ran into pi/2, curve ceases to be a graph
    Diverged,         // |u| blew up
    Stalled           // step size underflowed away from a vertical point
};

struct ProfileCurve {
    std::vector<OdeState> samples;  // xi strictly increasing
    double B = 0.0;                 // separation parameter the curve was built with
    double C = 0.0;                 // first-integral constant (B/2)u^2 + cos psi
    std::vector<Branch> branches;
    std::optional<Crossing> crossing;
    CurveFlag flag = CurveFlag::Complete;
    bool truncated = false;   // barrier curve that does not reach the far plate
    bool on_barrier = false;  // joining data landed exactly on a barrier

    bool empty() const { return samples.empty(); }
    const OdeState& front() const { return samples.front(); }
    const OdeState& back() const { return samples.back(); }

    double xi_min() const { return samples.front().xi; }
    double xi_max() const { return samples.back().xi; }

    // Largest |(B/2)u^2 + cos psi - C| over all samples.
    double max_first_integral_residual() const;

    // Linear interpolation of u at abscissa x; x must lie inside [xi_min, xi_max].
    double height_at_xi(double x) const;

    // Recompute `branches` (and `crossing` if an interior sign change of u
    // is bracketed) from the samples. Used for shot trajectories.
    void rebuild_branches();
};

// Problem instance: contact angles on the two plates and the separation
// parameter B = kappa * a^2 (plate separation 2a, plates at xi = -/+1).
struct PlateConfig {
    double gamma1;  // contact angle on plate 1, in [0, pi]
    double gamma2;  // contact angle on plate 2, in [0, pi/2)
    double B;       // > 0

    PlateConfig(double g1, double g2, double b);

    // Inclination data induced on the plates.
    double psi1() const;  // gamma1 - pi/2
    double psi2() const;  // pi/2 - gamma2
};

// Dimensional constants; kappa = rho * g / sigma.
struct PhysicalParams {
    double rho;    // density difference, > 0
    double g;      // gravitational acceleration, > 0
    double sigma;  // surface tension, > 0

    PhysicalParams(double rho_, double g_, double sigma_);
    double kappa() const { return rho * g / sigma; }
};

// Plate-separation regimes relative to the criticals B0 > B00.
enum class Regime { Wide, Intermediate, Narrow };

const char* to_string(Regime r);

}  // namespace capillary
