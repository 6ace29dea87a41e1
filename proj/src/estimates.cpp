#include "capillary/estimates.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "capillary/profile.hpp"

namespace capillary::estimates {

namespace {
constexpr double kPi = std::numbers::pi;
}

double symmetric_height_bound(double B, double gamma2) {
    if (!(B > 0.0)) throw std::domain_error("symmetric_height_bound: B must be positive");
    const double psi0 = profile::crossing_angle_symmetric(B, gamma2);
    const double gap = profile::cos_gap(psi0, kPi / 2 - gamma2);  // cos psi0 - sin gamma2
    return std::sqrt(std::max(0.0, 2.0 / B * gap));
}

HeightBounds height_bounds_generic(double B, double gamma1, double gamma2) {
    if (!(B > 0.0)) throw std::domain_error("height_bounds_generic: B must be positive");
    const double psi1 = gamma1 - kPi / 2;
    const double psi2 = kPi / 2 - gamma2;
    double lambda = std::sin(psi2) - std::sin(psi1);
    if (lambda == 0.0)
        throw std::domain_error(
            "height_bounds_generic: supplementary angles (lambda = 0); use the symmetric "
            "machinery");
    HeightBounds hb;
    hb.side = lambda > 0.0 ? HeightBounds::Side::Above : HeightBounds::Side::Below;
    lambda = std::fabs(lambda);  // the reflected case carries identical magnitudes
    hb.lambda = lambda;
    const double one_m_s = 1.0 - std::sin(gamma2);
    hb.U_m_sq_lower = lambda * lambda / (4.0 * B * B) - 2.0 / B * one_m_s;
    hb.oscillation_valid = one_m_s > 0.0 ? (B < lambda * lambda / (8.0 * one_m_s)) : true;
    hb.oscillation_upper = hb.U_m_sq_lower > 0.0
                               ? 2.0 / (B * std::sqrt(hb.U_m_sq_lower))
                               : std::numeric_limits<double>::infinity();
    hb.small_gap_regime = B < lambda * lambda / 32.0;
    hb.small_gap_lower = lambda * lambda / (8.0 * B * B);
    return hb;
}

double attraction_threshold(double gamma1, double gamma2) {
    const double psi1 = gamma1 - kPi / 2;
    const double psi2 = kPi / 2 - gamma2;
    const double lambda = std::fabs(std::sin(psi2) - std::sin(psi1));
    if (gamma2 == kPi / 2) return std::numeric_limits<double>::infinity();
    const double one_m_s = 1.0 - std::sin(gamma2);
    return lambda * lambda / (8.0 * one_m_s);
}

double height_jump(double gamma2) {
    if (!(gamma2 >= 0.0 && gamma2 <= kPi / 2))
        throw std::domain_error("height_jump: gamma2 must lie in [0, pi/2]");
    return std::sqrt(2.0 * (1.0 - std::sin(gamma2)));
}

}  // namespace capillary::estimates
