#include "capillary/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace capillary {

namespace {
constexpr double kPi = std::numbers::pi;
}

double ProfileCurve::max_first_integral_residual() const {
    double worst = 0.0;
    for (const auto& s : samples) {
        const double r = std::fabs(0.5 * B * s.u * s.u + std::cos(s.psi) - C);
        worst = std::max(worst, r);
    }
    return worst;
}

double ProfileCurve::height_at_xi(double x) const {
    if (samples.empty()) throw std::runtime_error("height_at_xi: empty curve");
    if (x < samples.front().xi - 1e-12 || x > samples.back().xi + 1e-12)
        throw std::runtime_error("height_at_xi: abscissa outside curve span");
    auto it = std::lower_bound(samples.begin(), samples.end(), x,
                               [](const OdeState& s, double v) { return s.xi < v; });
    if (it == samples.begin()) return it->u;
    if (it == samples.end()) return samples.back().u;
    const OdeState& hi = *it;
    const OdeState& lo = *(it - 1);
    const double dx = hi.xi - lo.xi;
    if (dx <= 0.0) return lo.u;
    const double t = (x - lo.xi) / dx;
    return lo.u + t * (hi.u - lo.u);
}

void ProfileCurve::rebuild_branches() {
    branches.clear();
    crossing.reset();
    if (samples.size() < 2) {
        if (!samples.empty()) branches.push_back({0, 0, samples[0].u > 0 ? 1 : (samples[0].u < 0 ? -1 : 0)});
        return;
    }
    auto sgn = [](double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); };
    std::size_t start = 0;
    int cur = sgn(samples[0].u);
    for (std::size_t i = 1; i < samples.size(); ++i) {
        int s = sgn(samples[i].u);
        if (s == cur || s == 0) continue;
        if (cur == 0) { cur = s; continue; }
        // sign change between i-1 and i: linear crossing estimate
        const OdeState& a = samples[i - 1];
        const OdeState& b = samples[i];
        const double t = a.u / (a.u - b.u);
        if (!crossing) crossing = Crossing{a.xi + t * (b.xi - a.xi), a.psi + t * (b.psi - a.psi)};
        branches.push_back({start, i - 1, cur});
        start = i;
        cur = s;
    }
    branches.push_back({start, samples.size() - 1, cur});
}

PlateConfig::PlateConfig(double g1, double g2, double b) : gamma1(g1), gamma2(g2), B(b) {
    if (!(b > 0.0) || !std::isfinite(b)) throw std::domain_error("PlateConfig: B must be positive");
    if (!(g1 >= 0.0 && g1 <= kPi)) throw std::domain_error("PlateConfig: gamma1 must lie in [0, pi]");
    if (!(g2 >= 0.0 && g2 < kPi / 2)) throw std::domain_error("PlateConfig: gamma2 must lie in [0, pi/2)");
}

double PlateConfig::psi1() const { return gamma1 - kPi / 2; }
double PlateConfig::psi2() const { return kPi / 2 - gamma2; }

PhysicalParams::PhysicalParams(double rho_, double g_, double sigma_) : rho(rho_), g(g_), sigma(sigma_) {
    if (!(rho > 0.0 && g > 0.0 && sigma > 0.0))
        throw std::domain_error("PhysicalParams: rho, g, sigma must all be positive");
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::Wide: return "wide";
        case Regime::Intermediate: return "intermediate";
        case Regime::Narrow: return "narrow";
    }
    return "?";
}

}  // namespace capillary
