#include "capillary/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace capillary::numerics {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPsiGuard = kPi / 2 - 1e-9;  // graph-branch limit
constexpr double kUBlowup = 1e8;

struct Deriv {
    double du, dpsi;
};

inline Deriv rhs(double B, double u, double psi) {
    const double c = std::cos(psi);
    return {std::tan(psi), B * u / c};
}

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// 4th-order embedded weights (the 7th stage is the FSAL evaluation at the result).
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

struct StepResult {
    double u, psi;
    double err;      // scaled error estimate
    bool finite;
};

StepResult dopri_step(double B, double u, double psi, double h, const Deriv& k1,
                      Deriv& k7_out, double atol, double rtol) {
    const auto f = [B](double uu, double pp) { return rhs(B, uu, pp); };
    const Deriv k2 = f(u + h * a21 * k1.du, psi + h * a21 * k1.dpsi);
    const Deriv k3 = f(u + h * (a31 * k1.du + a32 * k2.du),
                       psi + h * (a31 * k1.dpsi + a32 * k2.dpsi));
    const Deriv k4 = f(u + h * (a41 * k1.du + a42 * k2.du + a43 * k3.du),
                       psi + h * (a41 * k1.dpsi + a42 * k2.dpsi + a43 * k3.dpsi));
    const Deriv k5 = f(u + h * (a51 * k1.du + a52 * k2.du + a53 * k3.du + a54 * k4.du),
                       psi + h * (a51 * k1.dpsi + a52 * k2.dpsi + a53 * k3.dpsi + a54 * k4.dpsi));
    const Deriv k6 = f(u + h * (a61 * k1.du + a62 * k2.du + a63 * k3.du + a64 * k4.du + a65 * k5.du),
                       psi + h * (a61 * k1.dpsi + a62 * k2.dpsi + a63 * k3.dpsi + a64 * k4.dpsi +
                                  a65 * k5.dpsi));
    const double u5 = u + h * (b1 * k1.du + b3 * k3.du + b4 * k4.du + b5 * k5.du + b6 * k6.du);
    const double p5 =
        psi + h * (b1 * k1.dpsi + b3 * k3.dpsi + b4 * k4.dpsi + b5 * k5.dpsi + b6 * k6.dpsi);
    if (!std::isfinite(u5) || !std::isfinite(p5) || std::fabs(p5) >= kPi / 2)
        return {u5, p5, std::numeric_limits<double>::infinity(), false};
    const Deriv k7 = f(u5, p5);
    const double u4 = u + h * (e1 * k1.du + e3 * k3.du + e4 * k4.du + e5 * k5.du + e6 * k6.du +
                               e7 * k7.du);
    const double p4 = psi + h * (e1 * k1.dpsi + e3 * k3.dpsi + e4 * k4.dpsi + e5 * k5.dpsi +
                                 e6 * k6.dpsi + e7 * k7.dpsi);
    const double su = atol + rtol * std::max(std::fabs(u), std::fabs(u5));
    const double sp = atol + rtol * std::max(std::fabs(psi), std::fabs(p5));
    const double err = std::max(std::fabs(u5 - u4) / su, std::fabs(p5 - p4) / sp);
    k7_out = k7;
    return {u5, p5, err, true};
}

}  // namespace

ProfileCurve shoot(double B, const OdeState& start, double xi_end, double step_tol,
                   int n_record) {
    if (!(B > 0.0)) throw std::domain_error("shoot: B must be positive");
    if (!(std::fabs(start.psi) < kPi / 2))
        throw std::domain_error("shoot: |start.psi| must be < pi/2");
    if (xi_end == start.xi) throw std::domain_error("shoot: xi_end must differ from start.xi");
    if (!(step_tol > 0.0)) throw std::domain_error("shoot: step_tol must be positive");

    const double dir = xi_end > start.xi ? 1.0 : -1.0;
    const double atol = step_tol, rtol = step_tol;

    ProfileCurve out;
    out.B = B;
    out.C = 0.5 * B * start.u * start.u + std::cos(start.psi);

    std::vector<double> nodes;
    if (n_record > 0) {
        nodes.reserve(static_cast<std::size_t>(n_record) + 1);
        for (int i = 0; i <= n_record; ++i)
            nodes.push_back(start.xi + (xi_end - start.xi) * static_cast<double>(i) / n_record);
    }
    std::size_t next_node = 0;

    double xi = start.xi, u = start.u, psi = start.psi;
    auto record = [&](double x, double uu, double pp) { out.samples.push_back({x, uu, pp}); };
    record(xi, u, psi);
    if (n_record > 0) ++next_node;

    Deriv k1 = rhs(B, u, psi);
    double span = std::fabs(xi_end - start.xi);
    double h = dir * std::min(span, 1e-2 / (1.0 + std::fabs(k1.dpsi)));

    const int max_steps = 2000000;
    for (int step = 0; step < max_steps; ++step) {
        if (dir * (xi_end - xi) <= 0.0) break;
        bool hit_node = false;
        double target = xi_end;
        if (n_record > 0 && next_node < nodes.size()) target = nodes[next_node];
        if (dir * (xi + h - target) >= 0.0) {
            h = target - xi;
            hit_node = true;
        }
        if (std::fabs(h) < 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(xi))) {
            out.flag = std::fabs(psi) > kPi / 2 - 1e-6 ? CurveFlag::VerticalTangent
                                                       : CurveFlag::Stalled;
            break;
        }
        Deriv k7;
        StepResult r = dopri_step(B, u, psi, h, k1, k7, atol, rtol);
        if (!r.finite || r.err > 1.0) {
            const double shrink = r.finite ? std::max(0.2, 0.9 * std::pow(r.err, -0.2)) : 0.25;
            h *= shrink;
            continue;
        }
        xi += h;
        u = r.u;
        psi = r.psi;
        k1 = k7;  // FSAL
        if (std::fabs(psi) > kPsiGuard) {
            record(xi, u, psi);
            out.flag = CurveFlag::VerticalTangent;
            break;
        }
        if (std::fabs(u) > kUBlowup) {
            record(xi, u, psi);
            out.flag = CurveFlag::Diverged;
            break;
        }
        if (n_record > 0) {
            if (hit_node) {
                record(xi, u, psi);
                ++next_node;
            }
        } else {
            record(xi, u, psi);
        }
        const double grow = std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(r.err, 1e-10), -0.2)));
        h *= grow;
        if (dir * (xi + h - xi_end) > 0.0) h = xi_end - xi;
    }

    if (out.flag == CurveFlag::Complete && dir * (xi_end - xi) > 1e-12 * std::max(1.0, span))
        out.flag = CurveFlag::Stalled;

    if (dir < 0.0) {
        std::reverse(out.samples.begin(), out.samples.end());
    }
    out.rebuild_branches();
    return out;
}

}  // namespace capillary::numerics
