#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "capillary/barriers.hpp"
#include "capillary/numerics.hpp"
#include "capillary/profile.hpp"
#include "oracles.hpp"

using namespace capillary;
namespace pf = capillary::profile;
constexpr double kPi = std::numbers::pi;

TEST_CASE("first_integral basics") {
    CHECK(pf::first_integral(1.0, 0.0, 0.0) == 1.0);
    CHECK(pf::first_integral(2.0, 1.0, kPi / 2) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("first integral is constant along shot trajectories") {
    ProfileCurve c = numerics::shoot(0.6, {0.0, 0.7, -0.4}, 2.0, 1e-10);
    const double c0 = pf::first_integral(0.6, c.samples.front().u, c.samples.front().psi);
    for (const auto& s : c.samples)
        CHECK(std::fabs(pf::first_integral(0.6, s.u, s.psi) - c0) < 1e-8);
}

TEST_CASE("height_at") {
    // crossing point: C = cos psi gives zero height
    CHECK(pf::height_at(0.7, std::cos(0.4), 0.4, +1) == 0.0);
    // C = 1 at psi2: the zero-force barrier endpoint sqrt((2/B)(1 - sin gamma2))
    const double B = 0.3, gamma2 = kPi / 3;
    const double psi2 = kPi / 2 - gamma2;
    CHECK(pf::height_at(B, 1.0, psi2, +1) ==
          doctest::Approx(std::sqrt(2.0 / B * (1.0 - std::sin(gamma2)))).epsilon(1e-14));
    // sign convention and clamping
    CHECK(pf::height_at(1.0, std::cos(0.3) - 1e-13, 0.3, -1) == 0.0);
    CHECK_THROWS_AS(pf::height_at(1.0, 0.2, 0.0, +1), std::domain_error);
}

TEST_CASE("height_at agrees with the shot trajectory at matched states") {
    const double B = 0.5, C = 1.2;
    const double u0 = pf::height_at(B, C, kPi / 4, +1);
    ProfileCurve c = numerics::shoot(B, {0.0, u0, kPi / 4}, 1.0, 1e-10);
    for (const auto& s : c.samples)
        CHECK(pf::height_at(B, C, s.psi, +1) == doctest::Approx(s.u).epsilon(1e-7));
}

TEST_CASE("arc: degenerate zero-width curve") {
    ProfileCurve c = pf::arc(0.4, 1.5, 0.3, 0.3, +1, 2.0, 64);
    CHECK(c.samples.size() == 1);
    CHECK(c.samples[0].xi == 2.0);
}

TEST_CASE("arc: first-integral residual stays below 1e-9") {
    ProfileCurve c = pf::arc(0.8, 1.3, -0.9, 1.1, +1, 0.0, 512);
    CHECK(c.max_first_integral_residual() < 1e-9);
    for (std::size_t i = 1; i < c.samples.size(); ++i)
        CHECK(c.samples[i].xi > c.samples[i - 1].xi);
}

TEST_CASE("arc: interior axis touch demands a branch split") {
    CHECK_THROWS_AS(pf::arc(0.8, std::cos(0.5), 0.2, 1.0, +1, 0.0, 64),
                    pf::BranchSplitError);
}

TEST_CASE("solve_join: supplementary angles give the odd-symmetric curve") {
    const double gamma2 = kPi / 4, B = 0.2;
    ProfileCurve c = pf::solve_join(PlateConfig(kPi - gamma2, gamma2, B));
    REQUIRE(c.crossing.has_value());
    CHECK(std::fabs(c.crossing->xi) < 1e-9);  // crossing at the midpoint
    CHECK(c.max_first_integral_residual() < 1e-9);
    // odd symmetry after centering
    for (const auto& s : c.samples) {
        const double mirrored = c.height_at_xi(std::min(c.xi_max(), std::max(c.xi_min(), -s.xi)));
        CHECK(std::fabs(s.u + mirrored) < 1e-8);
    }
}

TEST_CASE("solve_join: crossing angle solves the half-width condition") {
    const double gamma2 = kPi / 4, B = 0.2;
    ProfileCurve c = pf::solve_join(PlateConfig(kPi - gamma2, gamma2, B));
    const double psi0 = c.crossing->psi;
    // residual of the half-width condition, via the midpoint oracle
    const double half = oracles::J_integral_mid(psi0, kPi / 2 - gamma2, 400000L) /
                        std::sqrt(2.0 * B);
    CHECK(half == doctest::Approx(1.0).epsilon(1e-8));
    // cross-check by a shoot round trip from the crossing state
    ProfileCurve shot = numerics::shoot(B, {c.crossing->xi, 0.0, psi0}, 1.0, 1e-11);
    CHECK(shot.samples.back().psi == doctest::Approx(kPi / 2 - gamma2).epsilon(1e-8));
}

TEST_CASE("solve_join: datum psi1_zero reproduces barrier II through (-1, 0)") {
    const double B = 0.1, gamma2 = kPi / 6;
    const double s = barriers::psi1_zero(B, gamma2);
    ProfileCurve c = pf::solve_join(PlateConfig(s + kPi / 2, gamma2, B));
    CHECK(c.on_barrier);
    REQUIRE(c.crossing.has_value());
    CHECK(std::fabs(c.crossing->xi + 1.0) < 1e-8);
    CHECK(std::fabs(c.samples.front().u) < 1e-8);
}

TEST_CASE("solve_join spans all five qualitative bands") {
    const double gamma2 = kPi / 4, B = 0.08;  // intermediate regime for pi/4
    const double psi2 = kPi / 2 - gamma2;
    const double upper_lo = barriers::psi1_zero(B, gamma2);
    struct Case {
        double gamma1;
        bool crossing;
        bool positive;
    };
    // T-G band, G-I band, upper-class, lower-class
    const Case cases[] = {{0.2, false, true},
                          {1.8, false, true},
                          {0.5 * (upper_lo + psi2) + kPi / 2, true, false},
                          {2.6, true, false}};
    for (const auto& tc : cases) {
        ProfileCurve c = pf::solve_join(PlateConfig(tc.gamma1, gamma2, B));
        CHECK(c.max_first_integral_residual() < 1e-9);
        CHECK(std::fabs(c.xi_min() + 1.0) < 1e-9);
        CHECK(std::fabs(c.xi_max() - 1.0) < 1e-9);
        CHECK(c.crossing.has_value() == tc.crossing);
        if (tc.positive)
            for (const auto& s : c.samples) CHECK(s.u > 0.0);
    }
    // below IV0: all-negative curve
    ProfileCurve neg = pf::solve_join(PlateConfig(3.1, gamma2, B));
    CHECK_FALSE(neg.crossing.has_value());
    for (const auto& s : neg.samples) CHECK(s.u < 0.0);
}

TEST_CASE("solve_join: plate endpoints carry the requested inclinations") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> ug1(0.05, kPi - 0.05), ug2(0.1, 1.4),
        uB(-5.0, 0.8);
    for (int k = 0; k < 30; ++k) {
        const double g1 = ug1(rng), g2 = ug2(rng), B = std::exp(uB(rng));
        PlateConfig cfg(g1, g2, B);
        ProfileCurve c = pf::solve_join(cfg);
        CHECK(c.samples.front().psi == doctest::Approx(cfg.psi1()).epsilon(1e-9));
        CHECK(c.samples.back().psi == doctest::Approx(cfg.psi2()).epsilon(1e-9));
    }
}

TEST_CASE("oracle equivalence: shooting from the plate-2 state reproduces plate 1") {
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> ug1(0.2, kPi - 0.2), ug2(0.15, 1.3), uB(-4.0, 0.5);
    for (int k = 0; k < 20; ++k) {
        const double g1 = ug1(rng), g2 = ug2(rng), B = std::exp(uB(rng));
        if (std::fabs(g1 + g2 - kPi) < 0.02) continue;
        ProfileCurve c = pf::solve_join(PlateConfig(g1, g2, B));
        ProfileCurve shot = numerics::shoot(B, c.samples.back(), -1.0, 1e-11);
        REQUIRE(shot.flag == CurveFlag::Complete);
        CHECK(std::fabs(shot.samples.front().u - c.samples.front().u) < 1e-6);
    }
}

TEST_CASE("crossing_angle_symmetric") {
    // B -> 0: the meniscus tends to a straight segment at inclination psi2
    const double gamma2 = kPi / 6, psi2 = kPi / 2 - gamma2;
    CHECK(std::fabs(pf::crossing_angle_symmetric(1e-6, gamma2) - psi2) < 1e-2);
    // flat degenerate case
    CHECK(pf::crossing_angle_symmetric(0.5, kPi / 2) == 0.0);
    // frozen shoot-bisection oracle value for (0.5, pi/6)
    CHECK(std::fabs(pf::crossing_angle_symmetric(0.5, gamma2) - 0.6897743562) < 1e-7);
}

TEST_CASE("check_noncrossing") {
    const double B = 0.15, gamma2 = kPi / 4;
    ProfileCurve ii = barriers::barrier(barriers::BarrierKind::II, B, gamma2);
    ProfileCurve iii = barriers::barrier(barriers::BarrierKind::III, B, gamma2);
    CHECK(pf::check_noncrossing(ii, ii));
    CHECK(pf::check_noncrossing(ii, iii));

    // curves launched with matched inclination, different heights
    std::mt19937 rng(456);
    std::uniform_real_distribution<double> uB(0.1, 1.2), uu(0.2, 0.9), ud(0.05, 0.4),
        up(-0.6, 0.6);
    for (int k = 0; k < 50; ++k) {
        const double b = uB(rng), u0 = uu(rng), p0 = up(rng);
        ProfileCurve lo = numerics::shoot(b, {0.0, u0, p0}, 1.2, 1e-10, 96);
        ProfileCurve hi = numerics::shoot(b, {0.0, u0 + ud(rng), p0}, 1.2, 1e-10, 96);
        if (lo.flag != CurveFlag::Complete || hi.flag != CurveFlag::Complete) continue;
        CHECK(pf::check_noncrossing(lo, hi));
    }

    ProfileCurve far = numerics::shoot(0.5, {5.0, 0.1, 0.0}, 6.0, 1e-9);
    CHECK_THROWS_AS(pf::check_noncrossing(ii, far), std::invalid_argument);
}

TEST_CASE("PlateConfig validation") {
    CHECK_THROWS_AS(PlateConfig(0.5, 0.5, -1.0), std::domain_error);
    CHECK_THROWS_AS(PlateConfig(-0.1, 0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(PlateConfig(0.5, kPi / 2, 1.0), std::domain_error);
}
