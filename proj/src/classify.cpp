#include "capillary/classify.hpp"

#include <cmath>
#include <numbers>

#include "capillary/barriers.hpp"
#include "capillary/forces.hpp"
#include "capillary/profile.hpp"

namespace capillary::classify {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOnBarrierTol = 1e-10;  // |psi1 - barrier datum| treated as on-barrier
constexpr double kZeroForceTol = 1e-8;

bool near(double a, double b) { return std::fabs(a - b) <= kOnBarrierTol; }

}  // namespace

std::string region_name(Region r, Regime regime) {
    switch (r) {
        case Region::OnT: return "OnT";
        case Region::R_TG: return "R_T-G";
        case Region::OnG: return "OnG";
        case Region::R_GI: return "R_G-I";
        case Region::OnI: return "OnI";
        case Region::R_I_II: return "R_I-II";
        case Region::OnII: return "OnII";
        case Region::R_II_III: return "R_II-III";
        case Region::OnIII: return "OnIII";
        case Region::R_III_IV0:
            return regime == Regime::Wide ? "R_III-IV" : "R_III-IV0";
        case Region::OnIV0: return "OnIV0";
        case Region::R_IV0_V:
            return regime == Regime::Intermediate ? "R_IV0-IV" : "R_IV0-V";
        case Region::OnV: return "OnV";
        case Region::R_V_IV: return "R_V-IV";
        case Region::OnIV: return "OnIV";
    }
    return "?";
}

const char* to_string(ForceSign s) {
    switch (s) {
        case ForceSign::Attracting: return "attracting";
        case ForceSign::Repelling: return "repelling";
        case ForceSign::Zero: return "zero";
    }
    return "?";
}

const char* to_string(Menisci m) { return m == Menisci::Like ? "like" : "unlike"; }

const char* to_string(CrossingLoc c) {
    switch (c) {
        case CrossingLoc::BetweenPlates: return "between_plates";
        case CrossingLoc::LeftOfPlates: return "left_of_plates";
        case CrossingLoc::RightOfPi2: return "right_of_plate2";
        case CrossingLoc::NoCrossing: return "no_crossing";
    }
    return "?";
}

Regime regime(double B, double gamma2) {
    if (!(B > 0.0)) throw std::domain_error("regime: B must be positive");
    const auto cr = barriers::critical_separations(gamma2);
    if (B > cr.B0) return Regime::Wide;
    if (B > cr.B00) return Regime::Intermediate;
    return Regime::Narrow;
}

int connectivity(double B, double gamma2) {
    if (!(B > 0.0)) throw std::domain_error("connectivity: B must be positive");
    const auto cr = barriers::critical_separations(gamma2);
    return B < cr.B00 ? 2 : 1;
}

BarrierLadder barrier_ladder(double B, double gamma2) {
    BarrierLadder l;
    l.B = B;
    l.gamma2 = gamma2;
    const auto cr = barriers::critical_separations(gamma2);
    l.B0 = cr.B0;
    l.B00 = cr.B00;
    l.reg = B > cr.B0 ? Regime::Wide : (B > cr.B00 ? Regime::Intermediate : Regime::Narrow);
    l.a_T = -kPi / 2;
    l.a_G = 0.0;
    l.a_I = barriers::barrier_angle_at_pi1(barriers::BarrierKind::I, B, gamma2);
    l.a_II = barriers::psi1_zero(B, gamma2);
    l.a_III = kPi / 2 - gamma2;
    if (l.reg != Regime::Wide)
        l.a_IV0 = barriers::psi10(B, gamma2).value;
    if (l.reg == Regime::Narrow)
        l.a_V = barriers::barrier_angle_at_pi1(barriers::BarrierKind::V, B, gamma2);
    l.a_IV = kPi / 2;
    return l;
}

Region region_of(double psi1, const BarrierLadder& l) {
    if (psi1 < l.a_T - kOnBarrierTol || psi1 > l.a_IV + kOnBarrierTol)
        throw std::domain_error("region_of: no joining solution for data outside [T, IV]");
    if (near(psi1, l.a_T)) return Region::OnT;
    if (near(psi1, l.a_G)) return Region::OnG;
    if (near(psi1, l.a_I)) return Region::OnI;
    if (near(psi1, l.a_II)) return Region::OnII;
    if (near(psi1, l.a_III)) return Region::OnIII;
    if (l.a_IV0 && near(psi1, *l.a_IV0)) return Region::OnIV0;
    if (l.a_V && near(psi1, *l.a_V)) return Region::OnV;
    if (near(psi1, l.a_IV)) return Region::OnIV;
    if (psi1 < l.a_G) return Region::R_TG;
    if (psi1 < l.a_I) return Region::R_GI;
    if (psi1 < l.a_II) return Region::R_I_II;
    if (psi1 < l.a_III) return Region::R_II_III;
    if (l.a_IV0 && psi1 > *l.a_IV0) {
        if (l.a_V) {
            if (psi1 < *l.a_V) return Region::R_IV0_V;
            return Region::R_V_IV;
        }
        return Region::R_IV0_V;  // named R_IV0-IV in the intermediate regime
    }
    return Region::R_III_IV0;  // named R_III-IV in the wide regime
}

ForceSign force_sign_of_region(Region r, const BarrierLadder& l) {
    switch (r) {
        case Region::OnT:
        case Region::R_TG:
        case Region::OnG:
        case Region::R_GI:
        case Region::R_V_IV:
            return ForceSign::Attracting;
        case Region::OnI:
        case Region::OnV:
            return ForceSign::Zero;
        case Region::OnIV:
            if (l.reg == Regime::Narrow) {
                if (l.B == l.B00) return ForceSign::Zero;  // IV coincides with V
                return ForceSign::Attracting;
            }
            return ForceSign::Repelling;
        default:
            return ForceSign::Repelling;
    }
}

RegionReport classify_solution(double gamma1, double gamma2, double B) {
    if (!(B > 0.0)) throw std::domain_error("classify_solution: B must be positive");
    if (gamma2 == kPi / 2)
        throw std::domain_error("classify_solution: gamma2 = pi/2 is the degenerate flat case");
    bool reflected = false;
    if (gamma2 > kPi / 2) {  // reduce by reflection in the axis
        gamma1 = kPi - gamma1;
        gamma2 = kPi - gamma2;
        reflected = true;
    }
    const PlateConfig cfg(gamma1, gamma2, B);
    const BarrierLadder ladder = barrier_ladder(B, gamma2);
    const Region reg = region_of(cfg.psi1(), ladder);

    const profile::JoinData jd = profile::solve_join_data(cfg);
    const double F = profile::force_from_join(jd);

    RegionReport rep;
    rep.region = reg;
    rep.regime = ladder.reg;
    rep.name = region_name(reg, ladder.reg);
    rep.force = F;
    rep.force_sign = std::fabs(F) < kZeroForceTol
                         ? ForceSign::Zero
                         : (F > 0.0 ? ForceSign::Attracting : ForceSign::Repelling);
    rep.menisci = (kPi / 2 - gamma1) * (kPi / 2 - gamma2) > 0.0 ? Menisci::Like : Menisci::Unlike;
    switch (jd.topology) {
        case profile::JoinTopology::Crossing:
            rep.crossing = CrossingLoc::BetweenPlates;
            break;
        case profile::JoinTopology::PositiveSingle:
            if (jd.on_barrier) rep.crossing = CrossingLoc::BetweenPlates;  // at the plate-1 foot
            else rep.crossing = jd.C < 1.0 ? CrossingLoc::LeftOfPlates : CrossingLoc::NoCrossing;
            break;
        case profile::JoinTopology::NegativeSingle:
            if (jd.on_barrier) rep.crossing = CrossingLoc::BetweenPlates;  // at the plate-2 foot
            else rep.crossing = jd.C < 1.0 ? CrossingLoc::RightOfPi2 : CrossingLoc::NoCrossing;
            break;
    }
    rep.attracting_set_components = connectivity(B, gamma2);
    rep.reflected = reflected;
    return rep;
}

RegionMap region_map(double gamma2, int n_gamma1, int m_B, double B_lo, double B_hi) {
    if (n_gamma1 < 2 || m_B < 2) throw std::domain_error("region_map: grids need >= 2 points");
    if (!(B_hi > B_lo && B_lo > 0.0)) throw std::domain_error("region_map: need B_hi > B_lo > 0");
    RegionMap map;
    map.gamma2 = gamma2;
    const auto cr = barriers::critical_separations(gamma2);
    map.B0 = cr.B0;
    map.B00 = cr.B00;
    map.gamma1.resize(n_gamma1);
    for (int j = 0; j < n_gamma1; ++j)
        map.gamma1[j] = kPi * static_cast<double>(j) / (n_gamma1 - 1);
    map.B.resize(m_B);
    const double lr = std::log(B_lo), hr = std::log(B_hi);
    for (int i = 0; i < m_B; ++i)
        map.B[i] = std::exp(lr + (hr - lr) * static_cast<double>(i) / (m_B - 1));

    map.cells.resize(m_B);
    map.regimes.resize(m_B);
    for (int i = 0; i < m_B; ++i) {
        const BarrierLadder ladder = barrier_ladder(map.B[i], gamma2);
        map.regimes[i] = ladder.reg;
        const int comps = map.B[i] < cr.B00 ? 2 : 1;
        auto& row = map.cells[i];
        row.resize(n_gamma1);
        for (int j = 0; j < n_gamma1; ++j) {
            const double psi1 = map.gamma1[j] - kPi / 2;
            const Region r = region_of(psi1, ladder);
            row[j] = MapCell{
                r, force_sign_of_region(r, ladder),
                (kPi / 2 - map.gamma1[j]) * (kPi / 2 - gamma2) > 0.0 ? Menisci::Like
                                                                     : Menisci::Unlike,
                comps};
        }
    }
    return map;
}

}  // namespace capillary::classify
