#pragma once

#include <optional>
#include <string>
#include <vector>

#include "capillary/types.hpp"

// Assignment of a configuration (gamma1, gamma2, B) to the separation regime
// and to one of the barrier-delimited regions, plus the full region map over
// a (gamma1, B) grid. Everything is keyed off the inclination psi1 on plate 1
// compared against the barrier inclinations there.

namespace capillary::classify {

enum class Region {
    OnT, R_TG, OnG, R_GI, OnI, R_I_II, OnII, R_II_III, OnIII,
    R_III_IV0, OnIV0, R_IV0_V, OnV, R_V_IV, OnIV
};

enum class ForceSign { Attracting, Repelling, Zero };
enum class Menisci { Like, Unlike };
enum class CrossingLoc { BetweenPlates, LeftOfPlates, RightOfPi2, NoCrossing };

// Display name of a region in the given regime: below III the wide
// regime has the single region R_III-IV, and the intermediate regime calls
// the span below IV0 R_IV0-IV (V does not join the plates there).
std::string region_name(Region r, Regime regime);

const char* to_string(ForceSign s);
const char* to_string(Menisci m);
const char* to_string(CrossingLoc c);

struct RegionReport {
    Region region;
    std::string name;  // regime-resolved display name
    Regime regime;
    ForceSign force_sign;
    double force;  // normalized
    Menisci menisci;
    CrossingLoc crossing;
    int attracting_set_components;  // 1, or 2 when B < B00
    bool reflected;                 // input had gamma2 > pi/2, classified by reflection
};

// Wide (B > B0), Intermediate (B0 >= B > B00) or Narrow (B00 >= B).
Regime regime(double B, double gamma2);

// 2 below B00 (a second, negative attracting component), else 1.
int connectivity(double B, double gamma2);

// Barrier inclinations at plate 1 for fixed (B, gamma2), the regime and the
// criticals: the comparison ladder reused across a map row.
struct BarrierLadder {
    double B = 0.0, gamma2 = 0.0;
    double B0 = 0.0, B00 = 0.0;
    Regime reg = Regime::Wide;
    double a_T, a_G, a_I, a_II, a_III;
    std::optional<double> a_IV0;  // only when IV0 reaches plate 1
    std::optional<double> a_V;    // only when V reaches plate 1
    double a_IV;
};

BarrierLadder barrier_ladder(double B, double gamma2);

// Region of psi1 on a precomputed ladder; exact-on-barrier data (within
// 1e-10 of a barrier inclination) gets the On* label.
Region region_of(double psi1, const BarrierLadder& ladder);

// Force sign implied by the region label alone (no solve).
ForceSign force_sign_of_region(Region r, const BarrierLadder& ladder);

// Full classification of one configuration: solves the joining problem and
// reports the numeric force. gamma2 > pi/2 is reduced by reflection in the
// axis, under which the governing system is invariant.
RegionReport classify_solution(double gamma1, double gamma2, double B);

struct MapCell {
    Region region;
    ForceSign force_sign;
    Menisci menisci;
    int components;
};

struct RegionMap {
    double gamma2 = 0.0;
    double B0 = 0.0, B00 = 0.0;
    std::vector<double> gamma1;  // ascending, endpoints included
    std::vector<double> B;       // ascending log grid, endpoints included
    std::vector<std::vector<MapCell>> cells;  // cells[i_B][j_gamma1]
    std::vector<Regime> regimes;              // per B row
};

RegionMap region_map(double gamma2, int n_gamma1, int m_B, double B_lo, double B_hi);

}  // namespace capillary::classify
