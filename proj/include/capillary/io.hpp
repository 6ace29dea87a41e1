#pragma once

#include <ostream>
#include <string>

#include "capillary/classify.hpp"
#include "capillary/forces.hpp"
#include "capillary/types.hpp"

// Deterministic text output: every floating value is printed with 17
// significant digits so repeated runs are byte-identical and values
// round-trip exactly.

namespace capillary::io {

std::string fmt17(double v);

// header `xi,U,psi`, one row per sample, xi ascending
void write_curve_csv(std::ostream& os, const ProfileCurve& curve);

// same, preceded by `# kind=<K> B=<v> gamma2=<v> C=<v>`
void write_barrier_csv(std::ostream& os, const ProfileCurve& curve, const std::string& kind,
                       double gamma2);

// header `B,F`, trailing comment `# B_star=<v> F_star=<v>` when present
void write_sweep_csv(std::ostream& os, const forces::ForceSweep& sweep);

// columns gamma1,B,region,force_sign,menisci,components
void write_map_csv(std::ostream& os, const classify::RegionMap& map);

}  // namespace capillary::io
