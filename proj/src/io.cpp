#include "capillary/io.hpp"

#include <cstdio>

namespace capillary::io {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_curve_csv(std::ostream& os, const ProfileCurve& curve) {
    os << "xi,U,psi\n";
    for (const auto& s : curve.samples)
        os << fmt17(s.xi) << ',' << fmt17(s.u) << ',' << fmt17(s.psi) << '\n';
}

void write_barrier_csv(std::ostream& os, const ProfileCurve& curve, const std::string& kind,
                       double gamma2) {
    os << "# kind=" << kind << " B=" << fmt17(curve.B) << " gamma2=" << fmt17(gamma2)
       << " C=" << fmt17(curve.C) << '\n';
    write_curve_csv(os, curve);
}

void write_sweep_csv(std::ostream& os, const forces::ForceSweep& sweep) {
    os << "B,F\n";
    for (const auto& p : sweep.points) os << fmt17(p.B) << ',' << fmt17(p.F) << '\n';
    if (sweep.extremum)
        os << "# B_star=" << fmt17(sweep.extremum->B_star)
           << " F_star=" << fmt17(sweep.extremum->F_star) << '\n';
}

void write_map_csv(std::ostream& os, const classify::RegionMap& map) {
    os << "gamma1,B,region,force_sign,menisci,components\n";
    for (std::size_t i = 0; i < map.B.size(); ++i) {
        const Regime reg = map.regimes[i];
        for (std::size_t j = 0; j < map.gamma1.size(); ++j) {
            const auto& c = map.cells[i][j];
            os << fmt17(map.gamma1[j]) << ',' << fmt17(map.B[i]) << ','
               << classify::region_name(c.region, reg) << ','
               << classify::to_string(c.force_sign) << ',' << classify::to_string(c.menisci)
               << ',' << c.components << '\n';
        }
    }
}

}  // namespace capillary::io
