#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "capillary/barriers.hpp"
#include "capillary/classify.hpp"
#include "capillary/estimates.hpp"
#include "capillary/forces.hpp"
#include "capillary/io.hpp"
#include "capillary/numerics.hpp"
#include "capillary/profile.hpp"

namespace capillary::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
constexpr double kPi = std::numbers::pi;

struct Options {
    double gamma1 = std::nan("");
    double gamma2 = std::nan("");
    double B = std::nan("");
    double B_min = std::nan("");
    double B_max = std::nan("");
    double psi0 = std::nan("");
    double psi1 = std::nan("");
    double tol = 1e-8;
    int steps = 0;
    int samples = 512;
    std::string out_path;
    std::string kind;
    std::string figure_id;
    std::string neighbor;
    bool as_json = false;
    bool degrees = false;
};

void add_angle_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--gamma1", o.gamma1, "contact angle on plate 1 (radians)");
    cmd->add_option("--gamma2", o.gamma2, "contact angle on plate 2 (radians)");
    cmd->add_flag("--degrees", o.degrees, "interpret angle inputs as degrees");
}

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--out", o.out_path, "output file (default: stdout)");
    cmd->add_flag("--json", o.as_json, "emit JSON instead of CSV");
    cmd->add_option("--tol", o.tol,
                    "max first-integral residual accepted on emitted curves")
        ->capture_default_str();
}

void convert_degrees(Options& o) {
    if (!o.degrees) return;
    const double f = kPi / 180.0;
    for (double* a : {&o.gamma1, &o.gamma2, &o.psi0, &o.psi1})
        if (!std::isnan(*a)) *a *= f;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::domain_error(what);
}

// stream to --out if given, else to the session stream
class Sink {
  public:
    Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

  private:
    std::ofstream file_;
    std::ostream& fallback_;
};

void emit_json(const json& j, Options& o, std::ostream& out) {
    Sink sink(o.out_path, out);
    sink.stream() << j.dump(2) << '\n';
}

json curve_to_json(const ProfileCurve& c) {
    json samples = json::array();
    for (const auto& s : c.samples) samples.push_back({s.xi, s.u, s.psi});
    json j{{"B", c.B}, {"C", c.C}, {"samples", samples}};
    if (c.crossing) j["crossing"] = {{"xi", c.crossing->xi}, {"psi", c.crossing->psi}};
    j["truncated"] = c.truncated;
    j["on_barrier"] = c.on_barrier;
    return j;
}

int cmd_critical(Options& o, std::ostream& out) {
    require(!std::isnan(o.gamma2), "critical: --gamma2 is required");
    const auto cr = barriers::critical_separations(o.gamma2);
    json j{{"gamma2", o.gamma2},
           {"B0", cr.B0},
           {"B00", cr.B00},
           {"regimes",
            {{"wide", "B > B0"}, {"intermediate", "B00 < B <= B0"}, {"narrow", "B <= B00"}}}};
    emit_json(j, o, out);
    return 0;
}

int cmd_force(Options& o, std::ostream& out) {
    double F;
    if (!std::isnan(o.psi0)) {
        F = -2.0 * (1.0 - std::cos(o.psi0));
    } else {
        require(!std::isnan(o.gamma1) && !std::isnan(o.gamma2) && !std::isnan(o.B),
                "force: need either --psi0 or all of --gamma1 --gamma2 --B");
        F = forces::force_at(PlateConfig(o.gamma1, o.gamma2, o.B));
    }
    emit_json(json{{"F", F}}, o, out);
    return 0;
}

void check_residual(const ProfileCurve& c, double tol) {
    const double r = c.max_first_integral_residual();
    if (r > tol)
        throw std::runtime_error("first-integral residual " + io::fmt17(r) +
                                 " exceeds --tol");
}

int cmd_profile(Options& o, std::ostream& out) {
    require(!std::isnan(o.gamma1) && !std::isnan(o.gamma2) && !std::isnan(o.B),
            "profile: --gamma1, --gamma2 and --B are required");
    ProfileCurve c = profile::solve_join(PlateConfig(o.gamma1, o.gamma2, o.B), o.samples);
    check_residual(c, o.tol);
    if (o.as_json) {
        emit_json(curve_to_json(c), o, out);
    } else {
        Sink sink(o.out_path, out);
        io::write_curve_csv(sink.stream(), c);
    }
    return 0;
}

int cmd_barrier(Options& o, std::ostream& out) {
    require(!o.kind.empty() && !std::isnan(o.gamma2) && !std::isnan(o.B),
            "barrier: --kind, --gamma2 and --B are required");
    const auto kind = barriers::barrier_kind_from_string(o.kind);
    ProfileCurve c = barriers::barrier(kind, o.B, o.gamma2, o.samples);
    check_residual(c, o.tol);
    if (o.as_json) {
        json j = curve_to_json(c);
        j["kind"] = o.kind;
        j["gamma2"] = o.gamma2;
        emit_json(j, o, out);
    } else {
        Sink sink(o.out_path, out);
        io::write_barrier_csv(sink.stream(), c, o.kind, o.gamma2);
    }
    return 0;
}

int cmd_sweep(Options& o, std::ostream& out) {
    require(!std::isnan(o.gamma1) && !std::isnan(o.gamma2),
            "sweep: --gamma1 and --gamma2 are required");
    require(!std::isnan(o.B_min) && !std::isnan(o.B_max), "sweep: --B-min and --B-max are required");
    const int n = o.steps > 0 ? o.steps : 200;
    PlateConfig cfg(o.gamma1, o.gamma2, o.B_max);
    forces::ForceSweep sweep = forces::sweep_force(cfg, o.B_max, o.B_min, n);
    if (o.as_json) {
        json pts = json::array();
        for (const auto& p : sweep.points) pts.push_back({p.B, p.F});
        json j{{"points", pts}, {"truncated", sweep.truncated}};
        switch (sweep.classification) {
            case forces::SweepClass::UpperClass: j["classification"] = "upper"; break;
            case forces::SweepClass::LowerClass: j["classification"] = "lower"; break;
            case forces::SweepClass::Symmetric: j["classification"] = "symmetric"; break;
            case forces::SweepClass::Generic: j["classification"] = "generic"; break;
        }
        if (sweep.extremum)
            j["extremum"] = {{"B_star", sweep.extremum->B_star},
                             {"F_star", sweep.extremum->F_star},
                             {"xi_star", sweep.extremum->xi_star}};
        emit_json(j, o, out);
    } else {
        Sink sink(o.out_path, out);
        io::write_sweep_csv(sink.stream(), sweep);
    }
    return 0;
}

int cmd_classify(Options& o, std::ostream& out) {
    require(!std::isnan(o.gamma1) && !std::isnan(o.gamma2) && !std::isnan(o.B),
            "classify: --gamma1, --gamma2 and --B are required");
    const auto rep = classify::classify_solution(o.gamma1, o.gamma2, o.B);
    json j{{"gamma1", o.gamma1},
           {"gamma2", o.gamma2},
           {"B", o.B},
           {"region", rep.name},
           {"regime", to_string(rep.regime)},
           {"force", rep.force},
           {"force_sign", classify::to_string(rep.force_sign)},
           {"menisci", classify::to_string(rep.menisci)},
           {"crossing", classify::to_string(rep.crossing)},
           {"attracting_set_components", rep.attracting_set_components},
           {"reflected", rep.reflected}};
    emit_json(j, o, out);
    return 0;
}

int cmd_map(Options& o, std::ostream& out) {
    require(!std::isnan(o.gamma2), "map: --gamma2 is required");
    const auto cr = barriers::critical_separations(o.gamma2);
    const double b_lo = std::isnan(o.B_min) ? 0.2 * cr.B00 : o.B_min;
    const double b_hi = std::isnan(o.B_max) ? 3.0 * cr.B0 : o.B_max;
    const int m = o.steps > 0 ? o.steps : 121;
    const int n = o.samples;
    const auto map = classify::region_map(o.gamma2, n, m, b_lo, b_hi);
    Sink sink(o.out_path, out);
    io::write_map_csv(sink.stream(), map);
    return 0;
}

int cmd_estimate(Options& o, std::ostream& out) {
    require(!std::isnan(o.gamma2), "estimate: --gamma2 is required");
    json j{{"gamma2", o.gamma2}, {"height_jump", estimates::height_jump(o.gamma2)}};
    if (!std::isnan(o.gamma1)) {
        j["gamma1"] = o.gamma1;
        const double thr = estimates::attraction_threshold(o.gamma1, o.gamma2);
        j["attraction_threshold"] = std::isinf(thr) ? json("inf") : json(thr);
        const bool supplementary = std::fabs(o.gamma1 + o.gamma2 - kPi) < 1e-14;
        if (!std::isnan(o.B) && !supplementary) {
            const auto hb = estimates::height_bounds_generic(o.B, o.gamma1, o.gamma2);
            j["lambda"] = hb.lambda;
            j["U_m_sq_lower"] = hb.U_m_sq_lower;
            j["oscillation_upper"] =
                std::isinf(hb.oscillation_upper) ? json("inf") : json(hb.oscillation_upper);
            j["oscillation_valid"] = hb.oscillation_valid;
            j["small_gap_regime"] = hb.small_gap_regime;
            j["small_gap_lower"] = hb.small_gap_lower;
            j["side"] = hb.side == estimates::HeightBounds::Side::Above ? "above" : "below";
        }
    }
    if (!std::isnan(o.B)) {
        j["B"] = o.B;
        j["symmetric_height_bound"] = estimates::symmetric_height_bound(o.B, o.gamma2);
        j["symmetric_force_limit"] = forces::symmetric_force_limit(o.gamma2);
    }
    emit_json(j, o, out);
    return 0;
}

// ---- figure presets ----------------------------------------------------

void write_file(const fs::path& p, const std::function<void(std::ostream&)>& fn) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot open output file: " + p.string());
    fn(f);
}

json sweep_file(const fs::path& dir, const std::string& name, double gamma1, double gamma2,
                double b_hi, double b_lo, int n) {
    forces::ForceSweep sw =
        forces::sweep_force(PlateConfig(gamma1, gamma2, b_hi), b_hi, b_lo, n);
    write_file(dir / name, [&](std::ostream& os) { io::write_sweep_csv(os, sw); });
    json j{{"file", name}, {"gamma1", gamma1}, {"gamma2", gamma2}};
    if (sw.extremum) {
        j["B_star"] = sw.extremum->B_star;
        j["F_star"] = sw.extremum->F_star;
    }
    return j;
}

int cmd_figure(Options& o, std::ostream& out) {
    require(!o.figure_id.empty(), "figure: --id is required");
    const std::string id = o.figure_id;
    const fs::path dir = o.out_path.empty() ? fs::path("figure_" + id) : fs::path(o.out_path);
    fs::create_directories(dir);
    json manifest{{"figure", id}, {"files", json::array()}};
    auto add = [&](json fj) { manifest["files"].push_back(std::move(fj)); };

    if (id == "4") {
        const double gamma2 = std::isnan(o.gamma2) ? kPi / 6 : o.gamma2;
        manifest["gamma2"] = gamma2;
        const int n = o.steps > 0 ? o.steps : 100;
        write_file(dir / "ranges.csv", [&](std::ostream& os) {
            os << "B,psi1_zero,psi2,psi10,lower_closed\n";
            for (int i = 0; i < n; ++i) {
                const double B = 0.005 * std::pow(1.0 / 0.005, double(i) / (n - 1));
                const auto r = forces::admissible_ranges(B, gamma2);
                os << io::fmt17(B) << ',' << io::fmt17(r.upper_lo) << ','
                   << io::fmt17(r.upper_hi) << ',' << io::fmt17(r.lower_hi) << ','
                   << (r.lower_hi_closed ? 1 : 0) << '\n';
            }
        });
        add({{"file", "ranges.csv"}});
    } else if (id == "5a" || id == "5b") {
        const double gamma2 = std::isnan(o.gamma2) ? kPi / 6 : o.gamma2;  // psi2 = pi/3
        manifest["gamma2"] = gamma2;
        const int n = o.steps > 0 ? o.steps : 200;
        const double b_lo = 1e-4;
        if (id == "5a") {
            const double b_hi = 0.3;
            const auto r = forces::admissible_ranges(b_hi, gamma2);
            for (int k = 1; k <= 4; ++k) {
                const double psi1 = r.upper_lo + (r.upper_hi - r.upper_lo) * k / 5.0;
                add(sweep_file(dir, "upper_" + std::to_string(k) + ".csv", psi1 + kPi / 2,
                               gamma2, b_hi, b_lo, n));
            }
            add(sweep_file(dir, "symmetric.csv", kPi - gamma2, gamma2, b_hi, b_lo, n));
        } else {
            const double b_hi = 0.05;
            const auto r = forces::admissible_ranges(b_hi, gamma2);
            for (int k = 1; k <= 5; ++k) {
                const double psi1 = r.lower_lo + (r.lower_hi - r.lower_lo) * k / 6.0;
                add(sweep_file(dir, "lower_" + std::to_string(k) + ".csv", psi1 + kPi / 2,
                               gamma2, b_hi, b_lo, n));
            }
            add(sweep_file(dir, "symmetric.csv", kPi - gamma2, gamma2, b_hi, b_lo, n));
        }
    } else if (id == "6") {
        const int n = o.steps > 0 ? o.steps : 60;
        write_file(dir / "criticals.csv", [&](std::ostream& os) {
            os << "gamma2,B0,B00\n";
            for (int i = 0; i < n; ++i) {
                const double g2 = 0.02 + (kPi / 2 - 0.04) * double(i) / (n - 1);
                const auto cr = barriers::critical_separations(g2);
                os << io::fmt17(g2) << ',' << io::fmt17(cr.B0) << ',' << io::fmt17(cr.B00)
                   << '\n';
            }
        });
        add({{"file", "criticals.csv"}});
    } else if (id == "7" || id == "8") {
        const int n = o.steps > 0 ? o.steps : 80;
        int k = 0;
        for (double psi2 : {kPi / 6, kPi / 4, kPi / 3, 5 * kPi / 12}) {
            const double g2 = kPi / 2 - psi2;
            const std::string name =
                (id == "7" ? "psi1_zero_" : "psi10_") + std::to_string(++k) + ".csv";
            write_file(dir / name, [&](std::ostream& os) {
                os << (id == "7" ? "B,psi1_zero\n" : "B,psi10\n");
                const double b_hi = id == "7" ? 10.0 : barriers::critical_separations(g2).B0;
                for (int i = 0; i < n; ++i) {
                    const double B = 1e-3 * std::pow(b_hi / 1e-3, double(i) / (n - 1));
                    const double v = id == "7" ? barriers::psi1_zero(B, g2)
                                               : barriers::psi10(B, g2).value;
                    os << io::fmt17(B) << ',' << io::fmt17(v) << '\n';
                }
            });
            add({{"file", name}, {"psi2", psi2}, {"gamma2", g2}});
        }
    } else if (id == "9") {
        const double gamma2 = std::isnan(o.gamma2) ? kPi / 6 : o.gamma2;  // psi2 = pi/3
        manifest["gamma2"] = gamma2;
        const double b_start = std::isnan(o.B) ? 0.05 : o.B;
        manifest["B_start"] = b_start;
        const int n = o.steps > 0 ? o.steps : 60;
        const auto r = forces::admissible_ranges(b_start, gamma2);
        write_file(dir / "upper.csv", [&](std::ostream& os) {
            os << "psi1,delta_xi\n";
            for (int i = 1; i < n; ++i) {
                const double psi1 = r.upper_lo + (r.upper_hi - r.upper_lo) * i / n;
                os << io::fmt17(psi1) << ','
                   << io::fmt17(forces::extremal_position(
                          {forces::NeighborClass::Kind::Upper, psi1}, gamma2, b_start))
                   << '\n';
            }
        });
        write_file(dir / "lower.csv", [&](std::ostream& os) {
            os << "psi1,delta_xi\n";
            for (int i = 1; i < n; ++i) {
                const double psi1 = r.lower_lo + (r.lower_hi - r.lower_lo) * i / n;
                os << io::fmt17(psi1) << ','
                   << io::fmt17(forces::extremal_position(
                          {forces::NeighborClass::Kind::Lower, psi1}, gamma2, b_start))
                   << '\n';
            }
        });
        add({{"file", "upper.csv"}});
        add({{"file", "lower.csv"}});
    } else if (id == "A-3" || id == "A3") {
        const double gamma2 = std::isnan(o.gamma2) ? kPi / 4 : o.gamma2;
        manifest["gamma2"] = gamma2;
        const auto cr = barriers::critical_separations(gamma2);
        manifest["B0"] = cr.B0;
        manifest["B00"] = cr.B00;
        const int m = o.steps > 0 ? o.steps : 121;
        const auto map = classify::region_map(gamma2, o.samples, m, 0.2 * cr.B00, 3.0 * cr.B0);
        write_file(dir / "map.csv", [&](std::ostream& os) { io::write_map_csv(os, map); });
        add({{"file", "map.csv"}});
    } else {
        throw std::domain_error("figure: unknown --id (use 4, 5a, 5b, 6, 7, 8, 9, A-3)");
    }

    write_file(dir / "manifest.json", [&](std::ostream& os) { os << manifest.dump(2) << '\n'; });
    out << (dir / "manifest.json").string() << '\n';
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"planar capillary interfaces between partially immersed parallel plates"};
    app.require_subcommand(1);
    Options o;

    auto* critical = app.add_subcommand("critical", "critical separations B0 and B00");
    add_angle_flags(critical, o);
    add_common(critical, o);

    auto* force = app.add_subcommand("force", "normalized horizontal force");
    add_angle_flags(force, o);
    add_common(force, o);
    force->add_option("--psi0", o.psi0, "crossing inclination (radians)");
    force->add_option("--B", o.B, "separation parameter");

    auto* prof = app.add_subcommand("profile", "joining solution curve");
    add_angle_flags(prof, o);
    add_common(prof, o);
    prof->add_option("--B", o.B, "separation parameter");
    prof->add_option("--samples", o.samples, "samples per branch")->capture_default_str();

    auto* barrier = app.add_subcommand("barrier", "one of the eight barrier curves");
    add_angle_flags(barrier, o);
    add_common(barrier, o);
    barrier->add_option("--kind", o.kind, "T, G, I, II, III, IV, IV0 or V");
    barrier->add_option("--B", o.B, "separation parameter");
    barrier->add_option("--samples", o.samples, "samples per branch")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "force versus separation, fixed angles");
    add_angle_flags(sweep, o);
    add_common(sweep, o);
    sweep->add_option("--B-min", o.B_min, "smallest separation parameter");
    sweep->add_option("--B-max", o.B_max, "largest (starting) separation parameter");
    sweep->add_option("--steps", o.steps, "grid points");

    auto* cls = app.add_subcommand("classify", "region/regime report for one configuration");
    add_angle_flags(cls, o);
    add_common(cls, o);
    cls->add_option("--B", o.B, "separation parameter");

    auto* map = app.add_subcommand("map", "region map over (gamma1, B)");
    add_angle_flags(map, o);
    add_common(map, o);
    map->add_option("--B-min", o.B_min, "smallest B (default 0.2*B00)");
    map->add_option("--B-max", o.B_max, "largest B (default 3*B0)");
    map->add_option("--steps", o.steps, "B grid points (default 121)");
    map->add_option("--samples", o.samples, "gamma1 grid points")->capture_default_str();

    auto* est = app.add_subcommand("estimate", "meniscus height and force bounds");
    add_angle_flags(est, o);
    add_common(est, o);
    est->add_option("--B", o.B, "separation parameter");

    auto* fig = app.add_subcommand("figure", "reproducible figure datasets");
    add_angle_flags(fig, o);
    add_common(fig, o);
    fig->add_option("--id", o.figure_id, "4, 5a, 5b, 6, 7, 8, 9 or A-3");
    fig->add_option("--B", o.B, "starting separation (figure 9)");
    fig->add_option("--steps", o.steps, "grid points");
    fig->add_option("--samples", o.samples, "gamma1 grid points (figure A-3)")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return 64;
    }

    try {
        convert_degrees(o);
        if (critical->parsed()) return cmd_critical(o, out);
        if (force->parsed()) return cmd_force(o, out);
        if (prof->parsed()) return cmd_profile(o, out);
        if (barrier->parsed()) return cmd_barrier(o, out);
        if (sweep->parsed()) return cmd_sweep(o, out);
        if (cls->parsed()) return cmd_classify(o, out);
        if (map->parsed()) return cmd_map(o, out);
        if (est->parsed()) return cmd_estimate(o, out);
        if (fig->parsed()) return cmd_figure(o, out);
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "domain error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 1;
    }
    err << "no subcommand given\n" << app.help();
    return 64;
}

}  // namespace capillary::cli
