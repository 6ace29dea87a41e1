#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "../tools/cli.hpp"
#include "capillary/classify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using capillary::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

// Minimal validator for the schema subset used in schemas/: type (string or
// list), required, properties, items, enum.
bool type_matches(const json& v, const std::string& t) {
    if (t == "number") return v.is_number();
    if (t == "integer") return v.is_number_integer();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "null") return v.is_null();
    return false;
}

bool validate(const json& v, const json& schema) {
    if (schema.contains("type")) {
        const auto& t = schema["type"];
        bool ok = false;
        if (t.is_string()) ok = type_matches(v, t.get<std::string>());
        else
            for (const auto& ti : t) ok = ok || type_matches(v, ti.get<std::string>());
        if (!ok) return false;
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& e : schema["enum"]) ok = ok || (e == v);
        if (!ok) return false;
    }
    if (schema.contains("required"))
        for (const auto& k : schema["required"])
            if (!v.contains(k.get<std::string>())) return false;
    if (schema.contains("properties") && v.is_object())
        for (const auto& [key, sub] : schema["properties"].items())
            if (v.contains(key) && !validate(v.at(key), sub)) return false;
    if (schema.contains("items") && v.is_array())
        for (const auto& el : v)
            if (!validate(el, schema["items"])) return false;
    return true;
}

json load_schema(const std::string& name) {
    std::ifstream f(fs::path(SCHEMA_DIR) / name);
    REQUIRE(f.good());
    return json::parse(f);
}

}  // namespace

TEST_CASE("critical: JSON output validates and matches the library values") {
    auto r = call({"critical", "--gamma2", "0.7853981633974483"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(validate(j, load_schema("critical.schema.json")));
    CHECK(j["B0"].get<double>() == doctest::Approx(0.123653757179).epsilon(1e-6));
    CHECK(j["B00"].get<double>() == doctest::Approx(0.0224957742073).epsilon(1e-6));
}

TEST_CASE("force --psi0 reproduces the crossing formula") {
    auto r = call({"force", "--psi0", "1.0471975511965976"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(validate(j, load_schema("force.schema.json")));
    CHECK(j["F"].get<double>() == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("identical flags give byte-identical output") {
    const std::vector<std::string> args{"sweep",  "--gamma1", "2.356194490192345",
                                        "--gamma2", "0.5235987755982988", "--B-min",
                                        "0.001",  "--B-max",  "0.2",
                                        "--steps", "40"};
    auto a = call(args);
    auto b = call(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("profile CSV format") {
    auto r = call({"profile", "--gamma1", "2.2", "--gamma2", "0.6", "--B", "0.1",
                   "--samples", "64"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == "xi,U,psi");
    std::size_t rows = 0;
    double first_xi = 0, last_xi = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const double xi = std::stod(line.substr(0, line.find(',')));
        if (rows == 0) first_xi = xi;
        last_xi = xi;
        ++rows;
    }
    CHECK(rows >= 64);
    CHECK(first_xi == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(last_xi == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("profile --json validates") {
    auto r = call({"profile", "--gamma1", "2.2", "--gamma2", "0.6", "--B", "0.1",
                   "--samples", "32", "--json"});
    REQUIRE(r.code == 0);
    CHECK(validate(json::parse(r.out), load_schema("profile.schema.json")));
}

TEST_CASE("barrier CSV carries the comment header") {
    auto r = call({"barrier", "--kind", "III", "--gamma2", "0.7853981633974483", "--B", "0.1",
                   "--samples", "32"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("# kind=III B=0.1", 0) == 0);
    CHECK(r.out.find("gamma2=0.78539816339744828") != std::string::npos);
    CHECK(r.out.find("xi,U,psi") != std::string::npos);
    auto rj = call({"barrier", "--kind", "IV0", "--gamma2", "0.7853981633974483", "--B",
                    "0.3", "--samples", "32", "--json"});
    REQUIRE(rj.code == 0);
    const json j = json::parse(rj.out);
    CHECK(validate(j, load_schema("profile.schema.json")));
    CHECK(j["truncated"] == true);  // wide regime: IV0 does not reach plate 1
}

TEST_CASE("sweep CSV ends with the extremum comment") {
    auto r = call({"sweep", "--gamma1", "2.356194490192345", "--gamma2",
                   "0.5235987755982988", "--B-min", "0.001", "--B-max", "0.3", "--steps",
                   "60"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("B,F\n", 0) == 0);
    CHECK(r.out.find("# B_star=") != std::string::npos);
    auto rj = call({"sweep", "--gamma1", "2.356194490192345", "--gamma2",
                    "0.5235987755982988", "--B-min", "0.001", "--B-max", "0.3", "--steps",
                    "60", "--json"});
    REQUIRE(rj.code == 0);
    CHECK(validate(json::parse(rj.out), load_schema("sweep.schema.json")));
}

TEST_CASE("classify JSON validates") {
    auto r = call({"classify", "--gamma1", "2.0", "--gamma2", "0.7853981633974483", "--B",
                   "0.05"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(validate(j, load_schema("classify.schema.json")));
    const auto rep = capillary::classify::classify_solution(2.0, 0.7853981633974483, 0.05);
    CHECK(j["region"] == rep.name);
    CHECK(j["force"].get<double>() == doctest::Approx(rep.force).epsilon(1e-12));
}

TEST_CASE("estimate JSON validates") {
    auto r = call({"estimate", "--gamma1", "1.0471975511965976", "--gamma2",
                   "0.5235987755982988", "--B", "0.001"});
    REQUIRE(r.code == 0);
    CHECK(validate(json::parse(r.out), load_schema("estimate.schema.json")));
}

TEST_CASE("map CSV header and size") {
    auto r = call({"map", "--gamma2", "0.7853981633974483", "--samples", "21", "--steps",
                   "11"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == "gamma1,B,region,force_sign,menisci,components");
    std::size_t rows = 0;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 21 * 11);
}

TEST_CASE("figure 5b sweeps all bottom out at the universal lower bound") {
    const fs::path dir = fs::path(TEST_TMP_DIR) / "fig5b_out";
    fs::remove_all(dir);
    auto r = call({"figure", "--id", "5b", "--gamma2", "0.5235987755982988", "--steps", "120",
                   "--out", dir.string()});
    REQUIRE(r.code == 0);
    int found = 0;
    for (int k = 1; k <= 5; ++k) {
        std::ifstream f(dir / ("lower_" + std::to_string(k) + ".csv"));
        REQUIRE(f.good());
        std::string line, last;
        while (std::getline(f, line))
            if (!line.empty()) last = line;
        const auto pos = last.find("F_star=");
        REQUIRE(pos != std::string::npos);
        const double f_star = std::stod(last.substr(pos + 7));
        CHECK(f_star == doctest::Approx(-1.0).epsilon(1e-6));
        ++found;
    }
    CHECK(found == 5);
}

TEST_CASE("figure 6 writes a manifest plus data files") {
    const fs::path dir = fs::path(TEST_TMP_DIR) / "fig6_out";
    fs::remove_all(dir);
    auto r = call({"figure", "--id", "6", "--steps", "8", "--out", dir.string()});
    REQUIRE(r.code == 0);
    std::ifstream mf(dir / "manifest.json");
    REQUIRE(mf.good());
    const json manifest = json::parse(mf);
    CHECK(validate(manifest, load_schema("manifest.schema.json")));
    CHECK(fs::exists(dir / "criticals.csv"));
    std::ifstream cf(dir / "criticals.csv");
    std::string hdr;
    std::getline(cf, hdr);
    CHECK(hdr == "gamma2,B0,B00");
}

TEST_CASE("--degrees converts angle inputs") {
    auto rad = call({"force", "--gamma1", "2.0943951023931953", "--gamma2",
                     "0.5235987755982988", "--B", "0.05"});
    auto deg = call({"force", "--gamma1", "120", "--gamma2", "30", "--B", "0.05",
                     "--degrees"});
    REQUIRE(rad.code == 0);
    REQUIRE(deg.code == 0);
    const double a = json::parse(rad.out)["F"].get<double>();
    const double b = json::parse(deg.out)["F"].get<double>();
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
}

TEST_CASE("exit codes") {
    CHECK(call({"frobnicate"}).code == 64);
    CHECK(call({"critical", "--bogus-flag", "1"}).code == 64);
    // missing required data -> domain error
    auto r = call({"classify", "--gamma1", "2.0"});
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
    // gamma2 out of range -> domain error naming the precondition
    CHECK(call({"critical", "--gamma2", "3.0"}).code == 2);
}
