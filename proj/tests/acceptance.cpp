// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "asa/engine.hpp"
#include "asa/json_io.hpp"
#include "cli.hpp"

using namespace asa;

namespace {

constexpr std::uint64_t kBound = 100000;

int g_failures = 0;

void report(int criterion, const std::string& what, bool pass, const std::string& detail = "") {
    std::printf("%s  criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string cli_json(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    if (code != 0) return "";
    return out.str();
}

// ---- criterion 1: bar resolution == cyclic oracle over the battery ----
void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (int n = 2; n <= 8 && ok; ++n) {
        FiniteGroup g = FiniteGroup::cyclic(n);
        std::vector<std::pair<std::string, GaloisModule>> battery;
        for (int r = 1; r <= 3; ++r)
            battery.push_back({"trivialZ:" + std::to_string(r),
                               GaloisModule::trivial_lattice(g, r)});
        if (n % 2 == 0) battery.push_back({"sign", GaloisModule::sign_module(g)});
        battery.push_back({"regular", GaloisModule::regular_module(g)});
        for (int m = 2; m <= 6; ++m) {
            battery.push_back({"zmod:" + std::to_string(m), GaloisModule::cyclic_module(g, m)});
            if (n % 2 == 0)
                battery.push_back({"signmod:" + std::to_string(m),
                                   GaloisModule::reduction_mod(GaloisModule::sign_module(g), m)});
        }
        for (const auto& [name, m] : battery) {
            for (int i = 1; i <= 2; ++i) {
                FgAbGroup lhs = h(i, g, m).group;
                FgAbGroup rhs = cyclic_oracle(i, g, m);
                if (!(lhs == rhs)) {
                    ok = false;
                    detail = "C" + std::to_string(n) + " " + name + " degree " +
                             std::to_string(i) + ": " + lhs.to_string(false) + " vs " +
                             rhs.to_string(false);
                }
            }
        }
    }
    double secs = seconds_since(t0);
    if (secs >= 60.0 && ok) {
        ok = false;
        detail = "runtime " + std::to_string(secs) + "s exceeds 60s";
    }
    std::ostringstream d;
    d << (detail.empty() ? "" : detail + "; ") << "runtime " << secs << "s";
    report(1, "cyclic-oracle equivalence over C2..C8 battery", ok, d.str());
}

void criterion_2() {
    bool ok = true;
    std::string detail;
    for (int n = 2; n <= 8; ++n) {
        FiniteGroup g = FiniteGroup::cyclic(n);
        FgAbGroup got = h(2, g, GaloisModule::trivial_lattice(g, 1)).group;
        if (!(got == FgAbGroup::cyclic(n))) {
            ok = false;
            detail = "n=" + std::to_string(n) + " gave " + got.to_string(false);
        }
    }
    report(2, "H^2(C_n, Z) = Z/n for n = 2..8", ok, detail);
}

void criterion_3() {
    bool ok = true;
    std::string detail;
    for (const char* t : {"c2", "c3", "c4", "c5", "c6", "c2xc2", "s3"}) {
        FiniteGroup g = FiniteGroup::parse(t);
        GaloisModule m = GaloisModule::regular_module(g);
        if (!h(1, g, m).group.is_trivial() || !h(2, g, m).group.is_trivial()) {
            ok = false;
            detail = t;
        }
    }
    report(3, "Shapiro vanishing for Z[Gamma]", ok, detail);
}

void criterion_4() {
    bool ok = true;
    std::string detail;
    for (const char* entry : {"gl:2", "gl:3", "sl:2", "pgl:2", "pgl:3", "sp:4", "torus:2"}) {
        for (const char* gname : {"c1", "c2", "c3", "c2xc2"}) {
            QuasiIsoReport rep = quasi_iso_check(catalog_entry(entry, FiniteGroup::parse(gname)));
            if (!rep.equal_order) {
                ok = false;
                detail = std::string(entry) + " over " + gname;
            }
        }
    }
    // twisted entry evaluated at its native Galois group
    QuasiIsoReport res = quasi_iso_check(catalog_entry("resgm:group=c2"));
    if (!res.equal_order) {
        ok = false;
        detail = "resgm:group=c2";
    }
    report(4, "quasi-isomorphism order agreement across the catalog grid", ok, detail);
}

void criterion_5() {
    struct Item {
        const char* poly;
        double expect;
        double tol;
    };
    for (const Item& item : {Item{"x^2+1", 0.5, 0.02}, Item{"cyclo:5", 0.25, 0.03},
                             Item{"cyclo:8", 0.25, 0.03}}) {
        auto t0 = std::chrono::steady_clock::now();
        NumberFieldSpec f = NumberFieldSpec::make(IntPoly::parse(item.poly), true);
        DensityEstimate est = density_estimate(f, PlaceSetSpec::split_in_l(), kBound);
        double secs = seconds_since(t0);
        double dev = std::abs(est.value - item.expect);
        bool ok = dev < item.tol && secs < 30.0;
        std::ostringstream d;
        d << item.poly << ": observed " << est.value << " (dev " << dev << ", tol " << item.tol
          << "), runtime " << secs << "s";
        report(5, "chebotarev split density at B = 1e5", ok, d.str());
    }
}

void criterion_6() {
    NumberFieldSpec qi = NumberFieldSpec::make(IntPoly::parse("x^2+1"), true);
    struct Item {
        const char* name;
        PlaceSetSpec spec;
    };
    std::vector<Item> items;
    items.push_back({"all", PlaceSetSpec::all_places()});
    items.push_back({"p=1(4)", PlaceSetSpec::congruence(4, {1})});
    items.push_back({"p=1(8)", PlaceSetSpec::congruence(8, {1})});
    for (const auto& item : items) {
        DensityRelationReport rep = density_relation_check(qi, item.spec, kBound);
        std::ostringstream d;
        d << item.name << ": |" << rep.lhs << " - " << rep.rhs << "| = " << rep.difference;
        report(6, "degree-weighted density identity for Q(i)", rep.difference < 0.05, d.str());
    }
}

void criterion_7() {
    struct Item {
        int n;
        const char* delta;
        const char* expect;
    };
    for (const Item& item : {Item{1, "1/2", "2"}, Item{2, "1/3", "9"}, Item{3, "1/2", "8"}}) {
        std::string out = cli_json({"asa", "--group", "gl:" + std::to_string(item.n), "--delta",
                                    item.delta, "--format", "json"});
        bool ok = false;
        std::string got = "(cli failure)";
        if (!out.empty()) {
            auto j = nlohmann::json::parse(out);
            got = j.at("bound").get<std::string>();
            ok = got == item.expect && j.at("verdict") == "ASA_HOLDS";
        }
        std::ostringstream d;
        d << "gl:" << item.n << " at " << item.delta << " -> " << got;
        report(7, "gl bound is exactly delta^-n", ok, d.str());
    }
}

void criterion_8() {
    std::string half = cli_json({"asa", "--group", "pgl:2", "--delta", "1/2", "--format",
                                 "json"});
    std::string above = cli_json({"asa", "--group", "pgl:2", "--delta", "3/5", "--format",
                                  "json"});
    std::string three = cli_json({"asa", "--group", "pgl:3", "--delta", "1/2", "--format",
                                  "json"});
    bool ok = false;
    std::string detail = "(cli failure)";
    if (!half.empty() && !above.empty() && !three.empty()) {
        auto jh = nlohmann::json::parse(half);
        auto ja = nlohmann::json::parse(above);
        auto j3 = nlohmann::json::parse(three);
        ok = jh.at("bound") == "2" && jh.at("verdict") == "ASA_HOLDS" &&
             ja.at("bound") == "5/3" && ja.at("verdict") == "ASA_HOLDS_SA" &&
             j3.at("bound") == "2";
        detail = "1/2 -> " + jh.at("bound").get<std::string>() + "/" +
                 jh.at("verdict").get<std::string>() + ", 3/5 -> " +
                 ja.at("bound").get<std::string>() + "/" + ja.at("verdict").get<std::string>();
    }
    report(8, "pgl bound is delta^-1 with SA exactly above 1/2", ok, detail);
}

struct CycloCase {
    long m;
    std::set<long> residues;
    unsigned long expect;
};

const std::vector<CycloCase>& cyclo_cases() {
    static const std::vector<CycloCase> cases = {
        {4, {1}, 2}, {8, {1, 7}, 2}, {12, {1}, 4}, {5, {1, 2, 3, 4}, 1}};
    return cases;
}

void criterion_9() {
    for (const auto& c : cyclo_cases()) {
        AsaReport rep = exact_weil_restriction(c.m, c.residues);
        bool order_ok = rep.exact_b_s && rep.exact_b_s->finite_order() == c.expect;

        NumberFieldSpec lin = NumberFieldSpec::make(IntPoly::parse("x"), true);
        DensityEstimate est =
            density_estimate(lin, PlaceSetSpec::congruence(c.m, c.residues), kBound);
        double cap = 1.0 / static_cast<double>(c.expect) + 0.05;
        bool density_ok = est.value <= cap;

        std::ostringstream d;
        d << "m=" << c.m << ": |B_S| = "
          << (rep.exact_b_s ? rep.exact_b_s->finite_order().get_str() : "?") << " (want "
          << c.expect << "), delta_est " << est.value << " <= " << cap;
        report(9, "exact cyclotomic B_S and the density-extension inequality", order_ok &&
                   density_ok,
               d.str());
    }
}

void criterion_10() {
    for (const auto& c : cyclo_cases()) {
        AsaReport rep = exact_weil_restriction(c.m, c.residues);
        FiniteGroup gal = FiniteGroup::trivial();
        for (const auto& f : rep.exact_b_s->invariant_factors())
            gal = FiniteGroup::direct_product(gal,
                                              FiniteGroup::cyclic(static_cast<int>(f.get_ui())));
        GoingOverLReport going =
            going_over_l_bound(complexes(catalog_entry("torus:r=1", gal)).c0_hat,
                               delta_exact(split_level_density(c.m, c.residues), "eq-density"));
        bool ok = going.decided && going.bound_exact && rep.bound <= going.bound;
        std::ostringstream d;
        d << "m=" << c.m << ": exact " << rep.bound.get_str() << " <= going "
          << (going.decided ? going.bound.get_str() : "(undecided)");
        report(10, "exact B_S dominated by the going-over-L bound", ok, d.str());
    }
}

void criterion_11() {
    std::string a = cli_json({"reproduce", "--bound", "100000", "--format", "json"});
    std::string b = cli_json({"reproduce", "--bound", "100000", "--format", "json"});
    bool ok = !a.empty() && a == b;
    std::string detail = ok ? "byte-identical JSON across two runs"
                            : (a.empty() ? "reproduce failed" : "outputs differ");
    if (ok) {
        auto j = nlohmann::json::parse(a);
        ok = j.at("failed") == 0;
        if (!ok) detail = "reproduce reported failures";
    }
    report(11, "reproduce is deterministic and green", ok, detail);
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::printf("%s: %d failure(s), total %.1fs\n", g_failures ? "FAIL" : "PASS", g_failures,
                seconds_since(t0));
    return g_failures ? 1 : 0;
}
