#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "asa/json_io.hpp"
#include "cli.hpp"

using namespace asa;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cohomology subcommand text output") {
    CHECK(invoke({"cohomology", "--group", "c4", "--module", "trivialZ", "--deg", "2"}).out ==
          "ℤ/4\n");
    CHECK(invoke({"cohomology", "--group", "c2", "--module", "regular", "--deg", "1"}).out ==
          "0\n");
    CHECK(invoke({"cohomology", "--group", "c1", "--module", "trivialZ:3", "--deg", "0"}).out ==
          "ℤ^3\n");
}

TEST_CASE("cohomology from a module JSON file") {
    FiniteGroup c2 = FiniteGroup::cyclic(2);
    GaloisModule sign = GaloisModule::sign_module(c2);
    auto path = std::filesystem::temp_directory_path() / "asa_test_module.json";
    {
        std::ofstream f(path);
        f << module_to_json(sign).dump();
    }
    Run r = invoke({"cohomology", "--module-file", path.string(), "--deg", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "ℤ/2\n");
    std::filesystem::remove(path);
}

TEST_CASE("density subcommand") {
    Run r = invoke({"density", "--poly", "x", "--all", "--bound", "1000"});
    CHECK(r.code == 0);
    CHECK(r.out.find("density ~= 1 ") != std::string::npos);

    Run json = invoke({"density", "--poly", "x^2+1", "--split", "--bound", "5000", "--galois",
                       "--format", "json"});
    CHECK(json.code == 0);
    auto j = nlohmann::json::parse(json.out);
    CHECK(j.at("chebotarev_expectation") == "1/2");
    CHECK(std::abs(j.at("value").get<double>() - 0.5) < 0.05);
}

TEST_CASE("density JSON input file") {
    auto path = std::filesystem::temp_directory_path() / "asa_density_input.json";
    {
        std::ofstream f(path);
        f << R"({"poly": ["1","0","1"], "placeset": {"kind": "congruence", "m": 4,)"
          << R"( "residues": [1]}, "bound": 5000, "mode": "natural"})";
    }
    Run r = invoke({"density", "--input", path.string(), "--format", "json"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j.at("value").get<double>() - 0.5) < 0.05);
    std::filesystem::remove(path);
}

TEST_CASE("asa subcommand worked examples") {
    SUBCASE("gl:3 at 1/2") {
        Run r = invoke({"asa", "--group", "gl:3", "--delta", "1/2", "--format", "json"});
        CHECK(r.code == 0);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j.at("bound") == "8");
        CHECK(j.at("verdict") == "ASA_HOLDS");
    }
    SUBCASE("pgl:2 at 3/5 certifies SA") {
        Run r = invoke({"asa", "--group", "pgl:2", "--delta", "3/5", "--format", "json"});
        auto j = nlohmann::json::parse(r.out);
        CHECK(j.at("verdict") == "ASA_HOLDS_SA");
        CHECK(j.at("bound") == "5/3");
    }
    SUBCASE("exact cyclotomic route") {
        Run r = invoke({"asa", "--group", "resgm:group=c2", "--congruence", "4:1", "--format",
                        "json"});
        auto j = nlohmann::json::parse(r.out);
        CHECK(j.at("exact_b_s").at("order") == "2");
        CHECK(j.at("going_over_l").at("bound") == "2");
    }
    SUBCASE("split place sets: exact under --galois, empirical otherwise") {
        Run exact = invoke({"asa", "--group", "gl:1", "--split", "--poly", "x^2+1", "--galois",
                            "--bound", "5000", "--format", "json"});
        auto je = nlohmann::json::parse(exact.out);
        CHECK(je.at("delta").at("kind") == "exact");
        CHECK(je.at("delta").at("value") == "1/2");
        CHECK(je.at("verdict") == "ASA_HOLDS");

        Run est = invoke({"asa", "--group", "gl:1", "--split", "--poly", "x^2+1", "--bound",
                          "5000", "--format", "json"});
        auto js = nlohmann::json::parse(est.out);
        CHECK(js.at("delta").at("kind") == "estimate");
        CHECK(js.at("verdict") == "ASA_HOLDS");  // interval stays positive
        CHECK(js.at("bound").is_null());
        CHECK(js.at("bound_interval").size() == 2);
    }
}

TEST_CASE("exit code contract") {
    CHECK(invoke({"nonsense"}).code == 2);
    CHECK(invoke({"density", "--poly", "y+1", "--all", "--bound", "1000"}).code == 2);
    CHECK(invoke({"cohomology", "--group", "c3", "--module", "sign", "--deg", "1"}).code == 3);
    CHECK(invoke({"asa", "--group", "torus:r=1", "--delta", "1/2", "--no-arch", "--strict"})
              .code == 4);
    CHECK(invoke({"asa", "--group", "torus:r=1", "--delta", "1/2", "--no-arch"}).code == 0);
    CHECK(invoke({"asa", "--group", "gl:2", "--delta", "5/2"}).code == 2);  // delta > 1
}

TEST_CASE("quasi-iso and es-degree subcommands") {
    Run q = invoke({"quasi-iso", "--entry", "pgl:2", "--gamma", "c2", "--format", "json"});
    CHECK(q.code == 0);
    auto jq = nlohmann::json::parse(q.out);
    CHECK(jq.at("equal_order") == true);

    Run e = invoke({"es-degree", "--modulus", "12", "--residues", "1", "--format", "json"});
    auto je = nlohmann::json::parse(e.out);
    CHECK(je.at("degree") == "4");

    Run full = invoke({"es-degree", "--modulus", "4", "--residues", "1,3", "--format", "json"});
    CHECK(nlohmann::json::parse(full.out).at("degree") == "1");
}

TEST_CASE("catalog subcommand") {
    Run r = invoke({"catalog", "--entry", "gl:2", "--format", "json"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("rank_r") == 2);
    CHECK(j.at("q_hat").at("rank") == 1);
    CHECK(invoke({"catalog", "--list"}).code == 0);
}

TEST_CASE("reproduce determinism and pass at a small bound") {
    Run a = invoke({"reproduce", "--bound", "2000", "--format", "json"});
    Run b = invoke({"reproduce", "--bound", "2000", "--format", "json"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);  // byte identical
    auto j = nlohmann::json::parse(a.out);
    CHECK(j.at("failed") == 0);
    CHECK(j.at("widened_tolerance") == true);
}

TEST_CASE("asa json output is deterministic") {
    Run a = invoke({"asa", "--group", "prod:(gl:2,pgl:2)", "--gamma", "c2", "--delta", "2/3",
                    "--format", "json"});
    Run b = invoke({"asa", "--group", "prod:(gl:2,pgl:2)", "--gamma", "c2", "--delta", "2/3",
                    "--format", "json"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}
