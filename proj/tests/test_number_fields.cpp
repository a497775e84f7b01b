#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <numeric>

#include "asa/errors.hpp"
#include "asa/number_field.hpp"

using namespace asa;

TEST_CASE("polynomial parsing and cyclotomic construction") {
    CHECK(IntPoly::parse("x^2+1").coeffs() == std::vector<mpz_class>{1, 0, 1});
    CHECK(IntPoly::parse("x") == IntPoly::parse("0,1"));
    CHECK(IntPoly::parse("2x^3-x+7").coeffs() == std::vector<mpz_class>{7, -1, 0, 2});
    CHECK(IntPoly::cyclotomic(5).coeffs() == std::vector<mpz_class>{1, 1, 1, 1, 1});
    CHECK(IntPoly::cyclotomic(8).coeffs() == std::vector<mpz_class>{1, 0, 0, 0, 1});
    CHECK(IntPoly::cyclotomic(12).coeffs() == std::vector<mpz_class>{1, 0, -1, 0, 1});
    CHECK(IntPoly::parse("cyclo:4") == IntPoly::parse("x^2+1"));
    CHECK_THROWS_AS(IntPoly::parse("y+1"), parse_error);

    CHECK(IntPoly::parse("x^2+1").is_squarefree());
    CHECK_FALSE(IntPoly::parse("x^2+2x+1").is_squarefree());
    CHECK_THROWS_AS(NumberFieldSpec::make(IntPoly::parse("x^2+2x+1")), invariant_error);
    CHECK_THROWS_AS(NumberFieldSpec::make(IntPoly::parse("2x+1")), invariant_error);
}

TEST_CASE("splitting types mod p") {
    IntPoly f = IntPoly::parse("x^2+1");
    SUBCASE("split prime") {
        auto t = factor_degrees_mod_p(f, 5);
        CHECK_FALSE(t.ramified);
        CHECK(t.degrees == std::vector<int>{1, 1});
    }
    SUBCASE("inert prime") {
        auto t = factor_degrees_mod_p(f, 3);
        CHECK_FALSE(t.ramified);
        CHECK(t.degrees == std::vector<int>{2});
    }
    SUBCASE("ramified prime") {
        CHECK(factor_degrees_mod_p(f, 2).ramified);
    }
    SUBCASE("non-prime rejected") {
        CHECK_THROWS_AS(factor_degrees_mod_p(f, 6), invariant_error);
    }
    SUBCASE("degrees sum to deg f when unramified") {
        IntPoly g = IntPoly::parse("x^4+x+1");
        for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 101ull}) {
            auto t = factor_degrees_mod_p(g, p);
            if (t.ramified) continue;
            int sum = 0;
            for (int d : t.degrees) sum += d;
            CHECK(sum == 4);
        }
    }
}

TEST_CASE("totally split detection") {
    IntPoly f = IntPoly::parse("x^2+1");
    CHECK(is_totally_split(f, 13));
    CHECK_FALSE(is_totally_split(f, 7));
    CHECK(is_totally_split(IntPoly::parse("x"), 17));
    // quadratic reciprocity check over a prime range: split iff p = 1 mod 4
    for (std::uint32_t p : primes_up_to(500)) {
        if (p == 2) continue;
        CHECK(is_totally_split(f, p) == (p % 4 == 1));
    }
}

TEST_CASE("density estimates") {
    NumberFieldSpec qi = NumberFieldSpec::make(IntPoly::parse("x^2+1"), true);
    SUBCASE("split density of Q(i) approaches 1/2") {
        auto est = density_estimate(qi, PlaceSetSpec::split_in_l(), 20000);
        CHECK(std::abs(est.value - 0.5) < 0.03);
        CHECK(est.prime_count_total > 2000);
    }
    SUBCASE("all places have density 1") {
        NumberFieldSpec lin = NumberFieldSpec::make(IntPoly::parse("x"), true);
        auto est = density_estimate(lin, PlaceSetSpec::all_places(), 1000);
        CHECK(est.value == 1.0);
    }
    SUBCASE("congruence density") {
        NumberFieldSpec lin = NumberFieldSpec::make(IntPoly::parse("x"), true);
        auto est = density_estimate(lin, PlaceSetSpec::congruence(4, {1}), 20000);
        CHECK(std::abs(est.value - 0.5) < 0.03);
    }
    SUBCASE("dirichlet mode stays close to natural at small s") {
        auto nat = density_estimate(qi, PlaceSetSpec::split_in_l(), 20000);
        auto dir = density_estimate(qi, PlaceSetSpec::split_in_l(), 20000,
                                    DensityMode::Dirichlet, 1.05);
        CHECK(std::abs(nat.value - dir.value) < 0.1);
    }
    SUBCASE("bound must be sane") {
        CHECK_THROWS_AS(density_estimate(qi, PlaceSetSpec::split_in_l(), 50), invariant_error);
    }
    SUBCASE("empty residue set is unsatisfiable") {
        CHECK_THROWS_AS(PlaceSetSpec::congruence(4, {}), invariant_error);
        CHECK_THROWS_AS(PlaceSetSpec::congruence(4, {2}), invariant_error);
    }
}

TEST_CASE("serial and parallel scans agree bit for bit") {
    NumberFieldSpec qi = NumberFieldSpec::make(IntPoly::parse("x^2+1"), true);
    for (auto mode : {DensityMode::Natural, DensityMode::Dirichlet}) {
        auto a = density_estimate(qi, PlaceSetSpec::split_in_l(), 30000, mode, 1.05,
                                  Execution::Serial);
        auto b = density_estimate(qi, PlaceSetSpec::split_in_l(), 30000, mode, 1.05,
                                  Execution::Parallel);
        CHECK(a.prime_count_total == b.prime_count_total);
        CHECK(a.prime_count_matching == b.prime_count_matching);
        CHECK(a.value == b.value);  // bitwise: identical chunk fold
    }
    auto ra = density_relation_check(qi, PlaceSetSpec::congruence(4, {1}), 30000,
                                     Execution::Serial);
    auto rb = density_relation_check(qi, PlaceSetSpec::congruence(4, {1}), 30000,
                                     Execution::Parallel);
    CHECK(ra.lhs == rb.lhs);
    CHECK(ra.rhs == rb.rhs);
}

TEST_CASE("density relation for Q(i)") {
    NumberFieldSpec qi = NumberFieldSpec::make(IntPoly::parse("x^2+1"), true);
    SUBCASE("S = all primes") {
        auto rep = density_relation_check(qi, PlaceSetSpec::all_places(), 20000);
        CHECK(rep.difference < 0.06);
        CHECK(rep.lhs == doctest::Approx(1.0).epsilon(0.08));
    }
    SUBCASE("S = p mod 4 = 1") {
        auto rep = density_relation_check(qi, PlaceSetSpec::congruence(4, {1}), 20000);
        CHECK(rep.difference < 0.06);
        CHECK(rep.rhs == doctest::Approx(1.0).epsilon(0.08));
    }
    SUBCASE("S = p mod 8 = 1") {
        auto rep = density_relation_check(qi, PlaceSetSpec::congruence(8, {1}), 20000);
        CHECK(rep.difference < 0.06);
        CHECK(rep.rhs == doctest::Approx(0.5).epsilon(0.15));
    }
    SUBCASE("galois assertion required") {
        NumberFieldSpec f = NumberFieldSpec::make(IntPoly::parse("x^2+1"), false);
        CHECK_THROWS_AS(density_relation_check(f, PlaceSetSpec::all_places(), 1000),
                        invariant_error);
    }
}

TEST_CASE("galois sanity warning") {
    CHECK_FALSE(galois_sanity_warning(IntPoly::parse("x^2+1")).has_value());
    CHECK_FALSE(galois_sanity_warning(IntPoly::cyclotomic(5)).has_value());
    // x^3 - 2 is not Galois: mixed degree patterns appear
    CHECK(galois_sanity_warning(IntPoly::parse("x^3-2")).has_value());
}

TEST_CASE("cyclotomic split field over Q") {
    SUBCASE("worked examples") {
        auto a = cyclotomic_e_s(4, {1});
        CHECK(a.degree == 2);
        CHECK(a.galois_group == FgAbGroup::cyclic(2));

        CHECK(cyclotomic_e_s(4, {1, 3}).degree == 1);

        auto c = cyclotomic_e_s(12, {1});
        CHECK(c.degree == 4);
        CHECK(c.galois_group == FgAbGroup(0, {mpz_class(2), mpz_class(2)}));

        CHECK(sha1_q_mod_z_order(4, {1}) == 2);
        CHECK(sha1_q_mod_z_order(8, {1, 7}) == 2);
        CHECK(sha1_q_mod_z_order(5, {1, 2, 3, 4}) == 1);
    }
    SUBCASE("non-unit residues are rejected") {
        CHECK_THROWS_AS(cyclotomic_e_s(4, {2}), invariant_error);
    }
    SUBCASE("degree divides phi(m) and detects the full group") {
        for (long m : {3L, 4L, 5L, 7L, 8L, 9L, 12L, 15L, 16L, 21L, 24L, 36L, 40L}) {
            std::set<long> full;
            for (long a = 1; a < m; ++a)
                if (std::gcd(a, m) == 1) full.insert(a);
            CHECK(cyclotomic_e_s(m, full).degree == 1);
            for (long a : full) {
                auto one = cyclotomic_e_s(m, {a});
                CHECK(euler_phi(m) % one.degree.get_ui() == 0);
            }
        }
    }
    SUBCASE("subgroup generated by 2 mod 7") {
        // <2> = {1,2,4} has index 2 in (Z/7)^x
        CHECK(cyclotomic_e_s(7, {2}).degree == 2);
    }
}
