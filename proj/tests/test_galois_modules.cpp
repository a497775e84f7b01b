#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asa/errors.hpp"
#include "asa/galois_module.hpp"

using namespace asa;

TEST_CASE("group construction and validation") {
    SUBCASE("order-1 table") {
        FiniteGroup g = FiniteGroup::from_table({{0}});
        CHECK(g.order() == 1);
        CHECK(g.identity() == 0);
    }
    SUBCASE("C2 table") {
        FiniteGroup g = FiniteGroup::from_table({{0, 1}, {1, 0}});
        CHECK(g.order() == 2);
        CHECK(g.op(1, 1) == 0);
    }
    SUBCASE("broken associativity is reported with the triple") {
        // tweak one entry of the C3 table
        std::vector<std::vector<int>> t = {{0, 1, 2}, {1, 2, 0}, {2, 0, 0}};
        CHECK_THROWS_WITH_AS(FiniteGroup::from_table(t),
                             doctest::Contains("non-associative triple"), invariant_error);
    }
    SUBCASE("no identity") {
        std::vector<std::vector<int>> t = {{1, 1}, {0, 0}};
        CHECK_THROWS_WITH_AS(FiniteGroup::from_table(t), doctest::Contains("identity"),
                             invariant_error);
    }
}

TEST_CASE("cyclic and product groups") {
    CHECK(FiniteGroup::cyclic(1).order() == 1);
    CHECK_THROWS_AS(FiniteGroup::cyclic(0), parse_error);

    FiniteGroup klein = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    CHECK(klein.order() == 4);
    for (int x = 0; x < 4; ++x) CHECK(klein.element_order(x) == (x == klein.identity() ? 1 : 2));

    // C6 is isomorphic to C2 x C3: same element-order multisets
    FiniteGroup c6 = FiniteGroup::cyclic(6);
    FiniteGroup c2c3 = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
    CHECK(c6.element_order_multiset() == c2c3.element_order_multiset());
    CHECK(c2c3.is_cyclic());

    CHECK(FiniteGroup::symmetric3().order() == 6);
    CHECK_FALSE(FiniteGroup::symmetric3().is_abelian());
    CHECK(FiniteGroup::parse("c2xc2").element_order_multiset() ==
          klein.element_order_multiset());
}

TEST_CASE("abelian invariants from the multiplication table") {
    CHECK(FiniteGroup::cyclic(6).abelian_invariants() == FgAbGroup::cyclic(6));
    FiniteGroup klein = FiniteGroup::parse("c2xc2");
    CHECK(klein.abelian_invariants() == FgAbGroup(0, {mpz_class(2), mpz_class(2)}));
    CHECK_THROWS_AS(FiniteGroup::symmetric3().abelian_invariants(), invariant_error);
}

TEST_CASE("standard modules") {
    FiniteGroup c2 = FiniteGroup::cyclic(2);
    FiniteGroup c3 = FiniteGroup::cyclic(3);

    SUBCASE("trivial lattice") {
        GaloisModule m = GaloisModule::trivial_lattice(c3, 2);
        for (int g = 0; g < 3; ++g) CHECK(m.action(g) == IntMatrix::identity(2));
    }
    SUBCASE("regular module of C2 swaps the basis") {
        GaloisModule m = GaloisModule::regular_module(c2);
        CHECK(m.action(1) == IntMatrix::from({{0, 1}, {1, 0}}));
    }
    SUBCASE("sign module needs an even quotient") {
        GaloisModule s = GaloisModule::sign_module(c2);
        CHECK(s.action(1) == IntMatrix::from({{-1}}));
        CHECK_THROWS_AS(GaloisModule::sign_module(c3), invariant_error);
        // S3 surjects onto C2 via the sign of the permutation
        CHECK(GaloisModule::sign_module(FiniteGroup::symmetric3()).rank() == 1);
    }
    SUBCASE("reduction mod n") {
        GaloisModule m = GaloisModule::reduction_mod(GaloisModule::trivial_lattice(c2, 1), 5);
        CHECK(m.underlying_group() == FgAbGroup::cyclic(5));
        CHECK_THROWS_AS(GaloisModule::reduction_mod(GaloisModule::trivial_lattice(c2, 1), 1),
                        invariant_error);
    }
    SUBCASE("reduction order is n^rank") {
        GaloisModule m = GaloisModule::reduction_mod(GaloisModule::regular_module(c3), 4);
        CHECK(m.underlying_group().finite_order() == 64);
    }
}

TEST_CASE("induced modules") {
    FiniteGroup c2 = FiniteGroup::cyclic(2);
    FiniteGroup c4 = FiniteGroup::cyclic(4);

    SUBCASE("index-1 induction is the module itself") {
        GaloisModule m = GaloisModule::induced_module(
            c2, {0, 1}, GaloisModule::trivial_lattice(c2, 1));
        CHECK(m.rank() == 1);
        CHECK(m.action(1) == IntMatrix::identity(1));
    }
    SUBCASE("regular module as induction from the trivial subgroup") {
        GaloisModule m = GaloisModule::induced_module(
            c2, {0}, GaloisModule::trivial_lattice(FiniteGroup::trivial(), 1));
        CHECK(m.rank() == 2);
        CHECK(m.action(1) == IntMatrix::from({{0, 1}, {1, 0}}));
    }
    SUBCASE("C4 over its order-2 subgroup gives the coset swap") {
        GaloisModule m = GaloisModule::induced_module(
            c4, {0, 2}, GaloisModule::trivial_lattice(c2, 1));
        CHECK(m.rank() == 2);
        CHECK(m.action(1) == IntMatrix::from({{0, 1}, {1, 0}}));
    }
    SUBCASE("non-subgroup input is rejected") {
        CHECK_THROWS_AS(GaloisModule::induced_module(c4, {0, 1},
                                                     GaloisModule::trivial_lattice(c2, 1)),
                        invariant_error);
    }
}

TEST_CASE("dual modules") {
    FiniteGroup c2 = FiniteGroup::cyclic(2);
    SUBCASE("trivial and sign are self-dual") {
        GaloisModule t = GaloisModule::trivial_lattice(c2, 3);
        CHECK(t.dual().actions() == t.actions());
        GaloisModule s = GaloisModule::sign_module(c2);
        CHECK(s.dual().actions() == s.actions());
    }
    SUBCASE("dual is an involution") {
        FiniteGroup s3 = FiniteGroup::symmetric3();
        GaloisModule m = GaloisModule::regular_module(s3);
        CHECK(m.dual().dual().actions() == m.actions());
    }
    SUBCASE("finite modules are rejected") {
        GaloisModule m = GaloisModule::cyclic_module(c2, 3);
        CHECK_THROWS_AS(m.dual(), invariant_error);
    }
}

TEST_CASE("fixed points") {
    FiniteGroup c2 = FiniteGroup::cyclic(2);
    CHECK(GaloisModule::trivial_lattice(c2, 3).fixed_points().group == FgAbGroup::free(3));
    CHECK(GaloisModule::sign_module(c2).fixed_points().group.is_trivial());

    auto fp = GaloisModule::regular_module(c2).fixed_points();
    CHECK(fp.group == FgAbGroup::free(1));
    // the norm direction (1,1)
    CHECK(abs(fp.generators.at(0, 0)) == 1);
    CHECK(fp.generators.at(0, 0) == fp.generators.at(1, 0));

    // transitive permutation module has fixed rank 1
    FiniteGroup c4 = FiniteGroup::cyclic(4);
    GaloisModule perm = GaloisModule::permutation_module(c4, {0});
    CHECK(perm.fixed_points().group == FgAbGroup::free(1));

    // finite module: Z/4 with the sign twist over C2 has fixed part Z/2
    GaloisModule twist = GaloisModule::reduction_mod(GaloisModule::sign_module(c2), 4);
    CHECK(twist.fixed_points().group == FgAbGroup::cyclic(2));
}

TEST_CASE("module action homomorphism property holds for every constructor") {
    std::vector<GaloisModule> battery;
    FiniteGroup c4 = FiniteGroup::cyclic(4);
    FiniteGroup s3 = FiniteGroup::symmetric3();
    battery.push_back(GaloisModule::trivial_lattice(s3, 2));
    battery.push_back(GaloisModule::regular_module(c4));
    battery.push_back(GaloisModule::sign_module(c4));
    battery.push_back(GaloisModule::permutation_module(c4, {0, 2}));
    battery.push_back(GaloisModule::reduction_mod(GaloisModule::regular_module(c4), 6));
    for (const auto& m : battery) {
        const FiniteGroup& g = m.group();
        for (int a = 0; a < g.order(); ++a)
            for (int b = 0; b < g.order(); ++b)
                if (m.is_lattice())
                    CHECK(m.action(a) * m.action(b) == m.action(g.op(a, b)));
    }
}

TEST_CASE("two-term complexes") {
    FiniteGroup c2 = FiniteGroup::cyclic(2);

    SUBCASE("degenerate [0 -> M]") {
        TwoTermComplex c = make_complex(GaloisModule::zero_module(c2),
                                        GaloisModule::trivial_lattice(c2, 1), IntMatrix(1, 0));
        CHECK(c.m_minus1.rank() == 0);
    }
    SUBCASE("[Z --id--> Z]") {
        TwoTermComplex c = make_complex(GaloisModule::trivial_lattice(c2, 1),
                                        GaloisModule::trivial_lattice(c2, 1),
                                        IntMatrix::identity(1));
        CHECK(c.differential == IntMatrix::identity(1));
    }
    SUBCASE("[Z --mod n--> Z/n]") {
        TwoTermComplex c = make_complex(GaloisModule::trivial_lattice(c2, 1),
                                        GaloisModule::cyclic_module(c2, 4),
                                        IntMatrix::identity(1));
        CHECK(c.m_zero.underlying_group() == FgAbGroup::cyclic(4));
    }
    SUBCASE("non-equivariant differential names the element") {
        CHECK_THROWS_WITH_AS(
            make_complex(GaloisModule::sign_module(c2), GaloisModule::trivial_lattice(c2, 1),
                         IntMatrix::identity(1)),
            doctest::Contains("element 1"), invariant_error);
    }
}
