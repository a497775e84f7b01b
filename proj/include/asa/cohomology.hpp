#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asa/galois_module.hpp"
#include "asa/snf.hpp"

namespace asa {

// Cap on |Gamma| for bar-resolution computations; the degree-2 systems grow
// like |Gamma|^3 * rank.
int group_order_cap();
void set_group_order_cap(int cap);

struct CohomologyResult {
    int degree = 0;
    FgAbGroup group;
    // Cochain vectors (inhomogeneous normalized cochains) generating the
    // cohomology, one per canonical invariant factor / free generator.
    std::optional<std::vector<std::vector<mpz_class>>> representatives;

    std::string to_string(bool unicode = true) const { return group.to_string(unicode); }
};

// H^i(Gamma, M) via the normalized bar resolution, i in {0,1,2}.
CohomologyResult h(int degree, const FiniteGroup& g, const GaloisModule& m,
                   bool want_representatives = false);

// Independent oracle for cyclic groups from the 2-periodic resolution:
// H^odd = ker(Norm)/im(sigma - 1), H^even(>=2) = ker(sigma - 1)/im(Norm).
FgAbGroup cyclic_oracle(int degree, const FiniteGroup& g, const GaloisModule& m);

// H^1 of the total complex of a two-term complex (degrees -1 and 0).
CohomologyResult hyper_h1(const FiniteGroup& g, const TwoTermComplex& c,
                          bool want_representatives = false);

// Cochain-level maps and class tests, used for inflation/restriction and the
// exactness reports.
bool is_cocycle(const FiniteGroup& g, const GaloisModule& m, int degree,
                const std::vector<mpz_class>& cochain);
bool is_coboundary(const FiniteGroup& g, const GaloisModule& m, int degree,
                   const std::vector<mpz_class>& cochain);

GaloisModule restrict_module(const GaloisModule& m, const std::vector<int>& h_elems);
std::vector<mpz_class> restrict_cocycle(const FiniteGroup& g, const std::vector<int>& h_elems,
                                        const GaloisModule& m, int degree,
                                        const std::vector<mpz_class>& cochain);

// Pullback along G ->> Q given by `projection`; mq lives over Q.
GaloisModule inflate_module(const FiniteGroup& g, const std::vector<int>& projection,
                            const GaloisModule& mq);
std::vector<mpz_class> inflate_cocycle(const FiniteGroup& g, const std::vector<int>& projection,
                                       const FiniteGroup& q, const GaloisModule& mq, int degree,
                                       const std::vector<mpz_class>& cochain);

// Exactness report for the six-term window around hyper H^1:
//   H0(tot) -> H1(M-1) -> H1(M0) -> H1(tot) -> H2(M-1) -> H2(M0)
struct LongExactReport {
    struct Junction {
        std::string at;
        mpz_class image_order;
        mpz_class kernel_order;
        bool composite_zero = false;
        bool exact = false;
    };
    std::vector<std::string> groups;  // rendered, in sequence order
    std::vector<Junction> junctions;  // at the four inner spots
    bool all_exact = false;
};

LongExactReport long_exact_check(const FiniteGroup& g, const TwoTermComplex& c);

}  // namespace asa
