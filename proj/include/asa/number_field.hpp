#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "asa/fg_ab_group.hpp"
#include "asa/polynomial.hpp"

namespace asa {

// A number field given by a monic squarefree integer polynomial. Whether the
// field is Galois over Q is asserted by the caller and only sanity-checked.
struct NumberFieldSpec {
    IntPoly poly;
    bool asserted_galois = false;

    static NumberFieldSpec make(IntPoly f, bool asserted_galois = false);
    int degree() const { return poly.degree(); }
};

enum class PlaceSetKind { SplitInL, FrobeniusPattern, Congruence, AllPlaces };

struct PlaceSetSpec {
    PlaceSetKind kind = PlaceSetKind::AllPlaces;
    std::vector<std::vector<int>> patterns;  // degree multisets, each sorted
    long modulus = 0;
    std::set<long> residues;
    bool include_archimedean = true;
    std::optional<mpq_class> symbolic_density;

    static PlaceSetSpec split_in_l();
    static PlaceSetSpec all_places();
    static PlaceSetSpec congruence(long m, std::set<long> residues);
    static PlaceSetSpec frobenius(std::vector<std::vector<int>> patterns);

    void validate() const;
    std::string describe() const;
};

struct SplittingType {
    std::vector<int> degrees;  // ascending; degrees of the squarefree part if ramified
    bool ramified = false;
};

// Distinct-degree factorization type of f mod p. p must be prime.
SplittingType factor_degrees_mod_p(const IntPoly& f, std::uint64_t p);
bool is_totally_split(const IntPoly& f, std::uint64_t p);

enum class DensityMode { Natural, Dirichlet };
enum class Execution { Serial, Parallel };

struct DensityEstimate {
    double value = 0.0;
    std::uint64_t prime_bound = 0;
    std::uint64_t prime_count_total = 0;
    std::uint64_t prime_count_matching = 0;
    DensityMode mode = DensityMode::Natural;
    double dirichlet_s = 0.0;
    // Heuristic half-width of the estimate, used when a verdict needs an interval.
    double err = 0.0;
};

// Fraction of unramified primes <= bound matching the place set (natural mode)
// or the ratio of partial sums of p^{-s} (dirichlet mode).
DensityEstimate density_estimate(const NumberFieldSpec& field, const PlaceSetSpec& places,
                                 std::uint64_t bound, DensityMode mode = DensityMode::Natural,
                                 double s = 1.05, Execution exec = Execution::Parallel);

// Both sides of the degree-weighted density identity for a Galois field:
// lhs = [L:Q] * delta_Q(S_split), rhs = delta_L(S_L) over places of L counted
// by residue-field size.
struct DensityRelationReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double difference = 0.0;
    std::uint64_t prime_bound = 0;
    int field_degree = 0;
    std::optional<std::string> galois_warning;
};

DensityRelationReport density_relation_check(const NumberFieldSpec& field_l,
                                             const PlaceSetSpec& places, std::uint64_t bound,
                                             Execution exec = Execution::Parallel);

// Scans a handful of unramified primes; non-uniform factor degrees are
// impossible for Galois polynomials and produce a warning.
std::optional<std::string> galois_sanity_warning(const IntPoly& f, int sample_primes = 50);

// Largest abelian extension of Q split over S = { p : p mod m in A }, located
// inside the m-th cyclotomic field: degree and Galois group of (Z/m)^x / <A>.
struct CyclotomicSplitField {
    mpz_class degree;
    FgAbGroup galois_group;
};

CyclotomicSplitField cyclotomic_e_s(long m, const std::set<long>& residues);
mpz_class sha1_q_mod_z_order(long m, const std::set<long>& residues);

std::vector<std::uint32_t> primes_up_to(std::uint64_t bound);
std::uint64_t euler_phi(std::uint64_t m);
bool is_prime_u64(std::uint64_t n);

}  // namespace asa
