#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "asa/catalog.hpp"
#include "asa/number_field.hpp"

namespace asa {

enum class Verdict { AsaHolds, AsaHoldsSa, Undecided };
std::string verdict_string(Verdict v);

// A density value: exact rational (from a congruence class, a symbolic entry,
// or a split condition on an asserted-Galois field) or an empirical estimate
// with a heuristic interval.
struct DeltaInfo {
    bool exact = false;
    mpq_class value;  // exact case
    double estimate = 0.0, lo = 0.0, hi = 0.0;
    std::string source;

    bool certified_positive() const { return exact ? value > 0 : lo > 0; }
    double as_double() const { return exact ? value.get_d() : estimate; }
};

DeltaInfo delta_exact(const mpq_class& v, std::string source);
DeltaInfo delta_estimated(const DensityEstimate& est, std::string source);
// Derives an exact value when the place set allows it; otherwise scans primes.
DeltaInfo delta_for_placeset(const PlaceSetSpec& places,
                             const std::optional<NumberFieldSpec>& field, std::uint64_t bound,
                             Execution exec = Execution::Parallel);

struct AsaReport {
    Verdict verdict = Verdict::Undecided;
    DeltaInfo delta;
    int rank_r = 0;
    mpz_class h1_size{1};
    mpz_class h2_size{1};
    bool bound_exact = false;
    mpq_class bound;                          // exact case
    double bound_lo = 0.0, bound_hi = 0.0;    // estimate case
    std::optional<FgAbGroup> exact_b_s;
    std::vector<std::string> provenance;  // "field<-rule-tag" strings
    std::vector<std::string> notes;
};

// Hypothesis check: the subgroup fixing L acts trivially on the central-torus
// and kernel duals, S contains the archimedean places, and the split-place
// density is certified positive.
AsaReport check_mainthm(const GroupDescriptor& d, const std::vector<int>& l_fixing_subgroup,
                        const PlaceSetSpec& places, const DeltaInfo& delta);

// delta^{-rank} * |H^2(Gamma, t_hat)|
AsaReport bound_torus(const GaloisModule& t_hat, const DeltaInfo& delta);
// delta^{-r} * |H^1(Gamma, pic_bar)|, r >= minimal generator count of pic_bar
AsaReport bound_semisimple(const GaloisModule& pic_bar, int r, const DeltaInfo& delta);
// delta^{-rank_r} * |H^1(Gamma, t_sc_hat)| * |H^2(Gamma, t_hat)|
AsaReport bound_general(const GroupDescriptor& d, const DeltaInfo& delta);

struct GoingOverLReport {
    std::string case_name;  // "torus" | "semisimple" | "acyclic" | "mixed"
    FgAbGroup kernel_group;    // H^-1 of the complex at the split level
    FgAbGroup cokernel_group;  // H^0
    int exponent = 0;
    int candidate_exponent_torus = 0;
    int candidate_exponent_semisimple = 0;
    mpz_class h2_kernel{1};
    mpz_class h1_cokernel{1};
    bool decided = true;
    DeltaInfo delta;
    bool bound_exact = false;
    mpq_class bound;
    double bound_lo = 0.0, bound_hi = 0.0;
};

// Counting bound through a splitting extension: delta^{-g} * |H^2| * |H^1|
// with g chosen by whether the kernel (torus case) or the cokernel
// (semisimple case) carries the complex.
GoingOverLReport going_over_l_bound(const TwoTermComplex& c0, const DeltaInfo& delta);

// Exact Sha for a cyclotomically-defined place set over Q: the group
// (Z/m)^x / <A>, its order being the exact index bound. When a Galois group
// is supplied (e.g. from a resgm descriptor) its shape is cross-checked.
AsaReport exact_weil_restriction(long m, const std::set<long>& residues,
                                 const std::optional<FiniteGroup>& expected_gamma = std::nullopt);

// The split-level density delta_L(S_L) = [E_S:Q] * delta_Q(S) for a
// congruence place set, exact.
mpq_class split_level_density(long m, const std::set<long>& residues);

mpq_class mpq_pow_neg(const mpq_class& q, int e);  // q^{-e}, e >= 0

}  // namespace asa
