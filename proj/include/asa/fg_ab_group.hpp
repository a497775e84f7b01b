#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace asa {

// Finitely generated abelian group in canonical form:
// Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ... | dk, every di >= 2.
class FgAbGroup {
public:
    FgAbGroup() : free_rank_(0) {}
    FgAbGroup(int free_rank, std::vector<mpz_class> invariant_factors);

    // Canonicalizes an arbitrary diagonal: drops units, takes absolute values,
    // counts zeros as free rank. The diagonal must already be a divisibility chain
    // up to sign (as produced by Smith reduction).
    static FgAbGroup from_diagonal(const std::vector<mpz_class>& diag, int extra_free = 0);
    static FgAbGroup free(int rank) { return FgAbGroup(rank, {}); }
    static FgAbGroup cyclic(const mpz_class& n);
    static FgAbGroup trivial() { return FgAbGroup(); }

    int free_rank() const { return free_rank_; }
    const std::vector<mpz_class>& invariant_factors() const { return factors_; }

    bool is_trivial() const { return free_rank_ == 0 && factors_.empty(); }
    bool is_finite() const { return free_rank_ == 0; }
    // Order when finite; nullopt otherwise.
    std::optional<mpz_class> order() const;
    // Order as a size, treating infinite as an error.
    mpz_class finite_order() const;
    // Minimal number of generators.
    int min_generators() const { return free_rank_ + static_cast<int>(factors_.size()); }

    FgAbGroup direct_sum(const FgAbGroup& o) const;

    bool operator==(const FgAbGroup& o) const = default;

    // "0", "Z", "Z^2 + Z/2 + Z/4" style; unicode=true renders with the blackboard Z.
    std::string to_string(bool unicode = true) const;

private:
    int free_rank_;
    std::vector<mpz_class> factors_;
};

}  // namespace asa
