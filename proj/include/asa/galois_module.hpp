#pragma once

#include <optional>
#include <vector>

#include "asa/finite_group.hpp"
#include "asa/int_matrix.hpp"

namespace asa {

// Finitely generated abelian group Z^rank / im(relations) with an action of a
// finite group. Lattices have an empty relation matrix. Action matrices act on
// column vectors and satisfy action(g)*action(h) = action(gh) (mod relations).
class GaloisModule {
public:
    GaloisModule(FiniteGroup group, int rank, IntMatrix relations,
                 std::vector<IntMatrix> action);

    static GaloisModule trivial_lattice(const FiniteGroup& g, int rank);
    static GaloisModule sign_module(const FiniteGroup& g, const std::vector<int>& parity);
    static GaloisModule sign_module(const FiniteGroup& g);  // parity found automatically
    static GaloisModule regular_module(const FiniteGroup& g);
    static GaloisModule reduction_mod(const GaloisModule& m, const mpz_class& n);
    // M a module over the abstract subgroup; h_elems[i] in G realizes element i.
    static GaloisModule induced_module(const FiniteGroup& g, const std::vector<int>& h_elems,
                                       const GaloisModule& m);
    static GaloisModule permutation_module(const FiniteGroup& g,
                                           const std::vector<int>& h_elems);
    static GaloisModule zero_module(const FiniteGroup& g);
    // Z/n with trivial action.
    static GaloisModule cyclic_module(const FiniteGroup& g, const mpz_class& n);

    const FiniteGroup& group() const { return group_; }
    int rank() const { return rank_; }
    const IntMatrix& relations() const { return relations_; }
    bool is_lattice() const { return relations_.cols() == 0; }
    const IntMatrix& action(int g) const { return action_[g]; }
    const std::vector<IntMatrix>& actions() const { return action_; }

    GaloisModule dual() const;  // lattices only: transpose-inverse action
    GaloisModule direct_sum(const GaloisModule& o) const;

    // The underlying abelian group Z^rank / im(relations).
    FgAbGroup underlying_group() const;

    struct FixedPoints {
        IntMatrix generators;  // rank x k, generators of M^Gamma inside Z^rank
        FgAbGroup group;
    };
    FixedPoints fixed_points() const;

    // True when every listed element acts trivially (mod relations).
    bool acts_trivially(const std::vector<int>& elems) const;

private:
    void validate() const;

    FiniteGroup group_;
    int rank_;
    IntMatrix relations_;  // rank x q
    std::vector<IntMatrix> action_;
};

// Gamma-equivariant two-term complex m_minus1 -> m_zero with m_minus1 in
// degree -1 and m_zero in degree 0.
struct TwoTermComplex {
    GaloisModule m_minus1;
    GaloisModule m_zero;
    IntMatrix differential;  // rank(m_zero) x rank(m_minus1)
};

TwoTermComplex make_complex(GaloisModule m_minus1, GaloisModule m_zero, IntMatrix differential);

}  // namespace asa
