#include "asa/galois_module.hpp"

#include <sstream>

#include "asa/errors.hpp"
#include "asa/snf.hpp"

namespace asa {

GaloisModule::GaloisModule(FiniteGroup group, int rank, IntMatrix relations,
                           std::vector<IntMatrix> action)
    : group_(std::move(group)), rank_(rank), relations_(std::move(relations)),
      action_(std::move(action)) {
    if (relations_.cols() > 0 && relations_.rows() != rank_)
        throw invariant_error("relation matrix must have `rank` rows");
    if (relations_.cols() == 0) relations_ = IntMatrix(rank_, 0);
    if (static_cast<int>(action_.size()) != group_.order())
        throw invariant_error("need one action matrix per group element");
    for (const auto& a : action_)
        if (a.rows() != rank_ || a.cols() != rank_)
            throw invariant_error("action matrix shape mismatch");
    validate();
}

void GaloisModule::validate() const {
    const int n = group_.order();
    if (action_[group_.identity()] != IntMatrix::identity(rank_))
        throw invariant_error("identity element must act as the identity matrix");
    std::optional<ColumnSolver> rel;
    if (!is_lattice()) rel.emplace(relations_);
    auto congruent = [&](const IntMatrix& a, const IntMatrix& b) {
        if (is_lattice()) return a == b;
        return rel->contains_all_columns(a - b);
    };
    for (int g = 0; g < n; ++g) {
        for (int h = 0; h < n; ++h) {
            if (!congruent(action_[g] * action_[h], action_[group_.op(g, h)])) {
                std::ostringstream os;
                os << "action is not a homomorphism at pair (" << g << "," << h << ")";
                throw invariant_error(os.str());
            }
        }
        if (is_lattice()) {
            mpz_class det = action_[g].det();
            if (det != 1 && det != -1)
                throw invariant_error("lattice action matrix is not unimodular");
        } else if (!rel->contains_all_columns(action_[g] * relations_)) {
            // Invertibility mod relations then follows from the homomorphism
            // property applied to (g, g^{-1}).
            throw invariant_error("action does not preserve the relation lattice");
        }
    }
}

GaloisModule GaloisModule::trivial_lattice(const FiniteGroup& g, int rank) {
    if (rank < 0) throw parse_error("rank must be nonnegative");
    std::vector<IntMatrix> action(g.order(), IntMatrix::identity(rank));
    return GaloisModule(g, rank, IntMatrix(rank, 0), std::move(action));
}

GaloisModule GaloisModule::sign_module(const FiniteGroup& g, const std::vector<int>& parity) {
    if (static_cast<int>(parity.size()) != g.order())
        throw invariant_error("parity vector size mismatch");
    bool onto = false;
    for (int x = 0; x < g.order(); ++x) {
        if (parity[x] != 0 && parity[x] != 1)
            throw invariant_error("parity values must be 0 or 1");
        if (parity[x] == 1) onto = true;
        for (int y = 0; y < g.order(); ++y)
            if ((parity[x] + parity[y]) % 2 != parity[g.op(x, y)])
                throw invariant_error("parity vector is not a homomorphism onto C2");
    }
    if (!onto) throw invariant_error("parity map is not surjective onto C2");
    std::vector<IntMatrix> action(g.order());
    for (int x = 0; x < g.order(); ++x) {
        IntMatrix a(1, 1);
        a.at(0, 0) = parity[x] ? -1 : 1;
        action[x] = a;
    }
    return GaloisModule(g, 1, IntMatrix(1, 0), std::move(action));
}

GaloisModule GaloisModule::sign_module(const FiniteGroup& g) {
    return sign_module(g, g.find_parity());
}

GaloisModule GaloisModule::regular_module(const FiniteGroup& g) {
    const int n = g.order();
    std::vector<IntMatrix> action(n);
    for (int x = 0; x < n; ++x) {
        IntMatrix a(n, n);
        for (int k = 0; k < n; ++k) a.at(g.op(x, k), k) = 1;
        action[x] = a;
    }
    return GaloisModule(g, n, IntMatrix(n, 0), std::move(action));
}

GaloisModule GaloisModule::reduction_mod(const GaloisModule& m, const mpz_class& n) {
    if (n < 2) throw invariant_error("reduction modulus must be >= 2");
    std::vector<mpz_class> d(m.rank(), n);
    IntMatrix rels = IntMatrix::hstack(m.relations(), IntMatrix::diagonal(d));
    return GaloisModule(m.group(), m.rank(), rels, m.actions());
}

GaloisModule GaloisModule::induced_module(const FiniteGroup& g, const std::vector<int>& h_elems,
                                          const GaloisModule& m) {
    if (!g.is_subgroup(h_elems))
        throw invariant_error("listed elements do not form a subgroup");
    if (static_cast<int>(h_elems.size()) != m.group().order())
        throw invariant_error("module group order does not match subgroup size");
    // The identification i -> h_elems[i] must be an isomorphism.
    std::vector<int> pos(g.order(), -1);
    for (std::size_t i = 0; i < h_elems.size(); ++i) pos[h_elems[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < h_elems.size(); ++i)
        for (std::size_t j = 0; j < h_elems.size(); ++j)
            if (h_elems[m.group().op(static_cast<int>(i), static_cast<int>(j))] !=
                g.op(h_elems[i], h_elems[j]))
                throw invariant_error("subgroup labeling does not match the module group");

    std::vector<int> reps = g.coset_representatives(h_elems);
    const int t = static_cast<int>(reps.size());
    const int s = m.rank();
    const int rank = t * s;

    std::vector<IntMatrix> action(g.order());
    for (int x = 0; x < g.order(); ++x) {
        IntMatrix a(rank, rank);
        for (int c = 0; c < t; ++c) {
            int y = g.op(x, reps[c]);
            // find target coset and the H-twist
            int tc = -1, h = -1;
            for (int c2 = 0; c2 < t; ++c2) {
                int cand = g.op(g.inverse(reps[c2]), y);
                if (pos[cand] >= 0) {
                    tc = c2;
                    h = pos[cand];
                    break;
                }
            }
            if (tc < 0) throw invariant_error("coset decomposition failed");
            a.add_block(tc * s, c * s, m.action(h));
        }
        action[x] = a;
    }
    IntMatrix rels(rank, 0);
    if (!m.is_lattice()) {
        std::vector<IntMatrix> blocks(t, m.relations());
        rels = IntMatrix::block_diag(blocks);
    }
    return GaloisModule(g, rank, rels, std::move(action));
}

GaloisModule GaloisModule::permutation_module(const FiniteGroup& g,
                                              const std::vector<int>& h_elems) {
    FiniteGroup h = g.subgroup_group(h_elems);
    return induced_module(g, h_elems, trivial_lattice(h, 1));
}

GaloisModule GaloisModule::zero_module(const FiniteGroup& g) {
    return trivial_lattice(g, 0);
}

GaloisModule GaloisModule::cyclic_module(const FiniteGroup& g, const mpz_class& n) {
    return reduction_mod(trivial_lattice(g, 1), n);
}

GaloisModule GaloisModule::dual() const {
    if (!is_lattice())
        throw invariant_error("dual is only defined for lattices here");
    std::vector<IntMatrix> action(group_.order());
    for (int x = 0; x < group_.order(); ++x)
        action[x] = action_[group_.inverse(x)].transpose();
    return GaloisModule(group_, rank_, IntMatrix(rank_, 0), std::move(action));
}

GaloisModule GaloisModule::direct_sum(const GaloisModule& o) const {
    if (!group_.same_table(o.group_))
        throw invariant_error("direct sum requires the same group");
    std::vector<IntMatrix> action(group_.order());
    for (int x = 0; x < group_.order(); ++x)
        action[x] = IntMatrix::block_diag({action_[x], o.action_[x]});
    IntMatrix rels(rank_ + o.rank_, relations_.cols() + o.relations_.cols());
    rels.add_block(0, 0, relations_);
    rels.add_block(rank_, relations_.cols(), o.relations_);
    return GaloisModule(group_, rank_ + o.rank_, rels, std::move(action));
}

FgAbGroup GaloisModule::underlying_group() const {
    if (is_lattice()) return FgAbGroup::free(rank_);
    return cokernel(relations_);
}

GaloisModule::FixedPoints GaloisModule::fixed_points() const {
    const int n = group_.order();
    IntMatrix id = IntMatrix::identity(rank_);
    IntMatrix stacked(0, 0);
    for (int x = 0; x < n; ++x) {
        if (x == group_.identity()) continue;
        stacked = IntMatrix::vstack(stacked, action_[x] - id);
    }
    if (stacked.rows() == 0) stacked = IntMatrix(0, rank_);

    IntMatrix gens;
    if (is_lattice()) {
        gens = kernel_basis(stacked);
        return FixedPoints{gens, FgAbGroup::free(gens.cols())};
    }
    // (g-1)x must land in the relation lattice for every g.
    std::vector<IntMatrix> rel_blocks(n - 1 > 0 ? n - 1 : 0, relations_);
    IntMatrix big_rel = IntMatrix::block_diag(rel_blocks);
    if (stacked.rows() == 0) big_rel = IntMatrix(0, 0);
    gens = preimage_kernel_gens(stacked, big_rel);
    LatticeQuotient q(gens, relations_, rank_);
    return FixedPoints{gens, q.group()};
}

bool GaloisModule::acts_trivially(const std::vector<int>& elems) const {
    IntMatrix id = IntMatrix::identity(rank_);
    std::optional<ColumnSolver> rel;
    if (!is_lattice()) rel.emplace(relations_);
    for (int x : elems) {
        if (x < 0 || x >= group_.order()) throw invariant_error("element index out of range");
        if (is_lattice()) {
            if (!(action_[x] == id)) return false;
        } else if (!rel->contains_all_columns(action_[x] - id)) {
            return false;
        }
    }
    return true;
}

TwoTermComplex make_complex(GaloisModule m_minus1, GaloisModule m_zero,
                            IntMatrix differential) {
    if (!m_minus1.group().same_table(m_zero.group()))
        throw invariant_error("complex terms live over different groups");
    if (differential.rows() != m_zero.rank() || differential.cols() != m_minus1.rank())
        throw invariant_error("differential shape mismatch");

    std::optional<ColumnSolver> rel;
    if (!m_zero.is_lattice()) rel.emplace(m_zero.relations());
    auto congruent_zero = [&](const IntMatrix& a) {
        if (m_zero.is_lattice()) return a.is_zero();
        return rel->contains_all_columns(a);
    };
    for (int g = 0; g < m_minus1.group().order(); ++g) {
        IntMatrix lhs = m_zero.action(g) * differential;
        IntMatrix rhs = differential * m_minus1.action(g);
        if (!congruent_zero(lhs - rhs)) {
            std::ostringstream os;
            os << "differential is not equivariant at element " << g;
            throw invariant_error(os.str());
        }
    }
    if (!m_minus1.is_lattice()) {
        // d must send the relations of the source into those of the target.
        if (!congruent_zero(differential * m_minus1.relations()))
            throw invariant_error("differential does not preserve relations");
    }
    return TwoTermComplex{std::move(m_minus1), std::move(m_zero), std::move(differential)};
}

}  // namespace asa
