#pragma once

#include <string>
#include <vector>

#include "asa/fg_ab_group.hpp"

namespace asa {

struct GroupQuotient;

// Finite group as an explicit multiplication table over element indices.
// Construction validates the full group law and reports which axiom failed.
class FiniteGroup {
public:
    static FiniteGroup from_table(const std::vector<std::vector<int>>& table,
                                  std::string name = "");
    static FiniteGroup trivial();
    static FiniteGroup cyclic(int n);
    static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
    static FiniteGroup symmetric3();
    // "c1" | "1" | "cN" | "c2xc2" | products like "c2xc3" | "klein" | "s3"
    static FiniteGroup parse(const std::string& token);

    int order() const { return order_; }
    int identity() const { return identity_; }
    int op(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
    int inverse(int a) const { return inverse_[a]; }
    const std::string& name() const { return name_; }

    int element_order(int a) const;
    std::vector<int> element_order_multiset() const;  // sorted
    bool is_abelian() const;
    bool is_cyclic() const;
    int find_generator() const;  // cyclic groups only

    bool is_subgroup(const std::vector<int>& elems) const;
    bool is_normal(const std::vector<int>& elems) const;
    // Left coset representatives of H, identity coset first, deterministic order.
    std::vector<int> coset_representatives(const std::vector<int>& subgroup) const;
    // Subgroup as an abstract group; elems[i] is abstract element i.
    FiniteGroup subgroup_group(const std::vector<int>& elems) const;

    GroupQuotient quotient_by(const std::vector<int>& normal_subgroup) const;

    // Elements generated by a set (identity always included).
    std::vector<int> generated_subgroup(const std::vector<int>& gens) const;
    // Squares and commutators; the quotient by it is the largest elementary
    // abelian 2-quotient.
    std::vector<int> squares_commutators_subgroup() const;
    // A surjection onto C2 as a 0/1 parity vector, if one exists.
    std::vector<int> find_parity() const;

    FgAbGroup abelian_invariants() const;  // abelian groups only

    bool same_table(const FiniteGroup& o) const {
        return order_ == o.order_ && table_ == o.table_;
    }
    const std::vector<int>& raw_table() const { return table_; }

private:
    FiniteGroup(int order, std::vector<int> table, int identity, std::string name);

    int order_;
    std::vector<int> table_;
    int identity_;
    std::vector<int> inverse_;
    std::string name_;
};

struct GroupQuotient {
    FiniteGroup group;
    std::vector<int> projection;  // G index -> quotient index
};

}  // namespace asa
