#pragma once

#include <optional>
#include <vector>

#include "asa/fg_ab_group.hpp"
#include "asa/int_matrix.hpp"

namespace asa {

// Smith decomposition U * A * V = D with U, V unimodular and the diagonal of D
// a nonnegative divisibility chain d1 | d2 | ... (zeros last).
struct SnfDecomposition {
    IntMatrix u, d, v;
};

SnfDecomposition smith_normal_form(const IntMatrix& a);

// Same reduction with selectable transform tracking; uinv is maintained by
// applying the inverse elementary operations, no matrix inversion happens.
struct SnfTransforms {
    IntMatrix d;
    IntMatrix u, uinv, v;
    std::vector<mpz_class> diag;  // length min(m,n)
    int rank = 0;                 // nonzero diagonal entries
};

SnfTransforms snf_with(const IntMatrix& a, bool want_u, bool want_uinv, bool want_v);

// Z^rows / image(A), canonical form.
FgAbGroup cokernel(const IntMatrix& a);

// Columns form a Z-basis of { x : A x = 0 }.
IntMatrix kernel_basis(const IntMatrix& a);

// Basis of the lattice generated by the columns of A.
IntMatrix column_span_basis(const IntMatrix& a);

// Reusable exact solver for B * X = C over Z (column by column).
class ColumnSolver {
public:
    explicit ColumnSolver(const IntMatrix& b);
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::optional<std::vector<mpz_class>> solve(const std::vector<mpz_class>& c) const;
    std::optional<IntMatrix> solve(const IntMatrix& c) const;
    bool contains(const std::vector<mpz_class>& c) const;
    bool contains_all_columns(const IntMatrix& c) const;

private:
    int rows_, cols_;
    SnfTransforms t_;
};

std::optional<IntMatrix> solve_columns(const IntMatrix& b, const IntMatrix& c);

// Quotient span(num_gens) / span(den_gens) inside Z^ambient, with explicit
// generator representatives and coordinate maps. Requires den inside num.
class LatticeQuotient {
public:
    LatticeQuotient(const IntMatrix& num_gens, const IntMatrix& den_gens, int ambient);

    const FgAbGroup& group() const { return group_; }
    int coordinate_count() const { return basis_.cols(); }
    // Order of coordinate generator i; 0 means infinite.
    const std::vector<mpz_class>& orders() const { return orders_; }
    std::vector<mpz_class> representative(int i) const;
    // Coordinates of the class of z, reduced into [0, order_i).
    std::vector<mpz_class> coords(const std::vector<mpz_class>& z) const;
    bool is_zero_class(const std::vector<mpz_class>& z) const;

private:
    int ambient_;
    IntMatrix basis_;  // ambient x s
    std::optional<ColumnSolver> basis_solver_;
    IntMatrix u2_, u2inv_;
    std::vector<mpz_class> orders_;
    FgAbGroup group_;
};

// Homology ker(d_out)/im(d_in) of Z^k --d_in--> Z^n --d_out--> Z^m.
// Throws when d_out * d_in != 0.
FgAbGroup subquotient(const IntMatrix& d_in, const IntMatrix& d_out);

// Generators of { x : d x in span(rel) }; a kernel basis when rel is empty.
IntMatrix preimage_kernel_gens(const IntMatrix& d, const IntMatrix& rel);

}  // namespace asa
