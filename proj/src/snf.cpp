#include "asa/snf.hpp"

#include "asa/errors.hpp"

namespace asa {

namespace {

// Locates the entry of smallest nonzero absolute value in the trailing
// submatrix; bails out as soon as a unit pivot shows up.
bool find_pivot(const IntMatrix& d, int t, int& pi, int& pj) {
    bool found = false;
    mpz_class best;
    for (int i = t; i < d.rows(); ++i) {
        for (int j = t; j < d.cols(); ++j) {
            const mpz_class& x = d.at(i, j);
            if (x == 0) continue;
            mpz_class a = abs(x);
            if (a == 1) {
                pi = i;
                pj = j;
                return true;
            }
            if (!found || a < best) {
                best = a;
                pi = i;
                pj = j;
                found = true;
            }
        }
    }
    return found;
}

bool row_col_clear(const IntMatrix& d, int t) {
    for (int i = t + 1; i < d.rows(); ++i)
        if (d.at(i, t) != 0) return false;
    for (int j = t + 1; j < d.cols(); ++j)
        if (d.at(t, j) != 0) return false;
    return true;
}

}  // namespace

SnfTransforms snf_with(const IntMatrix& a, bool want_u, bool want_uinv, bool want_v) {
    SnfTransforms r;
    r.d = a;
    const int m = a.rows(), n = a.cols();
    if (want_u) r.u = IntMatrix::identity(m);
    if (want_uinv) r.uinv = IntMatrix::identity(m);
    if (want_v) r.v = IntMatrix::identity(n);
    IntMatrix& d = r.d;

    const int steps = std::min(m, n);
    for (int t = 0; t < steps; ++t) {
        int pi, pj;
        if (!find_pivot(d, t, pi, pj)) break;  // trailing block is zero
        d.swap_rows(t, pi);
        if (want_u) r.u.swap_rows(t, pi);
        if (want_uinv) r.uinv.swap_cols(t, pi);
        d.swap_cols(t, pj);
        if (want_v) r.v.swap_cols(t, pj);

        for (;;) {
            // Clear the pivot column.
            for (int i = t + 1; i < m; ++i) {
                if (d.at(i, t) == 0) continue;
                mpz_class q = d.at(i, t) / d.at(t, t);  // truncated: |rem| < |pivot|
                if (q != 0) {
                    d.add_row(i, t, -q);
                    if (want_u) r.u.add_row(i, t, -q);
                    if (want_uinv) r.uinv.add_col(t, i, q);
                }
            }
            // Clear the pivot row.
            for (int j = t + 1; j < n; ++j) {
                if (d.at(t, j) == 0) continue;
                mpz_class q = d.at(t, j) / d.at(t, t);
                if (q != 0) {
                    d.add_col(j, t, -q);
                    if (want_v) r.v.add_col(j, t, -q);
                }
            }
            if (!row_col_clear(d, t)) {
                // Nonzero remainders left; a strictly smaller pivot exists.
                if (!find_pivot(d, t, pi, pj)) break;
                d.swap_rows(t, pi);
                if (want_u) r.u.swap_rows(t, pi);
                if (want_uinv) r.uinv.swap_cols(t, pi);
                d.swap_cols(t, pj);
                if (want_v) r.v.swap_cols(t, pj);
                continue;
            }
            // Lone pivot: enforce divisibility of the trailing block.
            mpz_class piv = abs(d.at(t, t));
            if (piv != 1) {
                int bi = -1, bj = -1;
                for (int i = t + 1; i < m && bi < 0; ++i)
                    for (int j = t + 1; j < n; ++j)
                        if (d.at(i, j) % piv != 0) {
                            bi = i;
                            bj = j;
                            break;
                        }
                if (bi >= 0) {
                    d.add_row(t, bi, 1);
                    if (want_u) r.u.add_row(t, bi, 1);
                    if (want_uinv) r.uinv.add_col(bi, t, mpz_class(-1));
                    (void)bj;
                    continue;
                }
            }
            break;
        }
        if (d.at(t, t) < 0) {
            d.negate_row(t);
            if (want_u) r.u.negate_row(t);
            if (want_uinv) r.uinv.negate_col(t);
        }
    }

    r.diag.resize(steps);
    for (int i = 0; i < steps; ++i) {
        r.diag[i] = d.at(i, i);
        if (r.diag[i] != 0) r.rank = i + 1;
    }
    return r;
}

SnfDecomposition smith_normal_form(const IntMatrix& a) {
    SnfTransforms t = snf_with(a, true, false, true);
    return SnfDecomposition{std::move(t.u), std::move(t.d), std::move(t.v)};
}

FgAbGroup cokernel(const IntMatrix& a) {
    SnfTransforms t = snf_with(a, false, false, false);
    int extra_free = a.rows() - static_cast<int>(t.diag.size());
    return FgAbGroup::from_diagonal(t.diag, extra_free);
}

IntMatrix kernel_basis(const IntMatrix& a) {
    SnfTransforms t = snf_with(a, false, false, true);
    return t.v.sub_columns(t.rank, a.cols() - t.rank);
}

IntMatrix column_span_basis(const IntMatrix& a) {
    SnfTransforms t = snf_with(a, false, true, false);
    IntMatrix basis(a.rows(), t.rank);
    for (int j = 0; j < t.rank; ++j)
        for (int i = 0; i < a.rows(); ++i) basis.at(i, j) = t.uinv.at(i, j) * t.diag[j];
    return basis;
}

ColumnSolver::ColumnSolver(const IntMatrix& b)
    : rows_(b.rows()), cols_(b.cols()), t_(snf_with(b, true, false, true)) {}

std::optional<std::vector<mpz_class>> ColumnSolver::solve(const std::vector<mpz_class>& c) const {
    std::vector<mpz_class> uc = t_.u.apply(c);
    std::vector<mpz_class> w(cols_, 0);
    for (int i = 0; i < rows_; ++i) {
        if (i < t_.rank) {
            if (!mpz_divisible_p(uc[i].get_mpz_t(), t_.diag[i].get_mpz_t())) return std::nullopt;
            w[i] = uc[i] / t_.diag[i];
        } else if (uc[i] != 0) {
            return std::nullopt;
        }
    }
    return t_.v.apply(w);
}

std::optional<IntMatrix> ColumnSolver::solve(const IntMatrix& c) const {
    if (c.rows() != rows_) throw invariant_error("solve shape mismatch");
    IntMatrix x(cols_, c.cols());
    for (int j = 0; j < c.cols(); ++j) {
        auto col = solve(c.column_vec(j));
        if (!col) return std::nullopt;
        for (int i = 0; i < cols_; ++i) x.at(i, j) = (*col)[i];
    }
    return x;
}

bool ColumnSolver::contains(const std::vector<mpz_class>& c) const {
    std::vector<mpz_class> uc = t_.u.apply(c);
    for (int i = 0; i < rows_; ++i) {
        if (i < t_.rank) {
            if (!mpz_divisible_p(uc[i].get_mpz_t(), t_.diag[i].get_mpz_t())) return false;
        } else if (uc[i] != 0) {
            return false;
        }
    }
    return true;
}

bool ColumnSolver::contains_all_columns(const IntMatrix& c) const {
    for (int j = 0; j < c.cols(); ++j)
        if (!contains(c.column_vec(j))) return false;
    return true;
}

std::optional<IntMatrix> solve_columns(const IntMatrix& b, const IntMatrix& c) {
    return ColumnSolver(b).solve(c);
}

LatticeQuotient::LatticeQuotient(const IntMatrix& num_gens, const IntMatrix& den_gens,
                                 int ambient)
    : ambient_(ambient) {
    if ((num_gens.cols() > 0 && num_gens.rows() != ambient) ||
        (den_gens.cols() > 0 && den_gens.rows() != ambient))
        throw invariant_error("lattice quotient: ambient dimension mismatch");

    IntMatrix num = num_gens.cols() > 0 ? num_gens : IntMatrix(ambient, 0);
    basis_ = column_span_basis(num);
    basis_solver_.emplace(basis_);

    IntMatrix den = den_gens.cols() > 0 ? den_gens : IntMatrix(ambient, 0);
    auto x = basis_solver_->solve(den);
    if (!x) throw invariant_error("lattice quotient: denominator not inside numerator");

    SnfTransforms t = snf_with(*x, true, true, false);
    u2_ = std::move(t.u);
    u2inv_ = std::move(t.uinv);
    const int s = basis_.cols();
    orders_.assign(s, 0);
    for (int i = 0; i < static_cast<int>(t.diag.size()); ++i) orders_[i] = t.diag[i];
    group_ = FgAbGroup::from_diagonal(orders_);
}

std::vector<mpz_class> LatticeQuotient::representative(int i) const {
    std::vector<mpz_class> rep(ambient_, 0);
    for (int r = 0; r < ambient_; ++r)
        for (int k = 0; k < basis_.cols(); ++k)
            if (basis_.at(r, k) != 0 && u2inv_.at(k, i) != 0)
                rep[r] += basis_.at(r, k) * u2inv_.at(k, i);
    return rep;
}

std::vector<mpz_class> LatticeQuotient::coords(const std::vector<mpz_class>& z) const {
    auto y = basis_solver_->solve(z);
    if (!y) throw invariant_error("lattice quotient: element outside numerator lattice");
    std::vector<mpz_class> c = u2_.apply(*y);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (orders_[i] != 0) mpz_fdiv_r(c[i].get_mpz_t(), c[i].get_mpz_t(), orders_[i].get_mpz_t());
    return c;
}

bool LatticeQuotient::is_zero_class(const std::vector<mpz_class>& z) const {
    for (const auto& c : coords(z))
        if (c != 0) return false;
    return true;
}

FgAbGroup subquotient(const IntMatrix& d_in, const IntMatrix& d_out) {
    const int ambient = d_out.cols() > 0 ? d_out.cols() : d_in.rows();
    if (d_in.cols() > 0 && d_in.rows() != ambient)
        throw invariant_error("subquotient: ambient dimension mismatch");
    if (d_out.cols() > 0 && d_in.cols() > 0 && !(d_out * d_in).is_zero())
        throw invariant_error("subquotient: composite d_out*d_in is nonzero");
    IntMatrix z = d_out.rows() > 0 && d_out.cols() > 0 ? kernel_basis(d_out)
                                                       : IntMatrix::identity(ambient);
    return LatticeQuotient(z, d_in, ambient).group();
}

IntMatrix preimage_kernel_gens(const IntMatrix& d, const IntMatrix& rel) {
    if (rel.cols() == 0) return kernel_basis(d);
    IntMatrix k = kernel_basis(IntMatrix::hstack(d, rel));
    return k.sub_rows(0, d.cols());
}

}  // namespace asa
