#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

namespace asa {

// Dense matrix over Z with arbitrary-precision entries, row-major storage.
// All arithmetic is exact; there is no floating point anywhere below.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

    // Row-major literal, e.g. IntMatrix::from({{2,4},{6,8}}).
    static IntMatrix from(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix identity(int n);
    static IntMatrix zero(int rows, int cols) { return IntMatrix(rows, cols); }
    static IntMatrix column(const std::vector<mpz_class>& v);
    static IntMatrix diagonal(const std::vector<mpz_class>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    mpz_class& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const mpz_class& at(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }

    bool is_zero() const;
    bool operator==(const IntMatrix& o) const = default;

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix transpose() const;
    IntMatrix negated() const;

    void add_block(int row0, int col0, const IntMatrix& b, const mpz_class& scale = 1);
    IntMatrix sub_columns(int first, int count) const;
    IntMatrix sub_rows(int first, int count) const;

    std::vector<mpz_class> column_vec(int j) const;
    std::vector<mpz_class> apply(const std::vector<mpz_class>& v) const;  // this * v

    static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
    static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
    static IntMatrix block_diag(const std::vector<IntMatrix>& blocks);

    // Exact determinant (square only), Bareiss fraction-free elimination.
    mpz_class det() const;

    void swap_rows(int a, int b);
    void swap_cols(int a, int b);
    // row[a] += k * row[b], col[a] += k * col[b]
    void add_row(int a, int b, const mpz_class& k);
    void add_col(int a, int b, const mpz_class& k);
    void negate_row(int a);
    void negate_col(int a);

    std::string to_string() const;

private:
    int rows_, cols_;
    std::vector<mpz_class> data_;
};

}  // namespace asa
