#include "asa/int_matrix.hpp"

#include <sstream>

#include "asa/errors.hpp"

namespace asa {

IntMatrix IntMatrix::from(std::initializer_list<std::initializer_list<long>> rows) {
    int m = static_cast<int>(rows.size());
    int n = m == 0 ? 0 : static_cast<int>(rows.begin()->size());
    IntMatrix a(m, n);
    int i = 0;
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n)
            throw invariant_error("ragged matrix literal");
        int j = 0;
        for (long v : r) a.at(i, j++) = v;
        ++i;
    }
    return a;
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix a(n, n);
    for (int i = 0; i < n; ++i) a.at(i, i) = 1;
    return a;
}

IntMatrix IntMatrix::column(const std::vector<mpz_class>& v) {
    IntMatrix a(static_cast<int>(v.size()), 1);
    for (int i = 0; i < a.rows(); ++i) a.at(i, 0) = v[i];
    return a;
}

IntMatrix IntMatrix::diagonal(const std::vector<mpz_class>& d) {
    int n = static_cast<int>(d.size());
    IntMatrix a(n, n);
    for (int i = 0; i < n; ++i) a.at(i, i) = d[i];
    return a;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw invariant_error("matrix product shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const mpz_class& aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const mpz_class& bkj = o.at(k, j);
                if (bkj != 0) r.at(i, j) += aik * bkj;
            }
        }
    }
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw invariant_error("matrix sum shape mismatch");
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw invariant_error("matrix diff shape mismatch");
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
    return r;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

IntMatrix IntMatrix::negated() const {
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = -data_[i];
    return r;
}

void IntMatrix::add_block(int row0, int col0, const IntMatrix& b, const mpz_class& scale) {
    if (row0 + b.rows_ > rows_ || col0 + b.cols_ > cols_)
        throw invariant_error("add_block out of range");
    for (int i = 0; i < b.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j)
            if (b.at(i, j) != 0) at(row0 + i, col0 + j) += scale * b.at(i, j);
}

IntMatrix IntMatrix::sub_columns(int first, int count) const {
    IntMatrix r(rows_, count);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < count; ++j) r.at(i, j) = at(i, first + j);
    return r;
}

IntMatrix IntMatrix::sub_rows(int first, int count) const {
    IntMatrix r(count, cols_);
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(first + i, j);
    return r;
}

std::vector<mpz_class> IntMatrix::column_vec(int j) const {
    std::vector<mpz_class> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

std::vector<mpz_class> IntMatrix::apply(const std::vector<mpz_class>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw invariant_error("apply shape mismatch");
    std::vector<mpz_class> r(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
    return r;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ == 0 && a.rows_ == 0) return b;
    if (b.cols_ == 0 && b.rows_ == 0) return a;
    if (a.rows_ != b.rows_) throw invariant_error("hstack row mismatch");
    IntMatrix r(a.rows_, a.cols_ + b.cols_);
    r.add_block(0, 0, a);
    r.add_block(0, a.cols_, b);
    return r;
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ == 0 && a.rows_ == 0) return b;
    if (b.cols_ == 0 && b.rows_ == 0) return a;
    if (a.cols_ != b.cols_) throw invariant_error("vstack col mismatch");
    IntMatrix r(a.rows_ + b.rows_, a.cols_);
    r.add_block(0, 0, a);
    r.add_block(a.rows_, 0, b);
    return r;
}

IntMatrix IntMatrix::block_diag(const std::vector<IntMatrix>& blocks) {
    int m = 0, n = 0;
    for (const auto& b : blocks) {
        m += b.rows();
        n += b.cols();
    }
    IntMatrix r(m, n);
    int i = 0, j = 0;
    for (const auto& b : blocks) {
        r.add_block(i, j, b);
        i += b.rows();
        j += b.cols();
    }
    return r;
}

mpz_class IntMatrix::det() const {
    if (rows_ != cols_) throw invariant_error("det of non-square matrix");
    int n = rows_;
    if (n == 0) return 1;
    IntMatrix a = *this;
    mpz_class sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            a.swap_rows(k, piv);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                mpz_class num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

void IntMatrix::swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

void IntMatrix::swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
}

void IntMatrix::add_row(int a, int b, const mpz_class& k) {
    if (k == 0) return;
    for (int j = 0; j < cols_; ++j)
        if (at(b, j) != 0) at(a, j) += k * at(b, j);
}

void IntMatrix::add_col(int a, int b, const mpz_class& k) {
    if (k == 0) return;
    for (int i = 0; i < rows_; ++i)
        if (at(i, b) != 0) at(i, a) += k * at(i, b);
}

void IntMatrix::negate_row(int a) {
    for (int j = 0; j < cols_; ++j) at(a, j) = -at(a, j);
}

void IntMatrix::negate_col(int a) {
    for (int i = 0; i < rows_; ++i) at(i, a) = -at(i, a);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).get_str();
    }
    os << "]";
    return os.str();
}

}  // namespace asa
