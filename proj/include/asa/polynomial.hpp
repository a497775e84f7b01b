#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace asa {

// Integer polynomial, coefficients ascending (c[0] is the constant term).
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

    static IntPoly from_coeffs(std::vector<mpz_class> ascending);
    // "x", "x^2+1", "2x^3-x+7", "cyclo:12", or a comma list "1,0,1" (ascending).
    static IntPoly parse(const std::string& text);
    static IntPoly cyclotomic(int m);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    const mpz_class& coeff(int i) const { return c_[i]; }

    IntPoly derivative() const;
    bool is_squarefree() const;  // gcd(f, f') has degree 0
    std::string to_string() const;

    bool operator==(const IntPoly& o) const = default;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<mpz_class> c_;
};

IntPoly poly_gcd(IntPoly a, IntPoly b);

}  // namespace asa
