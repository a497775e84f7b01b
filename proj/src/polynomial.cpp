#include "asa/polynomial.hpp"

#include <cctype>
#include <sstream>

#include "asa/errors.hpp"

namespace asa {

namespace {

mpz_class content(const IntPoly& f) {
    mpz_class g = 0;
    for (const auto& c : f.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

IntPoly primitive_part(const IntPoly& f) {
    if (f.is_zero()) return f;
    mpz_class g = content(f);
    if (f.coeffs().back() < 0) g = -g;
    std::vector<mpz_class> c = f.coeffs();
    for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(c));
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, exact over Z.
IntPoly pseudo_rem(IntPoly a, const IntPoly& b) {
    const mpz_class lc = b.coeffs().back();
    std::vector<mpz_class> r = a.coeffs();
    int db = b.degree();
    while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
        mpz_class top = r.back();
        for (auto& x : r) x *= lc;
        int shift = static_cast<int>(r.size()) - 1 - db;
        for (int i = 0; i <= db; ++i) r[shift + i] -= top * b.coeff(i);
        while (!r.empty() && r.back() == 0) r.pop_back();
    }
    return IntPoly(std::move(r));
}

// Exact polynomial division, used for cyclotomic construction.
IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
    std::vector<mpz_class> r = a.coeffs();
    int db = b.degree();
    std::vector<mpz_class> q(a.degree() - db + 1, 0);
    for (int i = a.degree() - db; i >= 0; --i) {
        mpz_class t;
        mpz_divexact(t.get_mpz_t(), r[i + db].get_mpz_t(), b.coeffs().back().get_mpz_t());
        q[i] = t;
        for (int j = 0; j <= db; ++j) r[i + j] -= t * b.coeff(j);
    }
    for (const auto& x : r)
        if (x != 0) throw invariant_error("polynomial division is not exact");
    return IntPoly(std::move(q));
}

}  // namespace

IntPoly IntPoly::from_coeffs(std::vector<mpz_class> ascending) {
    return IntPoly(std::move(ascending));
}

IntPoly IntPoly::derivative() const {
    std::vector<mpz_class> d;
    for (int i = 1; i <= degree(); ++i) d.push_back(c_[i] * i);
    return IntPoly(std::move(d));
}

IntPoly poly_gcd(IntPoly a, IntPoly b) {
    if (a.is_zero()) return primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    mpz_class cont;
    mpz_gcd(cont.get_mpz_t(), content(a).get_mpz_t(), content(b).get_mpz_t());
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = primitive_part(pseudo_rem(a, b));
        a = b;
        b = r;
    }
    std::vector<mpz_class> c = a.coeffs();
    for (auto& x : c) x *= cont;
    return IntPoly(std::move(c));
}

bool IntPoly::is_squarefree() const {
    if (degree() <= 1) return !is_zero();
    return poly_gcd(*this, derivative()).degree() == 0;
}

IntPoly IntPoly::cyclotomic(int m) {
    if (m < 1) throw parse_error("cyclotomic index must be >= 1");
    // x^d - 1 divided by all lower cyclotomic factors, for d | m ascending.
    std::vector<int> divisors;
    for (int d = 1; d <= m; ++d)
        if (m % d == 0) divisors.push_back(d);
    std::vector<IntPoly> phi(divisors.size());
    for (std::size_t k = 0; k < divisors.size(); ++k) {
        int d = divisors[k];
        std::vector<mpz_class> xd(d + 1, 0);
        xd[0] = -1;
        xd[d] = 1;
        IntPoly f(std::move(xd));
        for (std::size_t j = 0; j < k; ++j)
            if (d % divisors[j] == 0) f = exact_div(f, phi[j]);
        phi[k] = std::move(f);
    }
    return phi.back();
}

IntPoly IntPoly::parse(const std::string& text) {
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) throw parse_error("empty polynomial");

    if (t.rfind("cyclo:", 0) == 0) {
        int m = 0;
        try {
            m = std::stoi(t.substr(6));
        } catch (...) {
            throw parse_error("bad cyclotomic index in '" + text + "'");
        }
        return cyclotomic(m);
    }
    if (t.find(',') != std::string::npos) {
        std::vector<mpz_class> coeffs;
        std::stringstream ss(t);
        std::string piece;
        while (std::getline(ss, piece, ',')) {
            try {
                coeffs.emplace_back(piece);
            } catch (...) {
                throw parse_error("bad coefficient '" + piece + "'");
            }
        }
        return IntPoly(std::move(coeffs));
    }

    // Sum of terms  [+-] [coef] [x [^exp]]
    std::vector<mpz_class> coeffs;
    auto bump = [&](int e, const mpz_class& v) {
        if (static_cast<int>(coeffs.size()) <= e) coeffs.resize(e + 1, 0);
        coeffs[e] += v;
    };
    std::size_t i = 0;
    while (i < t.size()) {
        int sign = 1;
        if (t[i] == '+' || t[i] == '-') {
            if (t[i] == '-') sign = -1;
            ++i;
        }
        std::string num;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) num += t[i++];
        mpz_class coef = num.empty() ? mpz_class(1) : mpz_class(num);
        coef *= sign;
        if (i < t.size() && t[i] == '*') ++i;  // tolerate 2*x
        int exp = 0;
        if (i < t.size() && (t[i] == 'x' || t[i] == 'X')) {
            ++i;
            exp = 1;
            if (i < t.size() && t[i] == '^') {
                ++i;
                std::string es;
                while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) es += t[i++];
                if (es.empty()) throw parse_error("missing exponent in '" + text + "'");
                exp = std::stoi(es);
            }
        } else if (num.empty()) {
            throw parse_error("cannot parse polynomial '" + text + "'");
        }
        bump(exp, coef);
    }
    return IntPoly(std::move(coeffs));
}

std::string IntPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& c = c_[i];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        if (first && c < 0) os << "-";
        mpz_class a = abs(c);
        if (a != 1 || i == 0) os << a.get_str();
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

}  // namespace asa
