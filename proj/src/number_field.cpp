#include "asa/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "asa/errors.hpp"
#include "asa/int_matrix.hpp"
#include "asa/snf.hpp"

namespace asa {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// ---- dense polynomials over F_p, coefficients ascending ----

using PolyP = std::vector<u64>;

void trim(PolyP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const PolyP& f) {
    return static_cast<int>(f.size()) - 1;
}

PolyP poly_mod(const IntPoly& f, u64 p) {
    PolyP r(f.coeffs().size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        mpz_class c = f.coeffs()[i] % static_cast<long>(p);
        if (c < 0) c += static_cast<long>(p);
        r[i] = c.get_ui();
    }
    trim(r);
    return r;
}

PolyP mul(const PolyP& a, const PolyP& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    PolyP r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j]) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    trim(r);
    return r;
}

PolyP rem(PolyP a, const PolyP& b, u64 p) {
    const int db = deg(b);
    const u64 inv_lead = powmod(b.back(), p - 2, p);
    while (deg(a) >= db) {
        u64 t = mulmod(a.back(), inv_lead, p);
        int shift = deg(a) - db;
        for (int i = 0; i <= db; ++i) {
            u64 sub = mulmod(t, b[i], p);
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

PolyP gcd(PolyP a, PolyP b, u64 p) {
    while (!b.empty()) {
        PolyP r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        u64 inv = powmod(a.back(), p - 2, p);
        for (auto& c : a) c = mulmod(c, inv, p);
    }
    return a;
}

PolyP derivative(const PolyP& f, u64 p) {
    PolyP d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(mulmod(f[i], i % p, p));
    trim(d);
    return d;
}

PolyP exact_div(const PolyP& a, const PolyP& b, u64 p) {
    PolyP r = a;
    const int db = deg(b);
    const u64 inv_lead = powmod(b.back(), p - 2, p);
    PolyP q(deg(a) - db + 1, 0);
    for (int i = deg(a) - db; i >= 0; --i) {
        if (static_cast<int>(r.size()) - 1 < db + i) continue;
        u64 t = mulmod(r[db + i], inv_lead, p);
        q[i] = t;
        for (int j = 0; j <= db; ++j) {
            u64 sub = mulmod(t, b[j], p);
            r[i + j] = (r[i + j] + p - sub) % p;
        }
        trim(r);
    }
    return q;
}

PolyP pow_p(const PolyP& base, u64 p, const PolyP& mod) {
    // base^p mod `mod`
    PolyP r = {1};
    PolyP b = rem(base, mod, p);
    u64 e = p;
    while (e) {
        if (e & 1) r = rem(mul(r, b, p), mod, p);
        b = rem(mul(b, b, p), mod, p);
        e >>= 1;
    }
    return r;
}

// Distinct-degree factorization of a monic squarefree polynomial mod p.
std::vector<int> ddf(PolyP g, u64 p) {
    std::vector<int> degrees;
    PolyP h = {0, 1};  // x
    h = rem(h, g, p);
    int d = 0;
    while (deg(g) > 0 && 2 * (d + 1) <= deg(g)) {
        ++d;
        h = pow_p(h, p, g);
        PolyP hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = (hx[1] + p - 1) % p;  // h - x
        trim(hx);
        PolyP t = gcd(g, hx, p);
        if (deg(t) > 0) {
            for (int k = 0; k < deg(t) / d; ++k) degrees.push_back(d);
            g = exact_div(g, t, p);
            h = rem(h, g, p);
        }
    }
    if (deg(g) > 0) degrees.push_back(deg(g));
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<std::uint32_t> primes_up_to(u64 bound) {
    std::vector<std::uint32_t> primes;
    if (bound < 2) return primes;
    std::vector<bool> sieve(bound + 1, true);
    for (u64 i = 2; i * i <= bound; ++i)
        if (sieve[i])
            for (u64 j = i * i; j <= bound; j += i) sieve[j] = false;
    for (u64 i = 2; i <= bound; ++i)
        if (sieve[i]) primes.push_back(static_cast<std::uint32_t>(i));
    return primes;
}

u64 euler_phi(u64 m) {
    u64 result = m;
    for (u64 p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    if (m > 1) result -= result / m;
    return result;
}

NumberFieldSpec NumberFieldSpec::make(IntPoly f, bool asserted_galois) {
    if (f.is_zero() || f.degree() < 1) throw invariant_error("defining polynomial must have degree >= 1");
    if (!f.is_monic()) throw invariant_error("defining polynomial must be monic");
    if (!f.is_squarefree()) throw invariant_error("defining polynomial must be squarefree");
    return NumberFieldSpec{std::move(f), asserted_galois};
}

PlaceSetSpec PlaceSetSpec::split_in_l() {
    PlaceSetSpec s;
    s.kind = PlaceSetKind::SplitInL;
    return s;
}

PlaceSetSpec PlaceSetSpec::all_places() {
    PlaceSetSpec s;
    s.kind = PlaceSetKind::AllPlaces;
    s.symbolic_density = mpq_class(1);
    return s;
}

PlaceSetSpec PlaceSetSpec::congruence(long m, std::set<long> residues) {
    PlaceSetSpec s;
    s.kind = PlaceSetKind::Congruence;
    s.modulus = m;
    for (long a : residues) s.residues.insert(((a % m) + m) % m);
    s.validate();
    s.symbolic_density = mpq_class(static_cast<long>(s.residues.size()),
                                   static_cast<long>(euler_phi(m)));
    s.symbolic_density->canonicalize();
    return s;
}

PlaceSetSpec PlaceSetSpec::frobenius(std::vector<std::vector<int>> patterns) {
    PlaceSetSpec s;
    s.kind = PlaceSetKind::FrobeniusPattern;
    for (auto& p : patterns) std::sort(p.begin(), p.end());
    s.patterns = std::move(patterns);
    s.validate();
    return s;
}

void PlaceSetSpec::validate() const {
    if (kind == PlaceSetKind::Congruence) {
        if (modulus < 1) throw invariant_error("congruence modulus must be >= 1");
        if (residues.empty()) throw invariant_error("unsatisfiable place set: empty residue set");
        for (long a : residues) {
            long r = ((a % modulus) + modulus) % modulus;
            if (std::gcd(r == 0 ? modulus : r, modulus) != 1)
                throw invariant_error("residue " + std::to_string(a) +
                                      " is not a unit mod " + std::to_string(modulus));
        }
    }
    if (kind == PlaceSetKind::FrobeniusPattern && patterns.empty())
        throw invariant_error("unsatisfiable place set: no patterns");
    if (symbolic_density) {
        if (*symbolic_density <= 0 || *symbolic_density > 1)
            throw invariant_error("symbolic density must lie in (0, 1]");
    }
}

std::string PlaceSetSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case PlaceSetKind::SplitInL: os << "split"; break;
        case PlaceSetKind::AllPlaces: os << "all"; break;
        case PlaceSetKind::Congruence: {
            os << "p mod " << modulus << " in {";
            bool first = true;
            for (long a : residues) {
                os << (first ? "" : ",") << a;
                first = false;
            }
            os << "}";
            break;
        }
        case PlaceSetKind::FrobeniusPattern: os << "frobenius-pattern"; break;
    }
    if (!include_archimedean) os << " (finite places only)";
    return os.str();
}

SplittingType factor_degrees_mod_p(const IntPoly& f, u64 p) {
    if (!is_prime_u64(p)) throw invariant_error(std::to_string(p) + " is not prime");
    PolyP fp = poly_mod(f, p);
    if (deg(fp) != f.degree())
        throw invariant_error("polynomial must stay monic mod p");  // monic => unreachable
    SplittingType result;
    PolyP d = derivative(fp, p);
    PolyP g = d.empty() ? fp : gcd(fp, d, p);
    result.ramified = deg(g) > 0;
    PolyP sqfree = result.ramified ? (deg(g) == deg(fp) ? PolyP{1} : exact_div(fp, g, p)) : fp;
    if (deg(sqfree) > 0) result.degrees = ddf(sqfree, p);
    return result;
}

bool is_totally_split(const IntPoly& f, u64 p) {
    SplittingType t = factor_degrees_mod_p(f, p);
    if (t.ramified) return false;
    for (int d : t.degrees)
        if (d != 1) return false;
    return true;
}

namespace {

bool congruence_matches(const PlaceSetSpec& s, u64 p) {
    return s.residues.count(static_cast<long>(p % static_cast<u64>(s.modulus))) > 0;
}

bool place_matches(const PlaceSetSpec& s, const IntPoly& f, u64 p, const SplittingType& t) {
    switch (s.kind) {
        case PlaceSetKind::AllPlaces:
            return true;
        case PlaceSetKind::Congruence:
            return congruence_matches(s, p);
        case PlaceSetKind::SplitInL: {
            if (t.ramified) return false;
            for (int d : t.degrees)
                if (d != 1) return false;
            return true;
        }
        case PlaceSetKind::FrobeniusPattern:
            return !t.ramified &&
                   std::find(s.patterns.begin(), s.patterns.end(), t.degrees) != s.patterns.end();
    }
    (void)f;
    return false;
}

bool needs_splitting(const PlaceSetSpec& s) {
    return s.kind == PlaceSetKind::SplitInL || s.kind == PlaceSetKind::FrobeniusPattern;
}

// Deterministic chunked prime scan. Chunks are fixed-size slices of the prime
// list; per-chunk accumulators merge in chunk order afterwards, so the result
// is independent of the thread count and identical to the serial path.
constexpr std::size_t kChunkPrimes = 512;

template <typename Acc, typename PerPrime>
std::vector<Acc> scan_chunks(const std::vector<std::uint32_t>& primes, PerPrime per_prime,
                             Execution exec) {
    const std::size_t n_chunks = (primes.size() + kChunkPrimes - 1) / kChunkPrimes;
    std::vector<Acc> acc(n_chunks);
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
        for (long c = 0; c < static_cast<long>(n_chunks); ++c) {
            const std::size_t lo = static_cast<std::size_t>(c) * kChunkPrimes;
            const std::size_t hi = std::min(primes.size(), lo + kChunkPrimes);
            for (std::size_t i = lo; i < hi; ++i) per_prime(primes[i], acc[c]);
        }
    } else {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            const std::size_t lo = c * kChunkPrimes;
            const std::size_t hi = std::min(primes.size(), lo + kChunkPrimes);
            for (std::size_t i = lo; i < hi; ++i) per_prime(primes[i], acc[c]);
        }
    }
    return acc;
}

struct DensityAcc {
    u64 total = 0, match = 0;
    double w_all = 0.0, w_match = 0.0;
};

}  // namespace

DensityEstimate density_estimate(const NumberFieldSpec& field, const PlaceSetSpec& places,
                                 u64 bound, DensityMode mode, double s, Execution exec) {
    places.validate();
    if (bound < 100) throw invariant_error("prime bound must be >= 100");
    const IntPoly& f = field.poly;
    const bool want_split = needs_splitting(places);
    std::vector<std::uint32_t> primes = primes_up_to(bound);

    auto per_prime = [&](std::uint32_t p, DensityAcc& a) {
        SplittingType t;
        if (want_split || f.degree() > 1) {
            t = factor_degrees_mod_p(f, p);
            if (t.ramified) return;  // finitely many; excluded from all counts
        }
        double w = std::pow(static_cast<double>(p), -s);
        a.total += 1;
        a.w_all += w;
        if (place_matches(places, f, p, t)) {
            a.match += 1;
            a.w_match += w;
        }
    };
    std::vector<DensityAcc> chunks = scan_chunks<DensityAcc>(primes, per_prime, exec);
    DensityAcc total;
    for (const auto& c : chunks) {
        total.total += c.total;
        total.match += c.match;
        total.w_all += c.w_all;
        total.w_match += c.w_match;
    }

    DensityEstimate est;
    est.prime_bound = bound;
    est.prime_count_total = total.total;
    est.prime_count_matching = total.match;
    est.mode = mode;
    if (mode == DensityMode::Natural) {
        est.value = total.total ? static_cast<double>(total.match) / total.total : 0.0;
    } else {
        est.dirichlet_s = s;
        est.value = total.w_all > 0 ? total.w_match / total.w_all : 0.0;
    }
    est.err = total.total ? 2.0 / std::sqrt(static_cast<double>(total.total)) +
                                1.0 / static_cast<double>(total.total)
                          : 1.0;
    return est;
}

namespace {

struct RelationAcc {
    u64 total = 0;           // unramified primes
    u64 split_match = 0;     // in S and totally split
    u64 place_total = 0;     // places of L with norm <= bound
    u64 place_match = 0;     // those lying over S
};

}  // namespace

DensityRelationReport density_relation_check(const NumberFieldSpec& field_l,
                                             const PlaceSetSpec& places, u64 bound,
                                             Execution exec) {
    places.validate();
    if (!field_l.asserted_galois)
        throw invariant_error("density relation requires a field asserted to be Galois");
    if (places.kind != PlaceSetKind::Congruence && places.kind != PlaceSetKind::AllPlaces)
        throw invariant_error("density relation expects a congruence-style place set");

    const IntPoly& f = field_l.poly;
    std::vector<std::uint32_t> primes = primes_up_to(bound);

    auto per_prime = [&](std::uint32_t p, RelationAcc& a) {
        SplittingType t = factor_degrees_mod_p(f, p);
        if (t.ramified) return;
        bool in_s = places.kind == PlaceSetKind::AllPlaces || congruence_matches(places, p);
        bool split = true;
        for (int d : t.degrees)
            if (d != 1) split = false;
        a.total += 1;
        if (in_s && split) a.split_match += 1;
        for (int d : t.degrees) {
            // place of norm p^d counts when p^d <= bound, exact arithmetic
            u128 norm = 1;
            bool within = true;
            for (int k = 0; k < d && within; ++k) {
                norm *= p;
                if (norm > bound) within = false;
            }
            if (within) {
                a.place_total += 1;
                if (in_s) a.place_match += 1;
            }
        }
    };
    std::vector<RelationAcc> chunks = scan_chunks<RelationAcc>(primes, per_prime, exec);
    RelationAcc total;
    for (const auto& c : chunks) {
        total.total += c.total;
        total.split_match += c.split_match;
        total.place_total += c.place_total;
        total.place_match += c.place_match;
    }

    DensityRelationReport report;
    report.prime_bound = bound;
    report.field_degree = f.degree();
    report.lhs = total.total
                     ? f.degree() * static_cast<double>(total.split_match) / total.total
                     : 0.0;
    report.rhs = total.place_total
                     ? static_cast<double>(total.place_match) / total.place_total
                     : 0.0;
    report.difference = std::abs(report.lhs - report.rhs);
    report.galois_warning = galois_sanity_warning(f);
    return report;
}

std::optional<std::string> galois_sanity_warning(const IntPoly& f, int sample_primes) {
    if (f.degree() <= 1) return std::nullopt;
    int seen = 0;
    for (u64 p = 2; seen < sample_primes && p < 100000; ++p) {
        if (!is_prime_u64(p)) continue;
        SplittingType t = factor_degrees_mod_p(f, p);
        if (t.ramified) continue;
        ++seen;
        for (int d : t.degrees)
            if (d != t.degrees.front())
                return "factor degrees mod " + std::to_string(p) +
                       " are not uniform; the polynomial cannot be Galois";
    }
    return std::nullopt;
}

// ---- unit group of Z/m and the cyclotomic split field ----

namespace {

struct UnitComponent {
    u64 pe = 0;        // prime power
    u64 order = 0;     // order of this cyclic factor
    u64 gen = 0;       // generator mod pe
    std::unordered_map<u64, u64> dlog;  // residue mod pe -> exponent
    bool two_sign = false;  // the C2 factor {±1} of (Z/2^e)^x, e >= 3
};

u64 primitive_root_mod_pe(u64 p, u64 pe, u64 phi) {
    std::vector<u64> prime_factors;
    u64 n = phi;
    for (u64 q = 2; q * q <= n; ++q)
        if (n % q == 0) {
            prime_factors.push_back(q);
            while (n % q == 0) n /= q;
        }
    if (n > 1) prime_factors.push_back(n);
    for (u64 g = 2; g < pe; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (u64 q : prime_factors)
            if (powmod(g, phi / q, pe) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw invariant_error("no primitive root found");
}

std::vector<UnitComponent> unit_components(u64 m) {
    std::vector<UnitComponent> comps;
    std::vector<std::pair<u64, int>> factorization;
    u64 rem_m = m;
    for (u64 p = 2; p * p <= rem_m; ++p) {
        if (rem_m % p != 0) continue;
        int e = 0;
        while (rem_m % p == 0) {
            rem_m /= p;
            ++e;
        }
        factorization.push_back({p, e});
    }
    if (rem_m > 1) factorization.push_back({rem_m, 1});

    for (auto [p, e] : factorization) {
        u64 pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        if (p == 2) {
            if (e == 2) {
                UnitComponent c;
                c.pe = 4;
                c.order = 2;
                c.gen = 3;
                c.dlog = {{1, 0}, {3, 1}};
                comps.push_back(std::move(c));
            } else if (e >= 3) {
                UnitComponent sign;
                sign.pe = pe;
                sign.order = 2;
                sign.gen = pe - 1;
                sign.two_sign = true;
                comps.push_back(std::move(sign));
                UnitComponent five;
                five.pe = pe;
                five.order = pe / 4;
                five.gen = 5;
                u64 x = 1;
                for (u64 k = 0; k < five.order; ++k) {
                    five.dlog[x] = k;
                    x = mulmod(x, 5, pe);
                }
                comps.push_back(std::move(five));
            }
            // e == 1: trivial unit group
        } else {
            UnitComponent c;
            c.pe = pe;
            c.order = pe / p * (p - 1);
            c.gen = primitive_root_mod_pe(p, pe, c.order);
            u64 x = 1;
            for (u64 k = 0; k < c.order; ++k) {
                c.dlog[x] = k;
                x = mulmod(x, c.gen, pe);
            }
            comps.push_back(std::move(c));
        }
    }
    return comps;
}

std::vector<mpz_class> unit_dlog(const std::vector<UnitComponent>& comps, u64 u) {
    std::vector<mpz_class> v;
    v.reserve(comps.size());
    for (const auto& c : comps) {
        u64 r = u % c.pe;
        if (c.two_sign) {
            v.emplace_back(r % 4 == 3 ? 1 : 0);
        } else if (c.pe % 2 == 0 && c.pe >= 8) {
            // the 5-power factor of (Z/2^e)^x
            u64 rr = (r % 4 == 3) ? c.pe - r : r;
            auto it = c.dlog.find(rr);
            if (it == c.dlog.end()) throw invariant_error("dlog failure mod 2^e");
            v.emplace_back(static_cast<unsigned long>(it->second));
        } else {
            auto it = c.dlog.find(r);
            if (it == c.dlog.end()) throw invariant_error("dlog failure");
            v.emplace_back(static_cast<unsigned long>(it->second));
        }
    }
    return v;
}

}  // namespace

CyclotomicSplitField cyclotomic_e_s(long m, const std::set<long>& residues) {
    if (m < 1) throw invariant_error("modulus must be >= 1");
    if (residues.empty()) throw invariant_error("residue set must be nonempty");
    std::set<u64> norm;
    for (long a : residues) {
        long r = ((a % m) + m) % m;
        u64 g = std::gcd<u64>(r == 0 ? m : r, m);
        if (g != 1) throw invariant_error("residue " + std::to_string(a) +
                                          " is not in (Z/m)^x for m = " + std::to_string(m));
        norm.insert(static_cast<u64>(r));
    }

    std::vector<UnitComponent> comps = unit_components(static_cast<u64>(m));
    const int k = static_cast<int>(comps.size());
    IntMatrix rel(k, k + static_cast<int>(norm.size()));
    for (int i = 0; i < k; ++i) rel.at(i, i) = mpz_class(static_cast<unsigned long>(comps[i].order));
    int col = k;
    for (u64 a : norm) {
        std::vector<mpz_class> v = unit_dlog(comps, a);
        for (int i = 0; i < k; ++i) rel.at(i, col) = v[i];
        ++col;
    }
    FgAbGroup quotient = cokernel(rel);
    return CyclotomicSplitField{quotient.finite_order(), quotient};
}

mpz_class sha1_q_mod_z_order(long m, const std::set<long>& residues) {
    return cyclotomic_e_s(m, residues).degree;
}

}  // namespace asa
