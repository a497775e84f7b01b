#include "asa/fg_ab_group.hpp"

#include <algorithm>
#include <sstream>

#include "asa/errors.hpp"

namespace asa {

FgAbGroup::FgAbGroup(int free_rank, std::vector<mpz_class> invariant_factors)
    : free_rank_(free_rank), factors_(std::move(invariant_factors)) {
    if (free_rank_ < 0) throw invariant_error("negative free rank");
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 2) throw invariant_error("invariant factor < 2");
        if (i > 0 && factors_[i] % factors_[i - 1] != 0)
            throw invariant_error("invariant factors violate divisibility chain");
    }
}

FgAbGroup FgAbGroup::from_diagonal(const std::vector<mpz_class>& diag, int extra_free) {
    int free_rank = extra_free;
    std::vector<mpz_class> factors;
    for (const auto& d : diag) {
        mpz_class a = abs(d);
        if (a == 0)
            ++free_rank;
        else if (a != 1)
            factors.push_back(a);
    }
    std::sort(factors.begin(), factors.end());
    return FgAbGroup(free_rank, std::move(factors));
}

FgAbGroup FgAbGroup::cyclic(const mpz_class& n) {
    return from_diagonal({n});
}

std::optional<mpz_class> FgAbGroup::order() const {
    if (free_rank_ > 0) return std::nullopt;
    mpz_class o = 1;
    for (const auto& d : factors_) o *= d;
    return o;
}

mpz_class FgAbGroup::finite_order() const {
    auto o = order();
    if (!o) throw invariant_error("group is infinite");
    return *o;
}

FgAbGroup FgAbGroup::direct_sum(const FgAbGroup& o) const {
    // Recanonicalize: the union of two chains is generally not a chain, so
    // rebuild the invariant factors from the primary decomposition.
    std::vector<mpz_class> all = factors_;
    all.insert(all.end(), o.factors_.begin(), o.factors_.end());
    if (all.empty()) return FgAbGroup(free_rank_ + o.free_rank_, {});

    // Collect prime powers, then re-stack the largest powers per prime into
    // the last factor, next-largest into the previous one, and so on.
    std::vector<std::pair<mpz_class, std::vector<mpz_class>>> primary;  // prime -> powers
    for (const auto& d : all) {
        mpz_class rem = d;
        for (mpz_class p = 2; rem > 1;) {
            if (mpz_divisible_p(rem.get_mpz_t(), p.get_mpz_t())) {
                mpz_class q = 1;
                while (mpz_divisible_p(rem.get_mpz_t(), p.get_mpz_t())) {
                    rem /= p;
                    q *= p;
                }
                auto it = std::find_if(primary.begin(), primary.end(),
                                       [&](const auto& e) { return e.first == p; });
                if (it == primary.end()) {
                    primary.push_back({p, {q}});
                } else {
                    it->second.push_back(q);
                }
            }
            mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
            // trial division is fine: factors here are small cohomology orders
        }
    }
    std::size_t chain_len = 0;
    for (auto& [p, powers] : primary) {
        std::sort(powers.begin(), powers.end(), std::greater<>());
        chain_len = std::max(chain_len, powers.size());
    }
    std::vector<mpz_class> chain(chain_len, 1);
    for (auto& [p, powers] : primary)
        for (std::size_t i = 0; i < powers.size(); ++i) chain[i] *= powers[i];
    std::reverse(chain.begin(), chain.end());
    return FgAbGroup(free_rank_ + o.free_rank_, std::move(chain));
}

std::string FgAbGroup::to_string(bool unicode) const {
    const char* Z = unicode ? "ℤ" : "Z";
    const char* oplus = unicode ? " ⊕ " : " + ";
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank_ > 0) {
        os << Z;
        if (free_rank_ > 1) os << "^" << free_rank_;
        first = false;
    }
    for (const auto& d : factors_) {
        if (!first) os << oplus;
        os << Z << "/" << d.get_str();
        first = false;
    }
    return os.str();
}

}  // namespace asa
