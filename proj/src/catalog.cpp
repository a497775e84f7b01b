#include "asa/catalog.hpp"

#include <algorithm>
#include <sstream>

#include "asa/errors.hpp"
#include "asa/snf.hpp"

namespace asa {

namespace {

GaloisModule cyclic_q(const FiniteGroup& gamma, int n) {
    if (n <= 1) return GaloisModule::zero_module(gamma);
    return GaloisModule::cyclic_module(gamma, n);
}

int min_generators_of(const GaloisModule& m) {
    return m.underlying_group().min_generators();
}

struct Parts {
    GaloisModule t_hat, t_sc_hat, z0_hat, q_hat, pic_bar;
    IntMatrix restriction, z0_to_q;
};

Parts build_gl(const FiniteGroup& gamma, int n) {
    Parts p{GaloisModule::trivial_lattice(gamma, n), GaloisModule::trivial_lattice(gamma, n - 1),
            GaloisModule::trivial_lattice(gamma, 1), cyclic_q(gamma, n),
            GaloisModule::zero_module(gamma), IntMatrix(n - 1, n),
            IntMatrix(n > 1 ? 1 : 0, 1)};
    // e_i -> e_i for i < n-1; e_{n-1} -> -(e_0 + ... + e_{n-2})
    for (int i = 0; i < n - 1; ++i) {
        p.restriction.at(i, i) = 1;
        p.restriction.at(i, n - 1) = -1;
    }
    if (n > 1) p.z0_to_q.at(0, 0) = 1;  // reduction mod n on the central Gm
    return p;
}

Parts build_sl(const FiniteGroup& gamma, int n) {
    Parts p{GaloisModule::trivial_lattice(gamma, n - 1),
            GaloisModule::trivial_lattice(gamma, n - 1), GaloisModule::zero_module(gamma),
            GaloisModule::zero_module(gamma), GaloisModule::zero_module(gamma),
            IntMatrix::identity(n - 1), IntMatrix(0, 0)};
    return p;
}

Parts build_pgl(const FiniteGroup& gamma, int n) {
    // Root basis a_j = e_j - e_{j+1} mapped into Z^n / (1,..,1).
    Parts p{GaloisModule::trivial_lattice(gamma, n - 1),
            GaloisModule::trivial_lattice(gamma, n - 1), GaloisModule::zero_module(gamma),
            cyclic_q(gamma, n), cyclic_q(gamma, n), IntMatrix(n - 1, n - 1),
            IntMatrix(n > 1 ? 1 : 0, 0)};
    for (int j = 0; j + 1 < n - 1; ++j) {
        p.restriction.at(j, j) += 1;
        p.restriction.at(j + 1, j) -= 1;
    }
    for (int i = 0; i < n - 1; ++i) p.restriction.at(i, n - 2) += 1;
    p.restriction.at(n - 2, n - 2) += 1;
    return p;
}

Parts build_sp(const FiniteGroup& gamma, int half_rank) {
    // Adjoint symplectic family: weights Z^n, roots of type C_n (index 2).
    const int n = half_rank;
    Parts p{GaloisModule::trivial_lattice(gamma, n), GaloisModule::trivial_lattice(gamma, n),
            GaloisModule::zero_module(gamma), cyclic_q(gamma, 2), cyclic_q(gamma, 2),
            IntMatrix(n, n), IntMatrix(1, 0)};
    for (int j = 0; j + 1 < n; ++j) {
        p.restriction.at(j, j) += 1;
        p.restriction.at(j + 1, j) -= 1;
    }
    p.restriction.at(n - 1, n - 1) = 2;
    return p;
}

Parts build_torus(const FiniteGroup& gamma, const GaloisModule& t_hat) {
    Parts p{t_hat, GaloisModule::zero_module(gamma), t_hat, GaloisModule::zero_module(gamma),
            GaloisModule::zero_module(gamma), IntMatrix(0, t_hat.rank()),
            IntMatrix(0, t_hat.rank())};
    return p;
}

GaloisModule augmentation_kernel(const FiniteGroup& gamma) {
    // Basis b_g = e_g - e_identity for g != identity.
    const int n = gamma.order();
    const int rank = n - 1;
    std::vector<int> pos(n, -1);
    int idx = 0;
    for (int g = 0; g < n; ++g)
        if (g != gamma.identity()) pos[g] = idx++;
    std::vector<IntMatrix> action(n);
    for (int s = 0; s < n; ++s) {
        IntMatrix a(rank, rank);
        for (int g = 0; g < n; ++g) {
            if (g == gamma.identity()) continue;
            int sg = gamma.op(s, g);
            if (sg != gamma.identity()) a.at(pos[sg], pos[g]) += 1;
            if (s != gamma.identity()) a.at(pos[s], pos[g]) -= 1;
        }
        action[s] = a;
    }
    return GaloisModule(gamma, rank, IntMatrix(rank, 0), std::move(action));
}

Parts direct_sum_parts(const FiniteGroup& gamma, const Parts& a, const Parts& b) {
    Parts p{a.t_hat.direct_sum(b.t_hat),
            a.t_sc_hat.direct_sum(b.t_sc_hat),
            a.z0_hat.direct_sum(b.z0_hat),
            a.q_hat.direct_sum(b.q_hat),
            a.pic_bar.direct_sum(b.pic_bar),
            IntMatrix(a.t_sc_hat.rank() + b.t_sc_hat.rank(), a.t_hat.rank() + b.t_hat.rank()),
            IntMatrix(a.q_hat.rank() + b.q_hat.rank(), a.z0_hat.rank() + b.z0_hat.rank())};
    (void)gamma;
    p.restriction.add_block(0, 0, a.restriction);
    p.restriction.add_block(a.t_sc_hat.rank(), a.t_hat.rank(), b.restriction);
    p.z0_to_q.add_block(0, 0, a.z0_to_q);
    p.z0_to_q.add_block(a.q_hat.rank(), a.z0_hat.rank(), b.z0_to_q);
    return p;
}

int parse_int_param(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw parse_error("");
        return v;
    } catch (...) {
        throw parse_error("bad " + what + " parameter '" + s + "'");
    }
}

// Splits "a,b" at the top-level comma, respecting parentheses.
std::pair<std::string, std::string> split_pair(const std::string& s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == ',' && depth == 0) return {s.substr(0, i), s.substr(i + 1)};
    }
    throw parse_error("product needs two comma-separated entries: '" + s + "'");
}

Parts build_parts(const std::string& spec, const FiniteGroup& gamma, std::string& norm_name);

Parts build_resgm(const std::string& params, const FiniteGroup* /*unused*/,
                  std::string& norm_name, FiniteGroup& out_gamma) {
    std::string group_token;
    std::vector<int> h_elems;
    std::stringstream ss(params);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        if (piece.rfind("group=", 0) == 0) {
            group_token = piece.substr(6);
        } else if (piece.rfind("h=", 0) == 0) {
            std::stringstream hs(piece.substr(2));
            std::string e;
            while (std::getline(hs, e, '+')) h_elems.push_back(parse_int_param(e, "subgroup"));
        } else if (!piece.empty()) {
            group_token = piece;  // tolerate resgm:c2
        }
    }
    if (group_token.empty()) throw parse_error("resgm needs group=<token>");
    out_gamma = FiniteGroup::parse(group_token);
    if (h_elems.empty()) h_elems = {out_gamma.identity()};
    norm_name = "resgm:group=" + group_token;
    GaloisModule perm = GaloisModule::permutation_module(out_gamma, h_elems);
    return build_torus(out_gamma, perm);
}

Parts build_parts(const std::string& spec, const FiniteGroup& gamma, std::string& norm_name) {
    std::size_t colon = spec.find(':');
    std::string family = colon == std::string::npos ? spec : spec.substr(0, colon);
    std::string params = colon == std::string::npos ? "" : spec.substr(colon + 1);

    if (family == "gl" || family == "sl" || family == "pgl" || family == "sp") {
        int n = parse_int_param(params, family);
        if (family == "sp") {
            if (n < 2 || n % 2 != 0)
                throw parse_error("sp wants an even rank 2n >= 2, got " + params);
            norm_name = "sp:" + std::to_string(n);
            return build_sp(gamma, n / 2);
        }
        if (n < 1 || (family != "gl" && n < 2))
            throw parse_error(family + " rank out of range: " + params);
        norm_name = family + ":" + std::to_string(n);
        if (family == "gl") return build_gl(gamma, n);
        if (family == "sl") return build_sl(gamma, n);
        return build_pgl(gamma, n);
    }
    if (family == "torus") {
        std::string rs = params.rfind("r=", 0) == 0 ? params.substr(2) : params;
        int r = parse_int_param(rs, "torus rank");
        if (r < 0) throw parse_error("torus rank must be >= 0");
        norm_name = "torus:r=" + std::to_string(r);
        return build_torus(gamma, GaloisModule::trivial_lattice(gamma, r));
    }
    if (family == "normone") {
        std::string group_token =
            params.rfind("group=", 0) == 0 ? params.substr(6) : params;
        FiniteGroup g = FiniteGroup::parse(group_token);
        if (!g.is_cyclic()) throw parse_error("normone needs a cyclic group");
        norm_name = "normone:group=" + group_token;
        return build_torus(g, augmentation_kernel(g));
    }
    if (family == "prod") {
        if (params.size() < 2 || params.front() != '(' || params.back() != ')')
            throw parse_error("prod wants prod:(a,b)");
        auto [left, right] = split_pair(params.substr(1, params.size() - 2));
        std::string ln, rn;
        Parts a = build_parts(left, gamma, ln);
        Parts b = build_parts(right, gamma, rn);
        if (!a.t_hat.group().same_table(b.t_hat.group()))
            throw parse_error("product factors must share the Galois group");
        norm_name = "prod:(" + ln + "," + rn + ")";
        return direct_sum_parts(a.t_hat.group(), a, b);
    }
    throw parse_error("unknown catalog name '" + spec + "'");
}

void validate_descriptor(const GroupDescriptor& d) {
    if (d.rank_r != d.t_hat.rank())
        throw invariant_error("catalog invariant: rank_r != rank(t_hat)");
    ComplexPair pair = complexes(d);  // equivariance of both complexes

    if (d.is_semisimple() && d.q_hat.rank() > 0) {
        if (!(d.pic_bar.rank() == d.q_hat.rank() &&
              d.pic_bar.relations() == d.q_hat.relations() &&
              d.pic_bar.actions() == d.q_hat.actions()))
            throw invariant_error("catalog invariant: pic_bar != q_hat on a semisimple entry");
    }

    // Order agreement of the two H^1s; skipped when the cochain spaces would
    // be too large for a constructor-time check.
    long cost = static_cast<long>(d.gamma.order() - 1);
    cost = cost * cost * cost * (d.t_hat.rank() + d.t_sc_hat.rank() + 1);
    if (cost <= 20000) {
        CohomologyResult hc = hyper_h1(d.gamma, pair.c_hat);
        CohomologyResult hc0 = hyper_h1(d.gamma, pair.c0_hat);
        if (hc.group.finite_order() != hc0.group.finite_order())
            throw invariant_error("catalog invariant: |H1(C)| != |H1(C0)| for " + d.name);
    }
}

}  // namespace

GroupDescriptor catalog_entry(const std::string& spec, const FiniteGroup& gamma) {
    std::string norm_name;
    std::size_t colon = spec.find(':');
    std::string family = colon == std::string::npos ? spec : spec.substr(0, colon);

    Parts parts = [&]() {
        if (family == "resgm") {
            FiniteGroup own = FiniteGroup::trivial();
            Parts p = build_resgm(spec.substr(colon + 1), nullptr, norm_name, own);
            return p;
        }
        return build_parts(spec, gamma, norm_name);
    }();

    GroupDescriptor d{norm_name,
                      parts.t_hat.group(),
                      parts.t_hat,
                      parts.t_sc_hat,
                      parts.restriction,
                      parts.z0_hat,
                      parts.q_hat,
                      parts.z0_to_q,
                      parts.t_hat.rank(),
                      parts.pic_bar,
                      0};
    d.pic_generators = min_generators_of(d.pic_bar);
    validate_descriptor(d);
    return d;
}

GroupDescriptor catalog_entry(const std::string& spec) {
    return catalog_entry(spec, FiniteGroup::trivial());
}

ComplexPair complexes(const GroupDescriptor& d) {
    return ComplexPair{make_complex(d.t_hat, d.t_sc_hat, d.restriction_map),
                       make_complex(d.z0_hat, d.q_hat, d.z0_to_q)};
}

QuasiIsoReport quasi_iso_check(const GroupDescriptor& d) {
    ComplexPair pair = complexes(d);
    QuasiIsoReport report;
    report.entry = d.name;
    report.gamma = d.gamma.name();
    report.h1_c = hyper_h1(d.gamma, pair.c_hat).group;
    report.h1_c0 = hyper_h1(d.gamma, pair.c0_hat).group;
    report.equal_order = report.h1_c.finite_order() == report.h1_c0.finite_order();
    return report;
}

std::vector<std::string> catalog_names() {
    return {"gl:N", "sl:N", "pgl:N", "sp:2N", "torus:r=R", "resgm:group=cK[,h=i+j]",
            "normone:group=cK", "prod:(a,b)"};
}

}  // namespace asa
