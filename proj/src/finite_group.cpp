#include "asa/finite_group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "asa/errors.hpp"
#include "asa/int_matrix.hpp"
#include "asa/snf.hpp"

namespace asa {

FiniteGroup::FiniteGroup(int order, std::vector<int> table, int identity, std::string name)
    : order_(order), table_(std::move(table)), identity_(identity), name_(std::move(name)) {
    inverse_.assign(order_, -1);
    for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b)
            if (op(a, b) == identity_) inverse_[a] = b;
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& table,
                                    std::string name) {
    const int n = static_cast<int>(table.size());
    if (n == 0) throw invariant_error("group table is empty");
    std::vector<int> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) throw invariant_error("group table is not square");
        for (int v : row) {
            if (v < 0 || v >= n) throw invariant_error("group table entry out of range");
            flat.push_back(v);
        }
    }
    auto mul = [&](int a, int b) { return flat[static_cast<std::size_t>(a) * n + b]; };

    int identity = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
        if (ok) {
            identity = e;
            break;
        }
    }
    if (identity < 0) throw invariant_error("group axiom failed: no two-sided identity");

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
                    std::ostringstream os;
                    os << "group axiom failed: non-associative triple (" << a << "," << b << ","
                       << c << ")";
                    throw invariant_error(os.str());
                }

    for (int a = 0; a < n; ++a) {
        bool has_inv = false;
        for (int b = 0; b < n; ++b)
            if (mul(a, b) == identity && mul(b, a) == identity) has_inv = true;
        if (!has_inv) {
            std::ostringstream os;
            os << "group axiom failed: element " << a << " has no two-sided inverse";
            throw invariant_error(os.str());
        }
    }
    if (name.empty()) name = "G" + std::to_string(n);
    return FiniteGroup(n, std::move(flat), identity, std::move(name));
}

FiniteGroup FiniteGroup::trivial() {
    return cyclic(1);
}

FiniteGroup FiniteGroup::cyclic(int n) {
    if (n < 1) throw parse_error("cyclic group order must be >= 1");
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) flat[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
    return FiniteGroup(n, std::move(flat), 0, "c" + std::to_string(n));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const int n = a.order_ * b.order_;
    std::vector<int> flat(static_cast<std::size_t>(n) * n);
    auto idx = [&](int x, int y) { return x * b.order_ + y; };
    for (int x1 = 0; x1 < a.order_; ++x1)
        for (int y1 = 0; y1 < b.order_; ++y1)
            for (int x2 = 0; x2 < a.order_; ++x2)
                for (int y2 = 0; y2 < b.order_; ++y2)
                    flat[static_cast<std::size_t>(idx(x1, y1)) * n + idx(x2, y2)] =
                        idx(a.op(x1, x2), b.op(y1, y2));
    return FiniteGroup(n, std::move(flat), idx(a.identity_, b.identity_),
                       a.name_ + "x" + b.name_);
}

FiniteGroup FiniteGroup::symmetric3() {
    // Permutations of {0,1,2}: e, (01), (02), (12), (012), (021).
    const int perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    auto find = [&](const int p[3]) {
        for (int i = 0; i < 6; ++i)
            if (perms[i][0] == p[0] && perms[i][1] == p[1] && perms[i][2] == p[2]) return i;
        return -1;
    };
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            int comp[3];
            for (int x = 0; x < 3; ++x) comp[x] = perms[a][perms[b][x]];  // a after b
            table[a][b] = find(comp);
        }
    FiniteGroup g = from_table(table, "s3");
    return g;
}

FiniteGroup FiniteGroup::parse(const std::string& token) {
    std::string t;
    for (char c : token) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (t == "1" || t == "c1" || t == "trivial") return trivial();
    if (t == "s3" || t == "sym3") return symmetric3();
    if (t == "klein" || t == "v4") return direct_product(cyclic(2), cyclic(2));
    // cN or products cNxcM...
    std::vector<FiniteGroup> parts;
    std::size_t pos = 0;
    while (pos < t.size()) {
        std::size_t next = t.find('x', pos);
        std::string piece = t.substr(pos, next == std::string::npos ? next : next - pos);
        if (piece.size() < 2 || piece[0] != 'c')
            throw parse_error("cannot parse group token '" + token + "'");
        int n = 0;
        for (std::size_t i = 1; i < piece.size(); ++i) {
            if (!isdigit(static_cast<unsigned char>(piece[i])))
                throw parse_error("cannot parse group token '" + token + "'");
            n = n * 10 + (piece[i] - '0');
        }
        if (n < 1) throw parse_error("group order must be >= 1 in '" + token + "'");
        parts.push_back(cyclic(n));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (parts.empty()) throw parse_error("cannot parse group token '" + token + "'");
    FiniteGroup g = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) g = direct_product(g, parts[i]);
    return g;
}

int FiniteGroup::element_order(int a) const {
    int x = a, k = 1;
    while (x != identity_) {
        x = op(x, a);
        ++k;
    }
    return k;
}

std::vector<int> FiniteGroup::element_order_multiset() const {
    std::vector<int> v(order_);
    for (int a = 0; a < order_; ++a) v[a] = element_order(a);
    std::sort(v.begin(), v.end());
    return v;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < order_; ++a)
        for (int b = a + 1; b < order_; ++b)
            if (op(a, b) != op(b, a)) return false;
    return true;
}

bool FiniteGroup::is_cyclic() const {
    for (int a = 0; a < order_; ++a)
        if (element_order(a) == order_) return true;
    return false;
}

int FiniteGroup::find_generator() const {
    for (int a = 0; a < order_; ++a)
        if (element_order(a) == order_) return a;
    throw invariant_error("group is not cyclic");
}

bool FiniteGroup::is_subgroup(const std::vector<int>& elems) const {
    if (elems.empty()) return false;
    std::set<int> s(elems.begin(), elems.end());
    if (s.size() != elems.size()) return false;
    if (!s.count(identity_)) return false;
    for (int a : s)
        for (int b : s)
            if (!s.count(op(a, b))) return false;
    return true;
}

bool FiniteGroup::is_normal(const std::vector<int>& elems) const {
    if (!is_subgroup(elems)) return false;
    std::set<int> s(elems.begin(), elems.end());
    for (int g = 0; g < order_; ++g)
        for (int h : s)
            if (!s.count(op(op(g, h), inverse(g)))) return false;
    return true;
}

std::vector<int> FiniteGroup::coset_representatives(const std::vector<int>& subgroup) const {
    if (!is_subgroup(subgroup)) throw invariant_error("listed elements do not form a subgroup");
    std::vector<char> covered(order_, 0);
    std::vector<int> reps;
    for (int g = 0; g < order_; ++g) {
        if (covered[g]) continue;
        reps.push_back(g);
        for (int h : subgroup) covered[op(g, h)] = 1;
    }
    // Identity coset first because element 0 need not be the identity.
    for (std::size_t i = 0; i < reps.size(); ++i) {
        bool id_coset = false;
        for (int h : subgroup)
            if (op(reps[i], h) == identity_) id_coset = true;
        if (id_coset) {
            std::swap(reps[0], reps[i]);
            break;
        }
    }
    return reps;
}

FiniteGroup FiniteGroup::subgroup_group(const std::vector<int>& elems) const {
    if (!is_subgroup(elems)) throw invariant_error("listed elements do not form a subgroup");
    std::map<int, int> pos;
    for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> table(elems.size(), std::vector<int>(elems.size()));
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j)
            table[i][j] = pos.at(op(elems[i], elems[j]));
    return from_table(table, name_ + "_sub" + std::to_string(elems.size()));
}

GroupQuotient FiniteGroup::quotient_by(const std::vector<int>& normal_subgroup) const {
    if (!is_normal(normal_subgroup))
        throw invariant_error("quotient requires a normal subgroup");
    std::vector<int> proj(order_, -1);
    std::vector<int> reps = coset_representatives(normal_subgroup);
    for (std::size_t c = 0; c < reps.size(); ++c)
        for (int h : normal_subgroup) proj[op(reps[c], h)] = static_cast<int>(c);
    const int q = static_cast<int>(reps.size());
    std::vector<std::vector<int>> table(q, std::vector<int>(q));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) table[a][b] = proj[op(reps[a], reps[b])];
    return GroupQuotient{from_table(table, name_ + "_quo" + std::to_string(q)), std::move(proj)};
}

std::vector<int> FiniteGroup::generated_subgroup(const std::vector<int>& gens) const {
    std::set<int> s = {identity_};
    std::vector<int> frontier = {identity_};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (int g : gens) {
                int y = op(x, g);
                if (s.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return {s.begin(), s.end()};
}

std::vector<int> FiniteGroup::squares_commutators_subgroup() const {
    std::vector<int> gens;
    for (int a = 0; a < order_; ++a) gens.push_back(op(a, a));
    for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b)
            gens.push_back(op(op(a, b), op(inverse(a), inverse(b))));
    return generated_subgroup(gens);
}

std::vector<int> FiniteGroup::find_parity() const {
    std::vector<int> n = squares_commutators_subgroup();
    if (static_cast<int>(n.size()) == order_)
        throw invariant_error("group admits no surjection onto C2");
    GroupQuotient q = quotient_by(n);  // elementary abelian 2-group of order >= 2
    // Coordinates over F2 by greedy independent generators.
    const FiniteGroup& Q = q.group;
    std::vector<int> basis;
    std::vector<int> span = {Q.identity()};
    std::set<int> span_set(span.begin(), span.end());
    for (int x = 0; x < Q.order(); ++x) {
        if (span_set.count(x)) continue;
        basis.push_back(x);
        std::vector<int> grown;
        for (int s : span) {
            grown.push_back(s);
            grown.push_back(Q.op(s, x));
        }
        span = grown;
        span_set = std::set<int>(span.begin(), span.end());
    }
    // Parity = first coordinate; solve membership by testing x * b1^eps in span of rest.
    const int b1 = basis[0];
    std::vector<int> rest(basis.begin() + 1, basis.end());
    std::set<int> rest_span;
    for (int e : Q.generated_subgroup(rest)) rest_span.insert(e);
    std::vector<int> parity(order_);
    for (int g = 0; g < order_; ++g) {
        int x = q.projection[g];
        parity[g] = rest_span.count(x) ? 0 : (rest_span.count(Q.op(x, b1)) ? 1 : -1);
        if (parity[g] < 0) throw invariant_error("parity decomposition failed");
    }
    return parity;
}

FgAbGroup FiniteGroup::abelian_invariants() const {
    if (!is_abelian()) throw invariant_error("abelian invariants of a nonabelian group");
    // Relation lattice on all elements as generators: e_a + e_b - e_{ab}, e_identity.
    const int n = order_;
    IntMatrix r(n, n * (n + 1) / 2 + 1);
    int c = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            r.at(a, c) += 1;
            r.at(b, c) += 1;
            r.at(op(a, b), c) -= 1;
            ++c;
        }
    r.at(identity_, c) = 1;
    return cokernel(r);
}

}  // namespace asa
