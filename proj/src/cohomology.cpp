#include "asa/cohomology.hpp"

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "asa/errors.hpp"

namespace asa {

namespace {

int g_cap = 24;

std::optional<mpz_class> scalar_relation_exponent(const IntMatrix& rel) {
    if (rel.cols() == 0 || rel.rows() != rel.cols()) return std::nullopt;
    const mpz_class& m = rel.at(0, 0);
    if (m < 2) return std::nullopt;
    for (int i = 0; i < rel.rows(); ++i)
        for (int j = 0; j < rel.cols(); ++j)
            if (rel.at(i, j) != (i == j ? m : mpz_class(0))) return std::nullopt;
    return m;
}

// Normalized inhomogeneous cochains: functions on tuples of non-identity
// elements. Degree-i cochains have dimension rank * nu^i.
struct CochainContext {
    FiniteGroup group;
    GaloisModule module;
    std::vector<int> nz;
    std::vector<int> pos;
    int r;
    std::optional<mpz_class> scalar_rel;

    CochainContext(FiniteGroup g, GaloisModule m)
        : group(std::move(g)), module(std::move(m)), r(module.rank()) {
        pos.assign(group.order(), -1);
        for (int x = 0; x < group.order(); ++x)
            if (x != group.identity()) {
                pos[x] = static_cast<int>(nz.size());
                nz.push_back(x);
            }
        scalar_rel = scalar_relation_exponent(module.relations());
    }

    int nu() const { return static_cast<int>(nz.size()); }
    int dim(int degree) const {
        long d = r;
        for (int i = 0; i < degree; ++i) d *= nu();
        return static_cast<int>(d);
    }

    const IntMatrix& d(int i) {
        ensure(i);
        return d_[i];
    }

    IntMatrix rel_dense_block(int degree) const {
        if (module.is_lattice()) return IntMatrix(dim(degree), 0);
        if (scalar_rel) {
            std::vector<mpz_class> diag(dim(degree), *scalar_rel);
            return IntMatrix::diagonal(diag);
        }
        long copies = 1;
        for (int i = 0; i < degree; ++i) copies *= nu();
        std::vector<IntMatrix> blocks(copies, module.relations());
        if (copies == 0) return IntMatrix(0, 0);
        return IntMatrix::block_diag(blocks);
    }

    // Generators of the degree-i cocycles (x with d_i x = 0 mod relations).
    IntMatrix cocycle_gens(int i) {
        const IntMatrix& di = d(i);
        if (module.is_lattice()) return kernel_basis(di);
        if (scalar_rel) {
            // d x = 0 mod m, solved through the Smith form of d alone.
            SnfTransforms t = snf_with(di, false, false, true);
            const mpz_class& m = *scalar_rel;
            IntMatrix basis = t.v;
            for (int j = 0; j < basis.cols(); ++j) {
                mpz_class delta = j < static_cast<int>(t.diag.size()) ? t.diag[j] : mpz_class(0);
                mpz_class g;
                mpz_gcd(g.get_mpz_t(), delta.get_mpz_t(), m.get_mpz_t());
                mpz_class scale = m / g;
                if (scale != 1)
                    for (int row = 0; row < basis.rows(); ++row) basis.at(row, j) *= scale;
            }
            return basis;
        }
        return preimage_kernel_gens(di, rel_dense_block(i + 1));
    }

    IntMatrix coboundary_gens(int i) {
        if (i == 0) return rel_dense_block(0);
        return IntMatrix::hstack(d(i - 1), rel_dense_block(i));
    }

private:
    IntMatrix d_[3];
    bool built_[3] = {false, false, false};

    const IntMatrix& act(int elem) const { return module.action(elem); }

    void check_composite(const IntMatrix& prod, int target_degree) const {
        if (module.is_lattice()) {
            if (!prod.is_zero()) throw invariant_error("bar complex: d.d != 0");
            return;
        }
        if (scalar_rel) {
            for (int i = 0; i < prod.rows(); ++i)
                for (int j = 0; j < prod.cols(); ++j)
                    if (!mpz_divisible_p(prod.at(i, j).get_mpz_t(), scalar_rel->get_mpz_t()))
                        throw invariant_error("bar complex: d.d != 0 mod relations");
            return;
        }
        ColumnSolver rel(rel_dense_block(target_degree));
        if (!rel.contains_all_columns(prod))
            throw invariant_error("bar complex: d.d != 0 mod relations");
    }

    void ensure(int i) {
        if (built_[i]) return;
        const int v = nu();
        IntMatrix id = IntMatrix::identity(r);
        if (i == 0) {
            IntMatrix m(dim(1), dim(0));
            for (int a = 0; a < v; ++a) {
                m.add_block(a * r, 0, act(nz[a]));
                m.add_block(a * r, 0, id, -1);
            }
            d_[0] = std::move(m);
        } else if (i == 1) {
            IntMatrix m(dim(2), dim(1));
            for (int a = 0; a < v; ++a)
                for (int b = 0; b < v; ++b) {
                    int row = (a * v + b) * r;
                    m.add_block(row, b * r, act(nz[a]));
                    int ab = group.op(nz[a], nz[b]);
                    if (ab != group.identity()) m.add_block(row, pos[ab] * r, id, -1);
                    m.add_block(row, a * r, id);
                }
            d_[1] = std::move(m);
        } else {
            IntMatrix m(dim(3), dim(2));
            for (int a = 0; a < v; ++a)
                for (int b = 0; b < v; ++b)
                    for (int c = 0; c < v; ++c) {
                        int row = ((a * v + b) * v + c) * r;
                        m.add_block(row, (b * v + c) * r, act(nz[a]));
                        int ab = group.op(nz[a], nz[b]);
                        if (ab != group.identity())
                            m.add_block(row, (pos[ab] * v + c) * r, id, -1);
                        int bc = group.op(nz[b], nz[c]);
                        if (bc != group.identity())
                            m.add_block(row, (a * v + pos[bc]) * r, id);
                        m.add_block(row, (a * v + b) * r, id, -1);
                    }
            d_[2] = std::move(m);
        }
        built_[i] = true;
        // each adjacent pair is verified once, whichever is built second
        if (i >= 1 && built_[i - 1]) check_composite(d_[i] * d_[i - 1], i + 1);
        if (i + 1 <= 2 && built_[i + 1]) check_composite(d_[i + 1] * d_[i], i + 2);
    }
};

std::string module_key(const FiniteGroup& g, const GaloisModule& m) {
    std::ostringstream os;
    os << g.order() << ":";
    for (int x : g.raw_table()) os << x << ",";
    os << "|" << m.rank() << "|" << m.relations().to_string() << "|";
    for (const auto& a : m.actions()) os << a.to_string();
    return os.str();
}

std::mutex g_mutex;
std::map<std::string, FgAbGroup> g_result_memo;
std::deque<std::pair<std::string, std::shared_ptr<CochainContext>>> g_ctx_cache;

std::shared_ptr<CochainContext> context_for(const FiniteGroup& g, const GaloisModule& m) {
    std::string key = module_key(g, m);
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        for (auto& [k, ctx] : g_ctx_cache)
            if (k == key) return ctx;
    }
    auto ctx = std::make_shared<CochainContext>(g, m);
    std::lock_guard<std::mutex> lock(g_mutex);
    g_ctx_cache.emplace_back(std::move(key), ctx);
    if (g_ctx_cache.size() > 4) g_ctx_cache.pop_front();
    return ctx;
}

void post_checks(int degree, const FiniteGroup& g, const GaloisModule& m, const FgAbGroup& h) {
    if (degree == 0) return;
    if (m.is_lattice() && h.free_rank() != 0)
        throw invariant_error("cohomology of a lattice must be finite in positive degrees");
    mpz_class n(g.order());
    for (const auto& f : h.invariant_factors())
        if (!mpz_divisible_p(n.get_mpz_t(), f.get_mpz_t()))
            throw invariant_error("invariant factor does not divide the group order");
}

std::vector<std::vector<mpz_class>> reps_from(const LatticeQuotient& q) {
    std::vector<std::vector<mpz_class>> reps;
    for (int i = 0; i < q.coordinate_count(); ++i)
        if (q.orders()[i] != 1) reps.push_back(q.representative(i));
    return reps;
}

}  // namespace

int group_order_cap() {
    return g_cap;
}

void set_group_order_cap(int cap) {
    if (cap < 1) throw invariant_error("cap must be positive");
    g_cap = cap;
}

CohomologyResult h(int degree, const FiniteGroup& g, const GaloisModule& m,
                   bool want_representatives) {
    if (degree < 0 || degree > 2)
        throw invariant_error("only degrees 0, 1, 2 are supported");
    if (g.order() > g_cap)
        throw invariant_error("group order " + std::to_string(g.order()) +
                              " exceeds the cap " + std::to_string(g_cap));
    if (!g.same_table(m.group()))
        throw invariant_error("module is defined over a different group");

    std::string key;
    if (!want_representatives) {
        key = std::to_string(degree) + "#" + module_key(g, m);
        std::lock_guard<std::mutex> lock(g_mutex);
        auto it = g_result_memo.find(key);
        if (it != g_result_memo.end())
            return CohomologyResult{degree, it->second, std::nullopt};
    }

    auto ctx = context_for(g, m);
    IntMatrix num = ctx->cocycle_gens(degree);
    IntMatrix den = ctx->coboundary_gens(degree);
    LatticeQuotient q(num, den, ctx->dim(degree));
    post_checks(degree, g, m, q.group());

    CohomologyResult result{degree, q.group(), std::nullopt};
    if (want_representatives) {
        result.representatives = reps_from(q);
    } else {
        std::lock_guard<std::mutex> lock(g_mutex);
        g_result_memo.emplace(std::move(key), result.group);
    }
    return result;
}

FgAbGroup cyclic_oracle(int degree, const FiniteGroup& g, const GaloisModule& m) {
    if (degree != 1 && degree != 2)
        throw invariant_error("cyclic oracle covers degrees 1 and 2");
    if (!g.same_table(m.group()))
        throw invariant_error("module is defined over a different group");
    const int gen = g.find_generator();
    const int r = m.rank();
    IntMatrix s = m.action(gen);
    IntMatrix norm(r, r);
    int x = g.identity();
    for (int k = 0; k < g.order(); ++k) {
        norm = norm + m.action(x);
        x = g.op(x, gen);
    }
    IntMatrix smi = s - IntMatrix::identity(r);
    const IntMatrix& rel = m.relations();
    auto preim = [&](const IntMatrix& mat) {
        return m.is_lattice() ? kernel_basis(mat) : preimage_kernel_gens(mat, rel);
    };
    if (degree == 1) return LatticeQuotient(preim(norm), IntMatrix::hstack(smi, rel), r).group();
    return LatticeQuotient(preim(smi), IntMatrix::hstack(norm, rel), r).group();
}

namespace {

// Total-complex data for a two-term complex: T^i = C^{i+1}(M-1) (+) C^i(M0),
// D(a, b) = (d a, phi a - d b).
struct ConeContext {
    std::shared_ptr<CochainContext> a, b;
    const TwoTermComplex* complex;

    ConeContext(const FiniteGroup& g, const TwoTermComplex& c)
        : a(context_for(g, c.m_minus1)), b(context_for(g, c.m_zero)), complex(&c) {}

    int dim(int i) const { return a->dim(i + 1) + b->dim(i); }

    IntMatrix phi_block(int degree) const {
        long copies = 1;
        for (int i = 0; i < degree; ++i) copies *= a->nu();
        std::vector<IntMatrix> blocks(copies, complex->differential);
        if (copies == 0) return IntMatrix(0, 0);
        return IntMatrix::block_diag(blocks);
    }

    IntMatrix total_d(int i) const {
        IntMatrix m(dim(i + 1), dim(i));
        m.add_block(0, 0, a->d(i + 1));
        m.add_block(a->dim(i + 2), 0, phi_block(i + 1));
        m.add_block(a->dim(i + 2), a->dim(i + 1), b->d(i), -1);
        return m;
    }

    IntMatrix rel_block(int i) const {
        IntMatrix ra = a->rel_dense_block(i + 1);
        IntMatrix rb = b->rel_dense_block(i);
        IntMatrix m(dim(i), ra.cols() + rb.cols());
        m.add_block(0, 0, ra);
        m.add_block(a->dim(i + 1), ra.cols(), rb);
        return m;
    }

    LatticeQuotient quotient(int i) const {
        IntMatrix rel_next = rel_block(i + 1);
        IntMatrix num = rel_next.cols() == 0 ? kernel_basis(total_d(i))
                                             : preimage_kernel_gens(total_d(i), rel_next);
        IntMatrix den = i == 0 ? rel_block(0)
                               : IntMatrix::hstack(total_d(i - 1), rel_block(i));
        return LatticeQuotient(num, den, dim(i));
    }
};

}  // namespace

CohomologyResult hyper_h1(const FiniteGroup& g, const TwoTermComplex& c,
                          bool want_representatives) {
    if (g.order() > g_cap)
        throw invariant_error("group order exceeds the cap");
    if (!g.same_table(c.m_minus1.group()))
        throw invariant_error("complex is defined over a different group");
    ConeContext cone(g, c);
    LatticeQuotient q = cone.quotient(1);
    CohomologyResult result{1, q.group(), std::nullopt};
    if (want_representatives) result.representatives = reps_from(q);
    return result;
}

bool is_cocycle(const FiniteGroup& g, const GaloisModule& m, int degree,
                const std::vector<mpz_class>& cochain) {
    auto ctx = context_for(g, m);
    if (static_cast<int>(cochain.size()) != ctx->dim(degree))
        throw invariant_error("cochain dimension mismatch");
    std::vector<mpz_class> w = ctx->d(degree).apply(cochain);
    if (m.is_lattice()) {
        for (const auto& v : w)
            if (v != 0) return false;
        return true;
    }
    IntMatrix rel = ctx->rel_dense_block(degree + 1);
    return ColumnSolver(rel).contains(w);
}

bool is_coboundary(const FiniteGroup& g, const GaloisModule& m, int degree,
                   const std::vector<mpz_class>& cochain) {
    auto ctx = context_for(g, m);
    if (static_cast<int>(cochain.size()) != ctx->dim(degree))
        throw invariant_error("cochain dimension mismatch");
    return ColumnSolver(ctx->coboundary_gens(degree)).contains(cochain);
}

GaloisModule restrict_module(const GaloisModule& m, const std::vector<int>& h_elems) {
    FiniteGroup h = m.group().subgroup_group(h_elems);
    std::vector<IntMatrix> action(h_elems.size());
    for (std::size_t i = 0; i < h_elems.size(); ++i) action[i] = m.action(h_elems[i]);
    return GaloisModule(h, m.rank(), m.relations(), std::move(action));
}

std::vector<mpz_class> restrict_cocycle(const FiniteGroup& g, const std::vector<int>& h_elems,
                                        const GaloisModule& m, int degree,
                                        const std::vector<mpz_class>& cochain) {
    if (degree != 1 && degree != 2) throw invariant_error("restriction covers degrees 1, 2");
    FiniteGroup h = g.subgroup_group(h_elems);
    const int r = m.rank();
    // positions of non-identity elements in each group
    std::vector<int> gnz_pos(g.order(), -1);
    int gv = 0;
    for (int x = 0; x < g.order(); ++x)
        if (x != g.identity()) gnz_pos[x] = gv++;
    std::vector<int> hnz;
    for (int x = 0; x < h.order(); ++x)
        if (x != h.identity()) hnz.push_back(x);
    const int hv = static_cast<int>(hnz.size());

    auto g_block = [&](int a_abs) { return gnz_pos[h_elems[a_abs]]; };
    std::vector<mpz_class> out;
    if (degree == 1) {
        out.assign(static_cast<std::size_t>(hv) * r, 0);
        for (int a = 0; a < hv; ++a)
            for (int k = 0; k < r; ++k)
                out[static_cast<std::size_t>(a) * r + k] =
                    cochain[static_cast<std::size_t>(g_block(hnz[a])) * r + k];
    } else {
        out.assign(static_cast<std::size_t>(hv) * hv * r, 0);
        for (int a = 0; a < hv; ++a)
            for (int b = 0; b < hv; ++b)
                for (int k = 0; k < r; ++k)
                    out[(static_cast<std::size_t>(a) * hv + b) * r + k] =
                        cochain[(static_cast<std::size_t>(g_block(hnz[a])) * gv +
                                 g_block(hnz[b])) *
                                    r +
                                k];
    }
    return out;
}

GaloisModule inflate_module(const FiniteGroup& g, const std::vector<int>& projection,
                            const GaloisModule& mq) {
    if (static_cast<int>(projection.size()) != g.order())
        throw invariant_error("projection size mismatch");
    std::vector<IntMatrix> action(g.order());
    for (int x = 0; x < g.order(); ++x) action[x] = mq.action(projection[x]);
    return GaloisModule(g, mq.rank(), mq.relations(), std::move(action));
}

std::vector<mpz_class> inflate_cocycle(const FiniteGroup& g, const std::vector<int>& projection,
                                       const FiniteGroup& q, const GaloisModule& mq, int degree,
                                       const std::vector<mpz_class>& cochain) {
    if (degree != 1 && degree != 2) throw invariant_error("inflation covers degrees 1, 2");
    const int r = mq.rank();
    std::vector<int> qnz_pos(q.order(), -1);
    int qv = 0;
    for (int x = 0; x < q.order(); ++x)
        if (x != q.identity()) qnz_pos[x] = qv++;
    std::vector<int> gnz;
    for (int x = 0; x < g.order(); ++x)
        if (x != g.identity()) gnz.push_back(x);
    const int gv = static_cast<int>(gnz.size());

    std::vector<mpz_class> out;
    if (degree == 1) {
        out.assign(static_cast<std::size_t>(gv) * r, 0);
        for (int a = 0; a < gv; ++a) {
            int qa = projection[gnz[a]];
            if (qa == q.identity()) continue;  // normalized: vanishes on the kernel
            for (int k = 0; k < r; ++k)
                out[static_cast<std::size_t>(a) * r + k] =
                    cochain[static_cast<std::size_t>(qnz_pos[qa]) * r + k];
        }
    } else {
        out.assign(static_cast<std::size_t>(gv) * gv * r, 0);
        for (int a = 0; a < gv; ++a)
            for (int b = 0; b < gv; ++b) {
                int qa = projection[gnz[a]], qb = projection[gnz[b]];
                if (qa == q.identity() || qb == q.identity()) continue;
                for (int k = 0; k < r; ++k)
                    out[(static_cast<std::size_t>(a) * gv + b) * r + k] =
                        cochain[(static_cast<std::size_t>(qnz_pos[qa]) * qv + qnz_pos[qb]) * r +
                                k];
            }
    }
    return out;
}

namespace {

struct QuotWithReps {
    int ambient = 0;
    std::optional<LatticeQuotient> quot;
    std::vector<std::vector<mpz_class>> reps;

    const FgAbGroup& group() const { return quot->group(); }
    mpz_class order() const { return quot->group().finite_order(); }
};

QuotWithReps make_quot(IntMatrix num, IntMatrix den, int ambient) {
    QuotWithReps q;
    q.ambient = ambient;
    q.quot.emplace(num, den, ambient);
    q.reps = reps_from(*q.quot);
    return q;
}

mpz_class image_order(const QuotWithReps& target,
                      const std::vector<std::vector<mpz_class>>& images) {
    const int k = target.quot->coordinate_count();
    IntMatrix mat(k, static_cast<int>(images.size()) + k);
    for (std::size_t j = 0; j < images.size(); ++j) {
        auto c = target.quot->coords(images[j]);
        for (int i = 0; i < k; ++i) mat.at(i, static_cast<int>(j)) = c[i];
    }
    for (int i = 0; i < k; ++i) {
        const mpz_class& d = target.quot->orders()[i];
        if (d == 0) throw invariant_error("image order in an infinite group");
        mat.at(i, static_cast<int>(images.size()) + i) = d;
    }
    mpz_class sub_index = cokernel(mat).finite_order();
    return target.order() / sub_index;
}

}  // namespace

LongExactReport long_exact_check(const FiniteGroup& g, const TwoTermComplex& c) {
    ConeContext cone(g, c);
    auto& A = *cone.a;
    auto& B = *cone.b;

    QuotWithReps h0t = make_quot(
        cone.rel_block(1).cols() == 0 ? kernel_basis(cone.total_d(0))
                                      : preimage_kernel_gens(cone.total_d(0), cone.rel_block(1)),
        cone.rel_block(0), cone.dim(0));
    auto quot_of = [](CochainContext& ctx, int degree) {
        return make_quot(ctx.cocycle_gens(degree), ctx.coboundary_gens(degree),
                         ctx.dim(degree));
    };
    QuotWithReps h1a = quot_of(A, 1);
    QuotWithReps h1b = quot_of(B, 1);
    QuotWithReps h1t = make_quot(
        cone.rel_block(2).cols() == 0 ? kernel_basis(cone.total_d(1))
                                      : preimage_kernel_gens(cone.total_d(1), cone.rel_block(2)),
        IntMatrix::hstack(cone.total_d(0), cone.rel_block(1)), cone.dim(1));
    QuotWithReps h2a = quot_of(A, 2);
    QuotWithReps h2b = quot_of(B, 2);

    IntMatrix phi1 = cone.phi_block(1);
    IntMatrix phi2 = cone.phi_block(2);

    auto project_a = [&](const std::vector<mpz_class>& v, int adim) {
        return std::vector<mpz_class>(v.begin(), v.begin() + adim);
    };
    auto embed_b = [&](const std::vector<mpz_class>& v, int offset, int total) {
        std::vector<mpz_class> out(total, 0);
        for (std::size_t i = 0; i < v.size(); ++i) out[offset + i] = v[i];
        return out;
    };

    auto gamma0 = [&](const std::vector<mpz_class>& v) { return project_a(v, A.dim(1)); };
    auto alpha1 = [&](const std::vector<mpz_class>& v) { return phi1.apply(v); };
    auto beta1 = [&](const std::vector<mpz_class>& v) {
        return embed_b(v, A.dim(2), cone.dim(1));
    };
    auto gamma1 = [&](const std::vector<mpz_class>& v) { return project_a(v, A.dim(2)); };
    auto alpha2 = [&](const std::vector<mpz_class>& v) { return phi2.apply(v); };

    auto mapped = [](const std::vector<std::vector<mpz_class>>& reps, auto&& f) {
        std::vector<std::vector<mpz_class>> out;
        out.reserve(reps.size());
        for (const auto& v : reps) out.push_back(f(v));
        return out;
    };

    LongExactReport report;
    report.groups = {h0t.group().to_string(), h1a.group().to_string(),
                     h1b.group().to_string(), h1t.group().to_string(),
                     h2a.group().to_string(), h2b.group().to_string()};

    struct Spot {
        std::string at;
        const QuotWithReps* source;
        const QuotWithReps* middle;
        const QuotWithReps* target;
        std::function<std::vector<mpz_class>(const std::vector<mpz_class>&)> in_map;
        std::function<std::vector<mpz_class>(const std::vector<mpz_class>&)> out_map;
    };
    std::vector<Spot> spots = {
        {"H1(M-1)", &h0t, &h1a, &h1b, gamma0, alpha1},
        {"H1(M0)", &h1a, &h1b, &h1t, alpha1, beta1},
        {"H1(total)", &h1b, &h1t, &h2a, beta1, gamma1},
        {"H2(M-1)", &h1t, &h2a, &h2b, gamma1, alpha2},
    };

    report.all_exact = true;
    for (const auto& spot : spots) {
        LongExactReport::Junction j;
        j.at = spot.at;
        auto in_images = mapped(spot.source->reps, spot.in_map);
        j.image_order = image_order(*spot.middle, in_images);
        mpz_class out_image = image_order(*spot.target, mapped(spot.middle->reps, spot.out_map));
        j.kernel_order = spot.middle->order() / out_image;
        j.composite_zero = true;
        for (const auto& v : in_images)
            if (!spot.target->quot->is_zero_class(spot.out_map(v))) j.composite_zero = false;
        j.exact = j.composite_zero && j.image_order == j.kernel_order;
        report.all_exact = report.all_exact && j.exact;
        report.junctions.push_back(std::move(j));
    }
    return report;
}

}  // namespace asa
