#include "tlj/fusion.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "tlj/linalg.hpp"

namespace tlj {

bool q_admissible(int a, int b, int c, const RootContext& ctx) {
    if (!admissible(a, b, c)) return false;
    if (a > ctx.max_label() || b > ctx.max_label() || c > ctx.max_label()) return false;
    return a + b + c < 2 * ctx.n - 2;
}

bool negligible_vertex(int a, int b, int c, const RootContext& ctx) {
    if (!admissible(a, b, c))
        throw NotAdmissible("negligible_vertex: triple not admissible");
    return a + b + c >= 2 * ctx.n - 2;
}

int truncated_sum(int a, int b, const RootContext& ctx) {
    if (a + b < ctx.n - 1) return a + b;
    return static_cast<int>(2 * ctx.n) - (a + b) - 4;
}

std::vector<std::pair<int, CycloScalar>> truncated_fusion(int a, int b,
                                                          const RootContext& ctx) {
    if (a < 0 || a > ctx.max_label() || b < 0 || b > ctx.max_label())
        throw LabelOutOfRange("truncated_fusion: labels must lie in 0..n-2");
    std::vector<std::pair<int, CycloScalar>> out;
    const int top = truncated_sum(a, b, ctx);
    for (int k = std::abs(a - b); k <= top; k += 2)
        out.emplace_back(k, ctx.at(qint(k + 1) / theta_formula(a, b, k)));
    return out;
}

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw NotAdmissible(what);
}

}  // namespace

Morphism<RatScalar> h_net(int a, int b, int c, int d, int j) {
    require(admissible(a, b, j) && admissible(c, d, j), "h_net: vertex triples");
    // left vertex emits b up and j right; right vertex absorbs j and d into c.
    Morphism<RatScalar> left = tensor(bar(vertex_morphism(b, j, a)), identity_morphism(d));
    Morphism<RatScalar> right = tensor(identity_morphism(b), vertex_morphism(j, d, c));
    return compose(right, left);
}

Morphism<RatScalar> i_net(int a, int b, int c, int d, int i) {
    require(admissible(a, d, i) && admissible(b, c, i), "i_net: vertex triples");
    return compose(bar(vertex_morphism(b, c, i)), vertex_morphism(a, d, i));
}

Morphism<CycloScalar> h_net_at_root(int a, int b, int c, int d, int j,
                                    const RootContext& ctx) {
    require(admissible(a, b, j) && admissible(c, d, j), "h_net: vertex triples");
    auto vl = specialize(vertex_morphism(b, j, a), ctx.n);
    auto vr = specialize(vertex_morphism(j, d, c), ctx.n);
    auto left = tensor(bar(vl), identity_morphism(d, ctx.one()));
    auto right = tensor(identity_morphism(b, ctx.one()), vr);
    return compose(right, left);
}

Morphism<CycloScalar> i_net_at_root(int a, int b, int c, int d, int i,
                                    const RootContext& ctx) {
    require(admissible(a, d, i) && admissible(b, c, i), "i_net: vertex triples");
    return compose(bar(specialize(vertex_morphism(b, c, i), ctx.n)),
                   specialize(vertex_morphism(a, d, i), ctx.n));
}

std::vector<int> recoupling_range(int a, int b, int c, int d) {
    std::vector<int> out;
    for (int i = std::max(std::abs(a - d), std::abs(b - c)); i <= std::min(a + d, b + c);
         i += 2)
        if (admissible(a, d, i) && admissible(b, c, i)) out.push_back(i);
    return out;
}

std::vector<int> recoupling_range(int a, int b, int c, int d, const RootContext& ctx) {
    std::vector<int> out;
    for (int i = 0; i <= ctx.max_label(); ++i)
        if (q_admissible(a, d, i, ctx) && q_admissible(b, c, i, ctx)) out.push_back(i);
    return out;
}

namespace {

std::shared_mutex sixj_mutex;
std::map<std::tuple<int, int, int, int, int, int>, RatScalar> sixj_generic_cache;
std::map<std::tuple<long, int, int, int, int, int, int>, CycloScalar> sixj_root_cache;

RatScalar sixj_generic_compute(int a, int b, int i, int c, int d, int j) {
    require(admissible(a, b, j) && admissible(c, d, j) && admissible(a, d, i) &&
                admissible(b, c, i),
            "sixj: labels not admissible");
    Morphism<RatScalar> h = h_net(a, b, c, d, j);
    Morphism<RatScalar> tree = i_net(a, b, c, d, i);
    Morphism<RatScalar> dual_tree = bar(tree);
    RatScalar gram = trace(compose(dual_tree, tree));
    if (gram.is_zero()) throw DegenerateGram("generic Gram diagonal vanished");
    return trace(compose(dual_tree, h)) / gram;
}

}  // namespace

CycloScalar sixj_at_root_direct(int a, int b, int i, int c, int d, int j,
                                const RootContext& ctx) {
    require(q_admissible(a, b, j, ctx) && q_admissible(c, d, j, ctx) &&
                q_admissible(a, d, i, ctx) && q_admissible(b, c, i, ctx),
            "sixj: labels not q-admissible");
    Morphism<CycloScalar> h = h_net_at_root(a, b, c, d, j, ctx);
    Morphism<CycloScalar> tree = i_net_at_root(a, b, c, d, i, ctx);
    Morphism<CycloScalar> dual_tree = bar(tree);
    CycloScalar gram = trace(compose(dual_tree, tree));
    if (gram.is_zero())
        throw DegenerateGram("Gram diagonal vanished for q-admissible labels");
    return trace(compose(dual_tree, h)) / gram;
}

namespace {

CycloScalar sixj_root_compute(int a, int b, int i, int c, int d, int j,
                              const RootContext& ctx) {
    require(q_admissible(a, b, j, ctx) && q_admissible(c, d, j, ctx) &&
                q_admissible(a, d, i, ctx) && q_admissible(b, c, i, ctx),
            "sixj: labels not q-admissible");
    // Generic computation specialized on demand; direct cyclotomic evaluation
    // when the generic value is not defined at this root.
    try {
        return ctx.at(sixj_generic(a, b, i, c, d, j));
    } catch (const DenominatorVanishes&) {
    } catch (const DegenerateGram&) {
    }
    return sixj_at_root_direct(a, b, i, c, d, j, ctx);
}

}  // namespace

RatScalar sixj_generic(int a, int b, int i, int c, int d, int j) {
    const auto key = std::make_tuple(a, b, i, c, d, j);
    {
        std::shared_lock lock(sixj_mutex);
        auto it = sixj_generic_cache.find(key);
        if (it != sixj_generic_cache.end()) return it->second;
    }
    RatScalar v = sixj_generic_compute(a, b, i, c, d, j);
    std::unique_lock lock(sixj_mutex);
    return sixj_generic_cache.emplace(key, std::move(v)).first->second;
}

CycloScalar sixj(int a, int b, int i, int c, int d, int j, const RootContext& ctx) {
    const auto key = std::make_tuple(ctx.n, a, b, i, c, d, j);
    {
        std::shared_lock lock(sixj_mutex);
        auto it = sixj_root_cache.find(key);
        if (it != sixj_root_cache.end()) return it->second;
    }
    CycloScalar v = sixj_root_compute(a, b, i, c, d, j, ctx);
    std::unique_lock lock(sixj_mutex);
    return sixj_root_cache.emplace(key, std::move(v)).first->second;
}

namespace {

template <class R, class HFn, class IFn>
R sixj_dense_impl(int a, int b, int c, int d, int i, const std::vector<int>& range,
                  const Matrix<R>& extra_columns, HFn&& hfn, IFn&& ifn) {
    // Column per admissible middle label (plus any extra spanning columns),
    // one row per Catalan basis diagram.
    auto basis = pairing_basis(a + d, b + c);
    const size_t cols = range.size() + extra_columns.size();
    Matrix<R> m(basis.size(), std::vector<R>(cols));
    std::vector<R> rhs(basis.size());
    auto h = hfn();
    for (size_t r = 0; r < basis.size(); ++r) rhs[r] = h.coefficient(basis[r]);
    for (size_t col = 0; col < range.size(); ++col) {
        auto tree = ifn(range[col]);
        for (size_t r = 0; r < basis.size(); ++r) m[r][col] = tree.coefficient(basis[r]);
    }
    for (size_t x = 0; x < extra_columns.size(); ++x)
        for (size_t r = 0; r < basis.size(); ++r)
            m[r][range.size() + x] = extra_columns[x][r];
    auto sol = solve_unique(m, rhs);
    if (!sol) throw Error("sixj dense solve: no unique expansion");
    for (size_t col = 0; col < range.size(); ++col)
        if (range[col] == i) return (*sol)[col];
    throw NotAdmissible("sixj dense solve: middle label outside the recoupling range");
}

}  // namespace

RatScalar sixj_generic_dense(int a, int b, int i, int c, int d, int j) {
    require(admissible(a, b, j) && admissible(c, d, j) && admissible(a, d, i) &&
                admissible(b, c, i),
            "sixj: labels not admissible");
    return sixj_dense_impl<RatScalar>(
        a, b, c, d, i, recoupling_range(a, b, c, d), {},
        [&] { return h_net(a, b, c, d, j); },
        [&](int mid) { return i_net(a, b, c, d, mid); });
}

bool is_negligible(const Morphism<CycloScalar>& f) {
    if (f.is_zero()) return true;
    const CycloScalar one = CycloScalar::one(f.terms.begin()->second.order());
    for (const auto& g : pairing_basis(f.target, f.source)) {
        Morphism<CycloScalar> unit(f.target, f.source);
        unit.add_term(g, one);
        if (!trace(compose(unit, f)).is_zero()) return false;
    }
    return true;
}

Matrix<CycloScalar> negligible_kernel(int m, int k, const RootContext& ctx) {
    auto basis = pairing_basis(m, k);
    auto rev = pairing_basis(k, m);
    Matrix<CycloScalar> pairing(rev.size(), std::vector<CycloScalar>(basis.size()));
    for (size_t r = 0; r < rev.size(); ++r) {
        Morphism<CycloScalar> g(k, m);
        g.add_term(rev[r], ctx.one());
        for (size_t t = 0; t < basis.size(); ++t) {
            Morphism<CycloScalar> f(m, k);
            f.add_term(basis[t], ctx.one());
            pairing[r][t] = trace(compose(g, f));
        }
    }
    return nullspace(pairing, ctx.one());
}

CycloScalar sixj_dense(int a, int b, int i, int c, int d, int j,
                       const RootContext& ctx) {
    require(q_admissible(a, b, j, ctx) && q_admissible(c, d, j, ctx) &&
                q_admissible(a, d, i, ctx) && q_admissible(b, c, i, ctx),
            "sixj: labels not q-admissible");
    // At the root the recoupling identity lives in the negligible quotient:
    // augment the tree columns with a basis of the negligible subspace.
    return sixj_dense_impl<CycloScalar>(
        a, b, c, d, i, recoupling_range(a, b, c, d, ctx),
        negligible_kernel(a + d, b + c, ctx),
        [&] { return h_net_at_root(a, b, c, d, j, ctx); },
        [&](int mid) { return i_net_at_root(a, b, c, d, mid, ctx); });
}

bool orthogonality_check(int a, int b, int c, int d, int j, int k,
                         const RootContext& ctx) {
    require(q_admissible(a, b, j, ctx) && q_admissible(c, d, j, ctx) &&
                q_admissible(a, b, k, ctx) && q_admissible(c, d, k, ctx),
            "orthogonality_check: labels not q-admissible");
    CycloScalar sum = ctx.zero();
    for (int i : recoupling_range(a, b, c, d, ctx)) {
        sum += sixj(a, b, i, c, d, j, ctx) * sixj(d, a, k, b, c, i, ctx);
    }
    CycloScalar expect = (j == k) ? ctx.one() : ctx.zero();
    return sum == expect;
}

}  // namespace tlj
