#include "tlj/jones_wenzl.hpp"

#include <atomic>
#include <deque>
#include <mutex>
#include <shared_mutex>

#include "tlj/errors.hpp"
#include "tlj/fastcompose.hpp"

namespace tlj {

namespace {

std::shared_mutex jw_mutex;

struct Entry {
    Morphism<RatScalar> rational;
    Morphism<LaurentPoly> num;
    LaurentPoly den;
};

std::deque<Entry> jw_cache;  // jw_cache[n] = p_n; deque keeps references stable
std::atomic<int> memo_limit{10};

Entry make_entry(Morphism<RatScalar> m) {
    auto [num, den] = clear_denominators(m);
    return {std::move(m), std::move(num), std::move(den)};
}

Morphism<LaurentPoly> poly_simple(const Pairing& p) {
    Morphism<LaurentPoly> out(p.bottom, p.top);
    out.add_term(p, LaurentPoly::one());
    return out;
}

// p_{n+1} = p_n ox 1 - mu_n (p_n ox 1) U_n (p_n ox 1), mu_n = [n]/[n+1].
// Runs over cleared coefficients, with one rational re-normalization at the
// end of the step to keep the common denominator reduced.
Entry wenzl_step(const Entry& pn, int n) {
    Morphism<LaurentPoly> a = fast_tensor(pn.num, poly_simple(identity_pairing(1)));
    Morphism<LaurentPoly> ua = fast_compose(poly_simple(u_pairing(n, n + 1)), a);
    Morphism<LaurentPoly> aua = fast_compose(a, ua);
    const LaurentPoly qn = qint(n).num();
    const LaurentPoly qn1 = qint(n + 1).num();
    // (a/D) - ([n]/[n+1]) aua/D^2 = (a D [n+1] - [n] aua) / ([n+1] D^2)
    Morphism<LaurentPoly> num = a.scaled(pn.den * qn1) - aua.scaled(qn);
    LaurentPoly den = qn1 * pn.den * pn.den;
    return make_entry(with_denominator(num, den));
}

const Entry& jw_entry(int n) {
    if (n < 0) throw IndexOutOfRange("jw: negative index");
    {
        std::shared_lock lock(jw_mutex);
        if (n < static_cast<int>(jw_cache.size())) return jw_cache[static_cast<size_t>(n)];
    }
    std::unique_lock lock(jw_mutex);
    if (jw_cache.empty()) {
        jw_cache.push_back(make_entry(identity_morphism(0)));  // p_0: empty diagram
        jw_cache.push_back(make_entry(identity_morphism(1)));  // p_1
    }
    const int limit = std::max(memo_limit.load(), 1);
    if (n > limit)
        throw IndexOutOfRange("jw(" + std::to_string(n) +
                              ") exceeds the memo limit " + std::to_string(limit) +
                              "; raise it with set_jw_memo_limit");
    while (static_cast<int>(jw_cache.size()) <= n) {
        int k = static_cast<int>(jw_cache.size()) - 1;
        jw_cache.push_back(wenzl_step(jw_cache[static_cast<size_t>(k)], k));
    }
    return jw_cache[static_cast<size_t>(n)];
}

}  // namespace

int jw_memo_limit() { return memo_limit.load(); }
void set_jw_memo_limit(int n) { memo_limit.store(n); }

const Morphism<RatScalar>& jw(int n) { return jw_entry(n).rational; }

std::pair<Morphism<LaurentPoly>, LaurentPoly> jw_cleared(int n) {
    const Entry& e = jw_entry(n);
    return {e.num, e.den};
}

Morphism<CycloScalar> jw_at_root(int k, long n) {
    if (n < 2) throw IndexOutOfRange("jw_at_root: root parameter must be >= 2");
    if (k < 0 || k > n - 1)
        throw LabelOutOfRange("p_" + std::to_string(k) + " is not defined at q = zeta_" +
                              std::to_string(2 * n) + " (only k <= n-1)");
    return specialize(jw(k), n);
}

JwReport check_jw(const Morphism<RatScalar>& p) {
    JwReport report;
    if (p.source != p.target) return report;
    const int n = p.source;

    report.identity_coefficient_one = p.coefficient(identity_pairing(n)).is_one();

    auto [cleared, den] = clear_denominators(p);
    report.cap_kill = true;
    report.cup_kill = true;
    for (int i = 1; i < n; ++i) {
        if (!fast_compose(poly_simple(cap_pairing(i, n)), cleared).is_zero())
            report.cap_kill = false;
        if (!fast_compose(cleared, poly_simple(cup_pairing(i, n))).is_zero())
            report.cup_kill = false;
    }

    // Idempotency over cleared denominators: p = P/D, check P o P = D * P.
    report.idempotent = fast_compose(cleared, cleared) == cleared.scaled(den);
    return report;
}

bool absorb_check(int n, int m, int offset) {
    if (m >= n || m < 0 || offset < 0 || offset + m > n)
        throw ShapeMismatch("absorb_check: invalid placement");
    auto [pm, dm] = jw_cleared(m);
    auto [pn, dn] = jw_cleared(n);
    Morphism<LaurentPoly> mid = fast_tensor(
        fast_tensor(poly_simple(identity_pairing(offset)), pm),
        poly_simple(identity_pairing(n - m - offset)));
    // (mid/dm) o (pn/dn) = pn/dn  <=>  mid o pn = dm * pn, and the mirror.
    return fast_compose(mid, pn) == pn.scaled(dm) &&
           fast_compose(pn, mid) == pn.scaled(dm);
}

}  // namespace tlj
