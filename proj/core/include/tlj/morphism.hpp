#ifndef TLJ_MORPHISM_HPP
#define TLJ_MORPHISM_HPP

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tlj/cyclotomic.hpp"
#include "tlj/errors.hpp"
#include "tlj/pairing.hpp"
#include "tlj/ratfun.hpp"

namespace tlj {

/// Scalar interop: every coefficient ring R used in a Morphism provides
/// one/zero "like" an existing sample (CycloScalar needs its order), the
/// loop value d = [2], and the bar map q -> q^{-1}.
template <class R>
struct ScalarOps;

template <>
struct ScalarOps<RatScalar> {
    static RatScalar one_like(const RatScalar&) { return RatScalar::one(); }
    static RatScalar loop_like(const RatScalar&) { return loop_d(); }
    static RatScalar bar(const RatScalar& x) { return x.bar(); }
};

template <>
struct ScalarOps<LaurentPoly> {
    static LaurentPoly one_like(const LaurentPoly&) { return LaurentPoly::one(); }
    static LaurentPoly loop_like(const LaurentPoly&) {
        LaurentPoly d;
        d.add_term(1, 1);
        d.add_term(-1, 1);
        return d;
    }
    static LaurentPoly bar(const LaurentPoly& x) { return x.bar(); }
};

template <>
struct ScalarOps<CycloScalar> {
    static CycloScalar one_like(const CycloScalar& s) { return CycloScalar::one(s.order()); }
    static CycloScalar loop_like(const CycloScalar& s) {
        long m = s.order();
        return CycloScalar::zeta_power(m, 1) + CycloScalar::zeta_power(m, -1);
    }
    static CycloScalar bar(const CycloScalar& x) { return x.bar(); }
};

/// A formal TL diagram: finite linear combination of loop-free noncrossing
/// pairings with coefficients in R. Zero coefficients are never stored.
template <class R>
struct Morphism {
    int source = 0;
    int target = 0;
    std::map<Pairing, R> terms;

    Morphism() = default;
    Morphism(int src, int tgt) : source(src), target(tgt) {}

    bool is_zero() const { return terms.empty(); }

    void add_term(const Pairing& p, const R& c) {
        if (c.is_zero()) return;
        auto it = terms.find(p);
        if (it == terms.end()) {
            terms.emplace(p, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    R coefficient(const Pairing& p) const {
        auto it = terms.find(p);
        if (it != terms.end()) return it->second;
        return R{};
    }

    Morphism operator+(const Morphism& o) const {
        if (source != o.source || target != o.target)
            throw ShapeMismatch("morphism addition shape mismatch");
        Morphism r = *this;
        for (const auto& [p, c] : o.terms) r.add_term(p, c);
        return r;
    }

    Morphism operator-(const Morphism& o) const { return *this + o.scaled_neg(); }

    Morphism scaled(const R& c) const {
        Morphism r(source, target);
        if (c.is_zero()) return r;
        for (const auto& [p, k] : terms) r.add_term(p, k * c);
        return r;
    }

    Morphism scaled_neg() const {
        Morphism r(source, target);
        for (const auto& [p, k] : terms) r.terms.emplace(p, -k);
        return r;
    }

    bool operator==(const Morphism& o) const {
        return source == o.source && target == o.target && terms == o.terms;
    }
    bool operator!=(const Morphism& o) const { return !(*this == o); }

    /// Greatest through-strand count over the support; -1 for the zero morphism.
    int through_strands() const {
        int best = -1;
        for (const auto& [p, c] : terms) best = std::max(best, p.through_strands());
        return best;
    }

    std::string to_string() const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [p, c] : terms) {
            if (!first) os << " + ";
            first = false;
            std::string s = c.to_string();
            bool fraction = !s.empty() && s.front() == '(' && s.back() == ')';
            if (!fraction && (s.find(' ') != std::string::npos || s.front() == '-'))
                s = "(" + s + ")";
            os << s << " * " << p.to_string();
        }
        return os.str();
    }
};

namespace detail {

/// Stacks pairing g on top of pairing f, tracing paths through the middle
/// interface; returns the composite pairing's arcs and the closed-loop count.
/// f: m -> n, g: n -> k.
struct PairingComposer {
    std::vector<int> fmatch, gmatch;  // partner tables rebuilt per shape
    std::vector<char> visited;

    // Returns loops; fills arcs of the composite (m -> k).
    int compose(const Pairing& f, const Pairing& g,
                std::vector<std::pair<int, int>>& arcs) {
        const int m = f.bottom, n = f.top, k = g.top;
        fmatch.assign(m + n, -1);
        for (const auto& [a, b] : f.arcs) {
            fmatch[a] = b;
            fmatch[b] = a;
        }
        gmatch.assign(n + k, -1);
        for (const auto& [a, b] : g.arcs) {
            gmatch[a] = b;
            gmatch[b] = a;
        }
        visited.assign(n, 0);
        arcs.clear();

        // External nodes: 0..m-1 (f bottom) and m..m+k-1 (g top).
        auto walk = [&](int ext) -> int {
            bool in_f = ext < m;
            int cur = in_f ? fmatch[ext] : gmatch[(ext - m) + n];
            // cur is a point of f (if in_f) or of g; mid points: f top = index
            // >= m in f, g bottom = index < n in g.
            bool cur_in_f = in_f;
            while (true) {
                if (cur_in_f) {
                    if (cur < m) return cur;  // external bottom
                    int mid = cur - m;
                    visited[mid] = 1;
                    cur = gmatch[mid];
                    cur_in_f = false;
                } else {
                    if (cur >= n) return m + (cur - n);  // external top
                    visited[cur] = 1;
                    cur = fmatch[cur + m];
                    cur_in_f = true;
                }
            }
        };

        std::vector<char> done(m + k, 0);
        for (int ext = 0; ext < m + k; ++ext) {
            if (done[ext]) continue;
            int other = walk(ext);
            done[ext] = 1;
            done[other] = 1;
            arcs.emplace_back(ext, other);
        }

        // Remaining middle points lie on closed loops alternating f/g arcs.
        int loops = 0;
        for (int mid = 0; mid < n; ++mid) {
            if (visited[mid]) continue;
            ++loops;
            int cur = mid;
            bool use_f = true;
            do {
                visited[cur] = 1;
                cur = use_f ? fmatch[cur + m] - m : gmatch[cur];
                use_f = !use_f;
            } while (cur != mid || !use_f);
        }
        return loops;
    }
};

}  // namespace detail

/// compose(g, f): stack g on top of f (g after f), removing each closed loop
/// at a factor of d = [2].
template <class R>
Morphism<R> compose(const Morphism<R>& g, const Morphism<R>& f) {
    if (g.source != f.target)
        throw ShapeMismatch("compose: middle interface mismatch (" +
                            std::to_string(g.source) + " vs " + std::to_string(f.target) + ")");
    Morphism<R> out(f.source, g.target);
    if (f.is_zero() || g.is_zero()) return out;

    const R d = ScalarOps<R>::loop_like(f.terms.begin()->second);
    std::vector<R> dpow{ScalarOps<R>::one_like(d)};

    detail::PairingComposer comp;
    std::vector<std::pair<int, int>> arcs;
    for (const auto& [pf, cf] : f.terms) {
        for (const auto& [pg, cg] : g.terms) {
            int loops = comp.compose(pf, pg, arcs);
            while (static_cast<int>(dpow.size()) <= loops) dpow.push_back(dpow.back() * d);
            R coeff = cf * cg;
            if (loops > 0) coeff *= dpow[static_cast<size_t>(loops)];
            out.add_term(Pairing::make(f.source, g.target, arcs), coeff);
        }
    }
    return out;
}

/// Horizontal juxtaposition, f to the left of g.
template <class R>
Morphism<R> tensor(const Morphism<R>& f, const Morphism<R>& g) {
    Morphism<R> out(f.source + g.source, f.target + g.target);
    const int m = f.source, n = f.target;
    const int mp = g.source, np = g.target;
    auto map_f = [&](int p) { return p < m ? p : (m + mp) + (p - m); };
    auto map_g = [&](int p) { return p < mp ? m + p : (m + mp + n) + (p - mp); };
    for (const auto& [pf, cf] : f.terms) {
        for (const auto& [pg, cg] : g.terms) {
            std::vector<std::pair<int, int>> arcs;
            arcs.reserve(pf.arcs.size() + pg.arcs.size());
            for (const auto& [a, b] : pf.arcs) arcs.emplace_back(map_f(a), map_f(b));
            for (const auto& [a, b] : pg.arcs) arcs.emplace_back(map_g(a), map_g(b));
            out.add_term(Pairing::make(m + mp, n + np, std::move(arcs)), cf * cg);
        }
    }
    return out;
}

/// 180-degree rotation of every diagram; coefficients through q -> q^{-1}.
template <class R>
Morphism<R> dual(const Morphism<R>& f) {
    const int m = f.source, n = f.target;
    Morphism<R> out(n, m);
    for (const auto& [p, c] : f.terms) {
        std::vector<std::pair<int, int>> arcs;
        arcs.reserve(p.arcs.size());
        auto map = [&](int x) {
            // bottom i -> top (m-1-i); top j -> bottom (n-1-j)
            return x < m ? n + (m - 1 - x) : (n - 1 - (x - m));
        };
        for (const auto& [a, b] : p.arcs) arcs.emplace_back(map(a), map(b));
        out.add_term(Pairing::make(n, m, std::move(arcs)), ScalarOps<R>::bar(c));
    }
    return out;
}

/// The anti-involution: reflect in the horizontal midline, coefficients
/// through q -> q^{-1}.
template <class R>
Morphism<R> bar(const Morphism<R>& f) {
    const int m = f.source, n = f.target;
    Morphism<R> out(n, m);
    for (const auto& [p, c] : f.terms) {
        std::vector<std::pair<int, int>> arcs;
        arcs.reserve(p.arcs.size());
        auto map = [&](int x) { return x < m ? n + x : x - m; };
        for (const auto& [a, b] : p.arcs) arcs.emplace_back(map(a), map(b));
        out.add_term(Pairing::make(n, m, std::move(arcs)), ScalarOps<R>::bar(c));
    }
    return out;
}

/// Markov trace: close all strands around the outside; Hom(0,0) = scalars.
template <class R>
R trace(const Morphism<R>& f) {
    if (f.source != f.target) throw ShapeMismatch("trace of non-endomorphism");
    R out{};
    if (f.is_zero()) return out;
    const int n = f.source;
    const R d = ScalarOps<R>::loop_like(f.terms.begin()->second);
    for (const auto& [p, c] : f.terms) {
        // Union the pairing with the closure arcs i ~ n+i and count cycles.
        std::vector<int> match(2 * n);
        for (const auto& [a, b] : p.arcs) {
            match[a] = b;
            match[b] = a;
        }
        std::vector<char> vis(2 * n, 0);
        int loops = 0;
        for (int s = 0; s < 2 * n; ++s) {
            if (vis[s]) continue;
            ++loops;
            int cur = s;
            while (!vis[cur]) {
                vis[cur] = 1;
                int via_arc = match[cur];
                vis[via_arc] = 1;
                cur = via_arc < n ? via_arc + n : via_arc - n;  // closure arc
            }
        }
        R term = c;
        for (int i = 0; i < loops; ++i) term *= d;
        out += term;
    }
    return out;
}

/// Close only the rightmost strand.
template <class R>
Morphism<R> partial_trace(const Morphism<R>& f) {
    if (f.source != f.target) throw ShapeMismatch("partial_trace of non-endomorphism");
    if (f.source < 1) throw ShapeMismatch("partial_trace needs at least one strand");
    const int n = f.source;
    Morphism<R> out(n - 1, n - 1);
    if (f.is_zero()) return out;
    const R d = ScalarOps<R>::loop_like(f.terms.begin()->second);
    for (const auto& [p, c] : f.terms) {
        // Connect bottom n-1 to top 2n-1; if they were already matched to each
        // other this closes a loop.
        int pb = p.match(n - 1);
        int pt = p.match(2 * n - 1);
        std::vector<std::pair<int, int>> arcs;
        R coeff = c;
        // Old bottom i stays at i; old top t = n + j lands at (n-1) + j.
        auto remap = [&](int x) { return x < n ? x : x - 1; };
        if (pb == 2 * n - 1) {
            coeff *= d;
            for (const auto& [a, b] : p.arcs)
                if (a != n - 1) arcs.emplace_back(remap(a), remap(b));
        } else {
            for (const auto& [a, b] : p.arcs) {
                if (a == n - 1 || b == n - 1 || a == 2 * n - 1 || b == 2 * n - 1) continue;
                arcs.emplace_back(remap(a), remap(b));
            }
            arcs.emplace_back(remap(pb), remap(pt));
        }
        out.add_term(Pairing::make(n - 1, n - 1, std::move(arcs)), coeff);
    }
    return out;
}

/// Simple diagrams with coefficient one.
template <class R>
Morphism<R> identity_morphism(int n, const R& one) {
    Morphism<R> out(n, n);
    out.add_term(identity_pairing(n), one);
    return out;
}

template <class R>
Morphism<R> generator_u(int i, int n, const R& one) {
    Morphism<R> out(n, n);
    out.add_term(u_pairing(i, n), one);
    return out;
}

template <class R>
Morphism<R> cup(int i, int n, const R& one) {
    Morphism<R> out(n - 2, n);
    out.add_term(cup_pairing(i, n), one);
    return out;
}

template <class R>
Morphism<R> cap(int i, int n, const R& one) {
    Morphism<R> out(n, n - 2);
    out.add_term(cap_pairing(i, n), one);
    return out;
}

template <class R>
Morphism<R> unit_eta(int a, const R& one) {
    Morphism<R> out(0, 2 * a);
    out.add_term(eta_pairing(a), one);
    return out;
}

// RatScalar shorthands.
inline Morphism<RatScalar> identity_morphism(int n) {
    return identity_morphism(n, RatScalar::one());
}
inline Morphism<RatScalar> generator_u(int i, int n) {
    return generator_u(i, n, RatScalar::one());
}
inline Morphism<RatScalar> cup(int i, int n) { return cup(i, n, RatScalar::one()); }
inline Morphism<RatScalar> cap(int i, int n) { return cap(i, n, RatScalar::one()); }
inline Morphism<RatScalar> unit_eta(int a) { return unit_eta(a, RatScalar::one()); }

/// Coefficient-wise evaluation at q = zeta_{2n}.
inline Morphism<CycloScalar> specialize(const Morphism<RatScalar>& f, long n) {
    Morphism<CycloScalar> out(f.source, f.target);
    for (const auto& [p, c] : f.terms) out.add_term(p, specialize(c, n));
    return out;
}

/// Clears denominators: returns (P, D) with f = P / D and P over LaurentPoly.
inline std::pair<Morphism<LaurentPoly>, LaurentPoly> clear_denominators(
    const Morphism<RatScalar>& f) {
    LaurentPoly den = LaurentPoly::one();
    for (const auto& [p, c] : f.terms) {
        const LaurentPoly& d = c.den();
        if (d.is_one()) continue;
        LaurentPoly g = laurent_gcd(den, d);
        den = den * laurent_divexact(d, g);
    }
    Morphism<LaurentPoly> out(f.source, f.target);
    for (const auto& [p, c] : f.terms)
        out.add_term(p, c.num() * laurent_divexact(den, c.den()));
    return {std::move(out), std::move(den)};
}

/// Divides through: P/D as a RatScalar morphism.
inline Morphism<RatScalar> with_denominator(const Morphism<LaurentPoly>& p,
                                            const LaurentPoly& den) {
    Morphism<RatScalar> out(p.source, p.target);
    for (const auto& [pr, c] : p.terms) out.add_term(pr, RatScalar(c, den));
    return out;
}

}  // namespace tlj

#endif
