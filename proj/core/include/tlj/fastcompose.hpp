#ifndef TLJ_FASTCOMPOSE_HPP
#define TLJ_FASTCOMPOSE_HPP

#include "tlj/morphism.hpp"

namespace tlj {

/// Composition of integer-coefficient Laurent-polynomial morphisms via
/// Kronecker substitution: every coefficient is evaluated at q = 2^B for a
/// digit width B large enough (computed from exact height/degree bounds of
/// the inputs) that the packed integers add and multiply without digit
/// overflow, so the exact polynomial result can be read back off the digits.
/// One term-pair then costs a single big-integer multiply instead of a
/// polynomial multiply. Results are identical to compose(g, f).
Morphism<LaurentPoly> fast_compose(const Morphism<LaurentPoly>& g,
                                   const Morphism<LaurentPoly>& f);

/// Same device for the tensor product.
Morphism<LaurentPoly> fast_tensor(const Morphism<LaurentPoly>& f,
                                  const Morphism<LaurentPoly>& g);

/// A morphism over Q(q) kept as an integer-coefficient numerator morphism
/// and a single scalar denominator. The workhorse representation for the
/// generic-q composition pipelines (Jones-Wenzl, nets, recoupling), where
/// per-term rational reduction would dominate the running time.
struct ClearedMorphism {
    Morphism<LaurentPoly> num;
    LaurentPoly den = LaurentPoly::one();

    int source() const { return num.source; }
    int target() const { return num.target; }

    static ClearedMorphism from(const Morphism<RatScalar>& m) {
        auto [p, d] = clear_denominators(m);
        return {std::move(p), std::move(d)};
    }

    Morphism<RatScalar> to_rational() const { return with_denominator(num, den); }

    /// Reduce each coefficient against the denominator and re-clear; keeps
    /// the denominator from growing across long pipelines.
    void normalize() { *this = from(to_rational()); }
};

inline ClearedMorphism compose(const ClearedMorphism& g, const ClearedMorphism& f) {
    return {fast_compose(g.num, f.num), g.den * f.den};
}

inline ClearedMorphism tensor(const ClearedMorphism& f, const ClearedMorphism& g) {
    return {fast_tensor(f.num, g.num), f.den * g.den};
}

}  // namespace tlj

#endif
