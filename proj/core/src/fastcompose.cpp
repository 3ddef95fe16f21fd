#include "tlj/fastcompose.hpp"

#include <algorithm>
#include <vector>

#include "tlj/errors.hpp"

namespace tlj {

namespace {

// One input coefficient, scaled to integer form and evaluated at q = 2^B
// (after a uniform exponent shift).
struct PackedCoeff {
    mpz_class value;
};

struct PackedSide {
    std::vector<const Pairing*> pairings;
    std::vector<std::vector<std::pair<long, mpz_class>>> scaled;  // exp, int coeff
    mpz_class den_lcm = 1;  // common denominator factored out of all coefficients
    long shift = 0;         // min exponent across all coefficients
    int height_bits = 1;    // max bits over scaled coefficients
    int max_terms = 1;

    explicit PackedSide(const Morphism<LaurentPoly>& m) {
        pairings.reserve(m.terms.size());
        scaled.reserve(m.terms.size());
        bool first = true;
        for (const auto& [p, c] : m.terms) {
            for (const auto& [e, q] : c.terms())
                mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                        q.get_den().get_mpz_t());
            if (first || c.min_exp() < shift) shift = c.min_exp();
            first = false;
        }
        for (const auto& [p, c] : m.terms) {
            pairings.push_back(&p);
            std::vector<std::pair<long, mpz_class>> poly;
            poly.reserve(c.terms().size());
            for (const auto& [e, q] : c.terms()) {
                mpz_class scaled_c = q.get_num() * (den_lcm / q.get_den());
                height_bits = std::max(
                    height_bits,
                    static_cast<int>(mpz_sizeinbase(scaled_c.get_mpz_t(), 2)));
                poly.emplace_back(e - shift, std::move(scaled_c));
            }
            max_terms = std::max(max_terms, static_cast<int>(poly.size()));
            scaled.push_back(std::move(poly));
        }
    }

    mpz_class pack(size_t i, int bits) const {
        mpz_class out = 0;
        mpz_class tmp;
        for (const auto& [e, c] : scaled[i]) {
            tmp = c;
            mpz_mul_2exp(tmp.get_mpz_t(), tmp.get_mpz_t(),
                         static_cast<mp_bitcnt_t>(bits) * static_cast<mp_bitcnt_t>(e));
            out += tmp;
        }
        return out;
    }
};

int bits_of(long v) {
    int b = 0;
    while (v > 0) {
        ++b;
        v >>= 1;
    }
    return b;
}

// Balanced-digit read-back of a packed polynomial.
LaurentPoly unpack(mpz_class v, int bits, long shift, const mpz_class& den) {
    LaurentPoly out;
    mpz_class half = mpz_class(1) << (bits - 1);
    mpz_class full = mpz_class(1) << bits;
    mpz_class r;
    long k = 0;
    while (v != 0) {
        mpz_fdiv_r_2exp(r.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
        mpz_class digit = r >= half ? mpz_class(r - full) : r;
        if (digit != 0) {
            mpq_class c(digit, den);
            c.canonicalize();
            out.add_term(shift + k, c);
        }
        v -= digit;
        mpz_fdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
        ++k;
    }
    return out;
}

}  // namespace

Morphism<LaurentPoly> fast_compose(const Morphism<LaurentPoly>& g,
                                   const Morphism<LaurentPoly>& f) {
    if (g.source != f.target)
        throw ShapeMismatch("fast_compose: middle interface mismatch");
    Morphism<LaurentPoly> out(f.source, g.target);
    if (f.is_zero() || g.is_zero()) return out;

    PackedSide sf(f), sg(g);
    const int max_loops = f.target / 2;

    // Digit width: product height + loop-power height + accumulation headroom.
    // height((q^2+1)^l) <= 2^l, so max_loops bits cover every loop factor.
    const int acc_bits =
        bits_of(static_cast<long>(f.terms.size()) * static_cast<long>(g.terms.size()) + 1);
    const int bits = sf.height_bits + sg.height_bits + max_loops +
                     bits_of(std::min(sf.max_terms, sg.max_terms) + 1) +
                     bits_of(max_loops + 2) + acc_bits + 2;

    // Packed loop factors d^l q^{max_loops} = (q^2+1)^l q^{max_loops - l}.
    std::vector<mpz_class> dpow(static_cast<size_t>(max_loops) + 1);
    {
        LaurentPoly base;  // q^2 + 1
        base.add_term(0, 1);
        base.add_term(2, 1);
        LaurentPoly cur = LaurentPoly::one();
        for (int l = 0; l <= max_loops; ++l) {
            LaurentPoly shifted = cur.shifted(max_loops - l);
            mpz_class packed = 0;
            mpz_class tmp;
            for (const auto& [e, c] : shifted.terms()) {
                tmp = c.get_num();  // integer by construction
                mpz_mul_2exp(tmp.get_mpz_t(), tmp.get_mpz_t(),
                             static_cast<mp_bitcnt_t>(bits) * static_cast<mp_bitcnt_t>(e));
                packed += tmp;
            }
            dpow[static_cast<size_t>(l)] = packed;
            cur *= base;
        }
    }

    std::vector<mpz_class> packed_f(sf.pairings.size()), packed_g(sg.pairings.size());
    for (size_t i = 0; i < sf.pairings.size(); ++i) packed_f[i] = sf.pack(i, bits);
    for (size_t j = 0; j < sg.pairings.size(); ++j) packed_g[j] = sg.pack(j, bits);

    std::map<Pairing, mpz_class> acc;
    detail::PairingComposer comp;
    std::vector<std::pair<int, int>> arcs;
    mpz_class prod;
    for (size_t i = 0; i < sf.pairings.size(); ++i) {
        for (size_t j = 0; j < sg.pairings.size(); ++j) {
            int loops = comp.compose(*sf.pairings[i], *sg.pairings[j], arcs);
            prod = packed_f[i] * packed_g[j];
            prod *= dpow[static_cast<size_t>(loops)];
            acc[Pairing::make(f.source, g.target, arcs)] += prod;
        }
    }

    const long shift = sf.shift + sg.shift - max_loops;
    const mpz_class den = sf.den_lcm * sg.den_lcm;
    for (auto& [p, v] : acc) {
        LaurentPoly c = unpack(std::move(v), bits, shift, den);
        if (!c.is_zero()) out.terms.emplace(p, std::move(c));
    }
    return out;
}

Morphism<LaurentPoly> fast_tensor(const Morphism<LaurentPoly>& f,
                                  const Morphism<LaurentPoly>& g) {
    Morphism<LaurentPoly> out(f.source + g.source, f.target + g.target);
    if (f.is_zero() || g.is_zero()) return out;

    PackedSide sf(f), sg(g);
    const int bits = sf.height_bits + sg.height_bits +
                     bits_of(std::min(sf.max_terms, sg.max_terms) + 1) + 2;

    std::vector<mpz_class> packed_f(sf.pairings.size()), packed_g(sg.pairings.size());
    for (size_t i = 0; i < sf.pairings.size(); ++i) packed_f[i] = sf.pack(i, bits);
    for (size_t j = 0; j < sg.pairings.size(); ++j) packed_g[j] = sg.pack(j, bits);

    const int m = f.source, n = f.target;
    const int mp = g.source, np = g.target;
    auto map_f = [&](int p) { return p < m ? p : (m + mp) + (p - m); };
    auto map_g = [&](int p) { return p < mp ? m + p : (m + mp + n) + (p - mp); };
    const long shift = sf.shift + sg.shift;
    const mpz_class den = sf.den_lcm * sg.den_lcm;

    for (size_t i = 0; i < sf.pairings.size(); ++i) {
        for (size_t j = 0; j < sg.pairings.size(); ++j) {
            std::vector<std::pair<int, int>> arcs;
            arcs.reserve(sf.pairings[i]->arcs.size() + sg.pairings[j]->arcs.size());
            for (const auto& [a, b] : sf.pairings[i]->arcs)
                arcs.emplace_back(map_f(a), map_f(b));
            for (const auto& [a, b] : sg.pairings[j]->arcs)
                arcs.emplace_back(map_g(a), map_g(b));
            LaurentPoly c = unpack(packed_f[i] * packed_g[j], bits, shift, den);
            if (!c.is_zero())
                out.terms.emplace(Pairing::make(m + mp, n + np, std::move(arcs)),
                                  std::move(c));
        }
    }
    return out;
}

}  // namespace tlj
