#ifndef TLJ_LAURENT_HPP
#define TLJ_LAURENT_HPP

#include <gmpxx.h>

#include <map>
#include <string>

namespace tlj {

/// Laurent polynomial in the formal parameter q with exact rational
/// coefficients. Stored sparsely as exponent -> coefficient; zero
/// coefficients are never kept, so the zero polynomial is the empty map.
class LaurentPoly {
public:
    using Terms = std::map<long, mpq_class>;

    LaurentPoly() = default;
    explicit LaurentPoly(const mpq_class& c);
    explicit LaurentPoly(long c);

    /// c * q^e
    static LaurentPoly q_power(long e, const mpq_class& c = 1);
    static LaurentPoly zero() { return LaurentPoly(); }
    static LaurentPoly one() { return LaurentPoly(1); }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_constant() const;
    /// Constant term; the whole value if is_constant().
    mpq_class constant_value() const;

    const Terms& terms() const { return terms_; }
    long min_exp() const;  // requires nonzero
    long max_exp() const;  // requires nonzero

    void add_term(long e, const mpq_class& c);

    LaurentPoly operator-() const;
    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return terms_ != o.terms_; }
    bool operator<(const LaurentPoly& o) const { return terms_ < o.terms_; }

    LaurentPoly scaled(const mpq_class& c) const;
    /// Multiply by q^e.
    LaurentPoly shifted(long e) const;
    /// The bar involution q -> q^{-1}: negates every exponent.
    LaurentPoly bar() const;

    /// Positive rational c such that (*this)/c has coprime integer
    /// coefficients; sign chosen so the lowest-degree coefficient of
    /// (*this)/content() is positive. Requires nonzero.
    mpq_class content() const;

    std::string to_string() const;

private:
    Terms terms_;
};

/// Monic-free gcd of Laurent polynomials: both inputs shifted to lowest
/// exponent 0, gcd taken in Q[q] via a primitive remainder sequence over Z,
/// returned with content 1, positive lowest coefficient and lowest exponent 0.
/// gcd(0, b) = normalized b.
LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b);

/// Exact division; throws DivisionByZero on zero divisor and Error when the
/// division is not exact.
LaurentPoly laurent_divexact(const LaurentPoly& a, const LaurentPoly& b);

/// Parse the canonical rendering, e.g. "q^-2 + 1 + q^2" or "3/2*q^3 - q".
LaurentPoly parse_laurent(const std::string& text);

namespace detail {
// Parses a polynomial starting at s[i], advancing i past it.
LaurentPoly parse_poly_at(const std::string& s, size_t& i);
}  // namespace detail

}  // namespace tlj

#endif
