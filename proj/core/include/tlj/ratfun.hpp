#ifndef TLJ_RATFUN_HPP
#define TLJ_RATFUN_HPP

#include <string>

#include "tlj/laurent.hpp"

namespace tlj {

/// Element of Q(q) held as a reduced fraction of Laurent polynomials.
///
/// Canonical form, maintained by every operation:
///   - num/den coprime (polynomial gcd),
///   - den has lowest exponent 0, content 1, positive lowest coefficient,
///   - zero is 0/1.
/// Two RatScalars are equal iff their canonical forms are identical, so
/// operator== is purely structural.
class RatScalar {
public:
    RatScalar() : num_(), den_(LaurentPoly::one()) {}
    explicit RatScalar(long c) : num_(c), den_(LaurentPoly::one()) {}
    explicit RatScalar(const mpq_class& c) : num_(c), den_(LaurentPoly::one()) {}
    explicit RatScalar(const LaurentPoly& p) : num_(p), den_(LaurentPoly::one()) {}
    RatScalar(const LaurentPoly& num, const LaurentPoly& den);

    static RatScalar zero() { return RatScalar(); }
    static RatScalar one() { return RatScalar(1); }
    /// c * q^e as a scalar.
    static RatScalar q_power(long e, const mpq_class& c = 1) {
        return RatScalar(LaurentPoly::q_power(e, c));
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    RatScalar operator-() const;
    RatScalar operator+(const RatScalar& o) const;
    RatScalar operator-(const RatScalar& o) const;
    RatScalar operator*(const RatScalar& o) const;
    RatScalar operator/(const RatScalar& o) const;
    RatScalar& operator+=(const RatScalar& o) { return *this = *this + o; }
    RatScalar& operator*=(const RatScalar& o) { return *this = *this * o; }
    bool operator==(const RatScalar& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const RatScalar& o) const { return !(*this == o); }

    RatScalar inv() const;
    /// q -> q^{-1} on numerator and denominator; a ring involution.
    RatScalar bar() const;

    std::string to_string() const;

private:
    void canonicalize();

    LaurentPoly num_;
    LaurentPoly den_;
};

/// The n-th quantum integer [n] = (q^n - q^{-n})/(q - q^{-1}); [0] = 0,
/// [-n] = -[n], and for n > 0 the Laurent polynomial
/// q^{-n+1} + q^{-n+3} + ... + q^{n-1}.
RatScalar qint(long n);

/// Quantum factorial [n]! = [n][n-1]...[1]; qfact(0) = 1. Rejects n < 0.
RatScalar qfact(long n);

/// The loop value d = [2] = q + q^{-1}.
RatScalar loop_d();

/// Parse "poly" or "(poly)/(poly)".
RatScalar parse_rat_scalar(const std::string& text);

}  // namespace tlj

#endif
