#ifndef TLJ_CYCLOTOMIC_HPP
#define TLJ_CYCLOTOMIC_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "tlj/ratfun.hpp"

namespace tlj {

/// Element of the cyclotomic field Q(zeta_m), m = 2n, written in the power
/// basis 1, z, ..., z^{phi(m)-1} modulo the m-th cyclotomic polynomial.
/// Arithmetic mixes only values of equal order.
class CycloScalar {
public:
    CycloScalar() : order_(0) {}  // zero of indeterminate order; absorbs into anything
    static CycloScalar zero(long order);
    static CycloScalar one(long order);
    static CycloScalar from_rational(long order, const mpq_class& c);
    /// zeta_m^k
    static CycloScalar zeta_power(long order, long k);

    long order() const { return order_; }
    const std::vector<mpq_class>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;

    CycloScalar operator-() const;
    CycloScalar operator+(const CycloScalar& o) const;
    CycloScalar operator-(const CycloScalar& o) const;
    CycloScalar operator*(const CycloScalar& o) const;
    CycloScalar operator/(const CycloScalar& o) const;
    CycloScalar& operator+=(const CycloScalar& o) { return *this = *this + o; }
    CycloScalar& operator*=(const CycloScalar& o) { return *this = *this * o; }
    bool operator==(const CycloScalar& o) const;
    bool operator!=(const CycloScalar& o) const { return !(*this == o); }

    CycloScalar inv() const;
    /// z -> z^{-1}, the involution fixing specialized bar-invariant scalars.
    CycloScalar bar() const;

    std::string to_string() const;

private:
    long order_;                    // m = 2n; 0 only for the indeterminate zero
    std::vector<mpq_class> coeffs_; // length phi(order_) once order_ > 0

    void reduce_tail(std::vector<mpq_class>& raw) const;
};

/// Euler phi of m >= 1.
long euler_phi(long m);

/// Coefficients of the m-th cyclotomic polynomial, ascending degree.
const std::vector<mpq_class>& cyclotomic_polynomial(long m);

/// Exact evaluation at q = zeta_{2n} (primitive 2n-th root of unity).
/// Throws DenominatorVanishes when the denominator dies at the root.
CycloScalar specialize(const RatScalar& x, long n);

/// Evaluation of a Laurent polynomial at zeta_{2n}.
CycloScalar specialize(const LaurentPoly& p, long n);

}  // namespace tlj

#endif
