#include "tlj/ratfun.hpp"

#include <sstream>

#include "tlj/errors.hpp"

namespace tlj {

RatScalar::RatScalar(const LaurentPoly& num, const LaurentPoly& den)
    : num_(num), den_(den) {
    if (den_.is_zero()) throw DivisionByZero();
    canonicalize();
}

void RatScalar::canonicalize() {
    if (num_.is_zero()) {
        den_ = LaurentPoly::one();
        return;
    }
    if (!den_.is_one()) {
        LaurentPoly g = laurent_gcd(num_, den_);
        if (!g.is_one()) {
            num_ = laurent_divexact(num_, g);
            den_ = laurent_divexact(den_, g);
        }
        // Clear q-powers out of the denominator.
        long s = den_.min_exp();
        if (s != 0) {
            den_ = den_.shifted(-s);
            num_ = num_.shifted(-s);
        }
        mpq_class c = den_.content();
        if (c != 1) {
            den_ = den_.scaled(mpq_class(1) / c);
            num_ = num_.scaled(mpq_class(1) / c);
        }
    }
}

RatScalar RatScalar::operator-() const {
    RatScalar r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RatScalar RatScalar::operator+(const RatScalar& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) {
        return RatScalar(num_ + o.num_, den_);
    }
    LaurentPoly g = laurent_gcd(den_, o.den_);
    LaurentPoly da = laurent_divexact(den_, g);
    LaurentPoly db = laurent_divexact(o.den_, g);
    return RatScalar(num_ * db + o.num_ * da, den_ * db);
}

RatScalar RatScalar::operator-(const RatScalar& o) const { return *this + (-o); }

RatScalar RatScalar::operator*(const RatScalar& o) const {
    if (is_zero() || o.is_zero()) return RatScalar();
    // Cross-reduce before multiplying to keep degrees small.
    LaurentPoly g1 = laurent_gcd(num_, o.den_);
    LaurentPoly g2 = laurent_gcd(o.num_, den_);
    LaurentPoly n1 = g1.is_one() ? num_ : laurent_divexact(num_, g1);
    LaurentPoly d2 = g1.is_one() ? o.den_ : laurent_divexact(o.den_, g1);
    LaurentPoly n2 = g2.is_one() ? o.num_ : laurent_divexact(o.num_, g2);
    LaurentPoly d1 = g2.is_one() ? den_ : laurent_divexact(den_, g2);
    RatScalar r;
    r.num_ = n1 * n2;
    r.den_ = d1 * d2;
    r.canonicalize();
    return r;
}

RatScalar RatScalar::operator/(const RatScalar& o) const { return *this * o.inv(); }

RatScalar RatScalar::inv() const {
    if (is_zero()) throw DivisionByZero();
    return RatScalar(den_, num_);
}

RatScalar RatScalar::bar() const { return RatScalar(num_.bar(), den_.bar()); }

std::string RatScalar::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RatScalar qint(long n) {
    if (n == 0) return RatScalar::zero();
    if (n < 0) return -qint(-n);
    LaurentPoly p;
    for (long e = -n + 1; e <= n - 1; e += 2) p.add_term(e, 1);
    return RatScalar(p);
}

RatScalar qfact(long n) {
    if (n < 0) throw IndexOutOfRange("qfact: negative argument");
    RatScalar r = RatScalar::one();
    for (long k = 2; k <= n; ++k) r *= qint(k);
    return r;
}

RatScalar loop_d() { return qint(2); }

RatScalar parse_rat_scalar(const std::string& text) {
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    if (i < text.size() && text[i] == '(') {
        ++i;
        LaurentPoly num = detail::parse_poly_at(text, i);
        skip();
        if (i >= text.size() || text[i] != ')') throw ParseError("expected ')'");
        ++i;
        skip();
        if (i >= text.size() || text[i] != '/') throw ParseError("expected '/'");
        ++i;
        skip();
        if (i >= text.size() || text[i] != '(') throw ParseError("expected '('");
        ++i;
        LaurentPoly den = detail::parse_poly_at(text, i);
        skip();
        if (i >= text.size() || text[i] != ')') throw ParseError("expected ')'");
        ++i;
        skip();
        if (i != text.size()) throw ParseError("trailing input in scalar");
        return RatScalar(num, den);
    }
    return RatScalar(parse_laurent(text));
}

}  // namespace tlj
