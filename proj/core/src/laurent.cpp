#include "tlj/laurent.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "tlj/errors.hpp"

namespace tlj {

LaurentPoly::LaurentPoly(const mpq_class& c) {
    if (c != 0) terms_[0] = c;
}

LaurentPoly::LaurentPoly(long c) {
    if (c != 0) terms_[0] = mpq_class(c);
}

LaurentPoly LaurentPoly::q_power(long e, const mpq_class& c) {
    LaurentPoly p;
    if (c != 0) p.terms_[e] = c;
    return p;
}

bool LaurentPoly::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 &&
           terms_.begin()->second == 1;
}

bool LaurentPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

mpq_class LaurentPoly::constant_value() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

long LaurentPoly::min_exp() const { return terms_.begin()->first; }
long LaurentPoly::max_exp() const { return terms_.rbegin()->first; }

void LaurentPoly::add_term(long e, const mpq_class& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    r += o;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    if (terms_.empty() || o.terms_.empty()) return r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
}

LaurentPoly LaurentPoly::scaled(const mpq_class& c) const {
    LaurentPoly r;
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

LaurentPoly LaurentPoly::shifted(long e) const {
    LaurentPoly r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k + e, c);
    return r;
}

LaurentPoly LaurentPoly::bar() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
    return r;
}

mpq_class LaurentPoly::content() const {
    mpz_class num_gcd = 0;
    mpz_class den_lcm = 1;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
                c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                c.get_den().get_mpz_t());
    }
    mpq_class content(num_gcd, den_lcm);
    content.canonicalize();
    if (terms_.begin()->second < 0) content = -content;
    return content;
}

namespace {

// Dense integer polynomial utilities backing the gcd. Index = degree.
using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

mpz_class zcontent(const ZPoly& p) {
    mpz_class g = 0;
    for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

void zdiv_scalar(ZPoly& p, const mpz_class& s) {
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
}

// Pseudo-remainder of a by b (b nonzero), primitive part taken afterwards.
ZPoly zpseudo_rem(ZPoly a, const ZPoly& b) {
    const mpz_class& lead = b.back();
    while (a.size() >= b.size()) {
        mpz_class factor = a.back();
        size_t shift = a.size() - b.size();
        for (auto& c : a) c *= lead;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
        ztrim(a);
        if (a.empty()) break;
    }
    return a;
}

ZPoly zprimitive(ZPoly p) {
    ztrim(p);
    if (p.empty()) return p;
    mpz_class c = zcontent(p);
    if (p.back() < 0) c = -c;
    zdiv_scalar(p, c);
    return p;
}

ZPoly zgcd(ZPoly a, ZPoly b) {
    a = zprimitive(std::move(a));
    b = zprimitive(std::move(b));
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        ZPoly r = zprimitive(zpseudo_rem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Laurent -> primitive integer poly, forgetting the q-power and content.
ZPoly to_zpoly(const LaurentPoly& p) {
    ZPoly out;
    if (p.is_zero()) return out;
    long base = p.min_exp();
    out.assign(static_cast<size_t>(p.max_exp() - base) + 1, mpz_class(0));
    mpz_class den_lcm = 1;
    for (const auto& [e, c] : p.terms())
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                c.get_den().get_mpz_t());
    for (const auto& [e, c] : p.terms()) {
        mpq_class scaled = c * den_lcm;
        out[static_cast<size_t>(e - base)] = scaled.get_num();
    }
    return zprimitive(std::move(out));
}

LaurentPoly from_zpoly(const ZPoly& p) {
    LaurentPoly out;
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0) out.add_term(static_cast<long>(i), mpq_class(p[i]));
    return out;
}

}  // namespace

LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() && b.is_zero()) return LaurentPoly::zero();
    ZPoly g = zgcd(to_zpoly(a), to_zpoly(b));
    LaurentPoly out = from_zpoly(g);
    // Sign convention: positive lowest-degree coefficient.
    if (!out.is_zero() && out.terms().begin()->second < 0) out = out.scaled(-1);
    return out;
}

LaurentPoly laurent_divexact(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw DivisionByZero();
    if (a.is_zero()) return LaurentPoly::zero();
    // Long division of shifted polynomials over Q, then shift back.
    long ashift = a.min_exp(), bshift = b.min_exp();
    LaurentPoly rem = a.shifted(-ashift);
    LaurentPoly div = b.shifted(-bshift);
    LaurentPoly quot;
    long ddeg = div.max_exp();
    const mpq_class& dlead = div.terms().rbegin()->second;
    while (!rem.is_zero() && rem.max_exp() >= ddeg) {
        long e = rem.max_exp() - ddeg;
        mpq_class c = rem.terms().rbegin()->second / dlead;
        quot.add_term(e, c);
        rem = rem - div.shifted(e).scaled(c);
    }
    if (!rem.is_zero()) throw Error("laurent_divexact: inexact division");
    return quot.shifted(ashift - bshift);
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        mpq_class coeff = c;
        if (first) {
            if (coeff < 0) {
                os << "-";
                coeff = -coeff;
            }
        } else {
            os << (coeff < 0 ? " - " : " + ");
            if (coeff < 0) coeff = -coeff;
        }
        first = false;
        if (e == 0) {
            os << coeff;
        } else {
            if (coeff != 1) os << coeff << "*";
            os << "q";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
};

long parse_integer(Cursor& cur) {
    cur.skip_ws();
    size_t start = cur.i;
    if (cur.i < cur.s.size() && (cur.s[cur.i] == '-' || cur.s[cur.i] == '+')) ++cur.i;
    while (cur.i < cur.s.size() && std::isdigit(static_cast<unsigned char>(cur.s[cur.i]))) ++cur.i;
    if (cur.i == start) throw ParseError("expected integer at position " + std::to_string(start));
    return std::stol(cur.s.substr(start, cur.i - start));
}

mpq_class parse_rational(Cursor& cur) {
    long num = parse_integer(cur);
    if (cur.eat('/')) {
        long den = parse_integer(cur);
        if (den == 0) throw ParseError("zero denominator in rational literal");
        mpq_class r(num, den);
        r.canonicalize();
        return r;
    }
    return mpq_class(num);
}

// term := rational ['*' q-part] | q-part ; q-part := 'q' ['^' int]
void parse_term(Cursor& cur, bool negate, LaurentPoly& out) {
    mpq_class coeff = 1;
    bool have_coeff = false;
    char c = cur.peek();
    if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
        coeff = parse_rational(cur);
        have_coeff = true;
    }
    long exp = 0;
    if (cur.peek() == '*') {
        cur.eat('*');
        if (cur.peek() != 'q') throw ParseError("expected q after '*'");
    }
    if (cur.peek() == 'q') {
        cur.eat('q');
        exp = 1;
        if (cur.eat('^')) exp = parse_integer(cur);
    } else if (!have_coeff) {
        throw ParseError("expected term at position " + std::to_string(cur.i));
    }
    if (negate) coeff = -coeff;
    out.add_term(exp, coeff);
}

LaurentPoly parse_poly(Cursor& cur) {
    LaurentPoly out;
    bool negate = false;
    if (cur.eat('-')) negate = true;
    parse_term(cur, negate, out);
    while (true) {
        char c = cur.peek();
        if (c == '+') {
            cur.eat('+');
            parse_term(cur, false, out);
        } else if (c == '-') {
            cur.eat('-');
            parse_term(cur, true, out);
        } else {
            break;
        }
    }
    return out;
}

}  // namespace

LaurentPoly parse_laurent(const std::string& text) {
    Cursor cur{text};
    LaurentPoly p = parse_poly(cur);
    if (!cur.done()) throw ParseError("trailing input in polynomial: '" + text + "'");
    return p;
}

namespace detail {
LaurentPoly parse_poly_at(const std::string& s, size_t& i) {
    Cursor cur{s, i};
    LaurentPoly p = parse_poly(cur);
    i = cur.i;
    return p;
}
}  // namespace detail

}  // namespace tlj
