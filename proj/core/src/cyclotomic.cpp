#include "tlj/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "tlj/errors.hpp"

namespace tlj {

long euler_phi(long m) {
    long result = m;
    long x = m;
    for (long p = 2; p * p <= x; ++p) {
        if (x % p == 0) {
            while (x % p == 0) x /= p;
            result -= result / p;
        }
    }
    if (x > 1) result -= result / x;
    return result;
}

namespace {

using QPoly = std::vector<mpq_class>;  // ascending degree, trimmed

void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    qtrim(r);
    return r;
}

// a mod b and a / b, b monic-led nonzero.
void qdivmod(QPoly a, const QPoly& b, QPoly& quot, QPoly& rem) {
    quot.assign(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, mpq_class(0));
    while (a.size() >= b.size()) {
        mpq_class c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        quot[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        qtrim(a);
        if (a.empty()) break;
    }
    qtrim(quot);
    rem = std::move(a);
}

// Cached per-order field data: Phi_m plus reduction rows for z^k with
// phi <= k < 2*phi-1, so products reduce by table lookup.
struct FieldData {
    long order = 0;
    long phi = 0;
    QPoly modulus;
    std::vector<QPoly> power_rows;  // row t = z^{phi+t} reduced, as length-phi vector
};

const FieldData& field_data(long order) {
    static std::mutex mtx;
    static std::map<long, FieldData> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    if (order < 1) throw IndexOutOfRange("cyclotomic order must be >= 1");

    FieldData fd;
    fd.order = order;
    fd.modulus = cyclotomic_polynomial(order);
    fd.phi = static_cast<long>(fd.modulus.size()) - 1;
    // Rows for z^(phi+t); row 0 always exists so reductions can peel one
    // power of z^phi at a time even past the table.
    const long rows = std::max<long>(fd.phi - 1, 1);
    fd.power_rows.resize(static_cast<size_t>(rows));
    QPoly cur(fd.modulus.begin(), fd.modulus.end() - 1);
    for (auto& c : cur) c = -c;  // z^phi reduced
    for (long t = 0; t < rows; ++t) {
        cur.resize(static_cast<size_t>(fd.phi), mpq_class(0));
        fd.power_rows[static_cast<size_t>(t)] = cur;
        // multiply by z
        QPoly next(static_cast<size_t>(fd.phi), mpq_class(0));
        for (long i = 0; i < fd.phi - 1; ++i) next[static_cast<size_t>(i) + 1] = cur[static_cast<size_t>(i)];
        const mpq_class top = cur[static_cast<size_t>(fd.phi) - 1];
        if (top != 0)
            for (long i = 0; i < fd.phi; ++i)
                next[static_cast<size_t>(i)] -= top * fd.modulus[static_cast<size_t>(i)];
        cur = std::move(next);
    }
    auto [pos, inserted] = cache.emplace(order, std::move(fd));
    return pos->second;
}

}  // namespace

const std::vector<mpq_class>& cyclotomic_polynomial(long m) {
    static std::mutex mtx;
    static std::map<long, QPoly> cache;
    std::lock_guard<std::mutex> lock(mtx);

    // Iterative fill: Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d.
    std::vector<long> todo{m};
    while (!todo.empty()) {
        long k = todo.back();
        if (cache.count(k)) {
            todo.pop_back();
            continue;
        }
        bool ready = true;
        for (long d = 1; d < k; ++d)
            if (k % d == 0 && !cache.count(d)) {
                todo.push_back(d);
                ready = false;
            }
        if (!ready) continue;
        todo.pop_back();
        QPoly num(static_cast<size_t>(k) + 1, mpq_class(0));
        num[0] = -1;
        num[static_cast<size_t>(k)] = 1;
        QPoly den{mpq_class(1)};
        for (long d = 1; d < k; ++d)
            if (k % d == 0) den = qmul(den, cache[d]);
        QPoly quot, rem;
        qdivmod(num, den, quot, rem);
        if (!rem.empty()) throw Error("cyclotomic polynomial division failed");
        cache[k] = std::move(quot);
    }
    return cache[m];
}

CycloScalar CycloScalar::zero(long order) {
    CycloScalar c;
    c.order_ = order;
    c.coeffs_.assign(static_cast<size_t>(field_data(order).phi), mpq_class(0));
    return c;
}

CycloScalar CycloScalar::one(long order) { return from_rational(order, 1); }

CycloScalar CycloScalar::from_rational(long order, const mpq_class& v) {
    CycloScalar c = zero(order);
    c.coeffs_[0] = v;
    return c;
}

CycloScalar CycloScalar::zeta_power(long order, long k) {
    const FieldData& fd = field_data(order);
    k %= order;
    if (k < 0) k += order;
    CycloScalar c = zero(order);
    if (k < fd.phi) {
        c.coeffs_[static_cast<size_t>(k)] = 1;
        return c;
    }
    // Reduce z^k by repeated table application.
    std::vector<mpq_class> raw(static_cast<size_t>(k) + 1, mpq_class(0));
    raw.back() = 1;
    c.reduce_tail(raw);
    raw.resize(static_cast<size_t>(fd.phi), mpq_class(0));
    c.coeffs_ = std::move(raw);
    return c;
}

// Folds raw coefficients of degree >= phi down using the power rows; raw may
// have any length. Afterwards entries above phi-1 are zero.
void CycloScalar::reduce_tail(std::vector<mpq_class>& raw) const {
    const FieldData& fd = field_data(order_);
    const size_t phi = static_cast<size_t>(fd.phi);
    for (size_t deg = raw.size(); deg-- > phi;) {
        mpq_class c = raw[deg];
        if (c == 0) continue;
        raw[deg] = 0;
        size_t t = deg - phi;
        if (t < fd.power_rows.size()) {
            const QPoly& row = fd.power_rows[t];
            for (size_t i = 0; i < phi; ++i)
                if (row[i] != 0) raw[i] += c * row[i];
        } else {
            // z^deg = z^(phi + t): peel one z^phi at a time via row 0.
            const QPoly& row = fd.power_rows[0];
            for (size_t i = 0; i < phi; ++i)
                if (row[i] != 0) raw[deg - phi + i] += c * row[i];
        }
    }
}

bool CycloScalar::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool CycloScalar::is_one() const {
    if (order_ == 0 || coeffs_.empty() || coeffs_[0] != 1) return false;
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

namespace {
void check_orders(const CycloScalar& a, const CycloScalar& b) {
    if (a.order() != b.order())
        throw ShapeMismatch("cyclotomic orders differ: " + std::to_string(a.order()) +
                            " vs " + std::to_string(b.order()));
}
}  // namespace

CycloScalar CycloScalar::operator-() const {
    CycloScalar r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

CycloScalar CycloScalar::operator+(const CycloScalar& o) const {
    if (order_ == 0) return o;
    if (o.order_ == 0) return *this;
    check_orders(*this, o);
    CycloScalar r = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
    return r;
}

CycloScalar CycloScalar::operator-(const CycloScalar& o) const { return *this + (-o); }

CycloScalar CycloScalar::operator*(const CycloScalar& o) const {
    if (order_ == 0) return *this;
    if (o.order_ == 0) return o;
    check_orders(*this, o);
    const size_t phi = coeffs_.size();
    std::vector<mpq_class> raw(2 * phi - 1, mpq_class(0));
    for (size_t i = 0; i < phi; ++i) {
        if (coeffs_[i] == 0) continue;
        for (size_t j = 0; j < phi; ++j)
            if (o.coeffs_[j] != 0) raw[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    reduce_tail(raw);
    raw.resize(phi);
    CycloScalar r;
    r.order_ = order_;
    r.coeffs_ = std::move(raw);
    return r;
}

CycloScalar CycloScalar::operator/(const CycloScalar& o) const { return *this * o.inv(); }

CycloScalar CycloScalar::inv() const {
    if (order_ == 0 || is_zero()) throw DivisionByZero();
    // Extended Euclid in Q[x] against the cyclotomic modulus.
    const FieldData& fd = field_data(order_);
    QPoly r0 = fd.modulus;
    QPoly r1(coeffs_);
    qtrim(r1);
    QPoly s0{}, s1{mpq_class(1)};  // coefficients of *this in the combination
    while (!r1.empty()) {
        QPoly quot, rem;
        qdivmod(r0, r1, quot, rem);
        QPoly s2 = s0;  // s2 = s0 - quot * s1
        {
            QPoly qs = qmul(quot, s1);
            if (s2.size() < qs.size()) s2.resize(qs.size(), mpq_class(0));
            for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
            qtrim(s2);
        }
        r0 = std::move(r1);
        s0 = std::move(s1);
        r1 = std::move(rem);
        s1 = std::move(s2);
    }
    if (r0.size() != 1) throw Error("cyclotomic inverse: non-unit gcd");
    const mpq_class scale = mpq_class(1) / r0[0];
    CycloScalar out = zero(order_);
    for (size_t i = 0; i < s0.size() && i < out.coeffs_.size(); ++i)
        out.coeffs_[i] = s0[i] * scale;
    return out;
}

CycloScalar CycloScalar::bar() const {
    if (order_ == 0) return *this;
    CycloScalar out = zero(order_);
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0) continue;
        CycloScalar term = zeta_power(order_, -static_cast<long>(k));
        for (size_t i = 0; i < out.coeffs_.size(); ++i)
            out.coeffs_[i] += coeffs_[k] * term.coeffs_[i];
    }
    return out;
}

bool CycloScalar::operator==(const CycloScalar& o) const {
    if (order_ == 0 || o.order_ == 0) return is_zero() && o.is_zero();
    return order_ == o.order_ && coeffs_ == o.coeffs_;
}

std::string CycloScalar::to_string() const {
    if (order_ == 0) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        const mpq_class& c = coeffs_[k];
        if (c == 0) continue;
        mpq_class v = c;
        if (first) {
            if (v < 0) {
                os << "-";
                v = -v;
            }
        } else {
            os << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        }
        first = false;
        if (k == 0) {
            os << v;
        } else {
            if (v != 1) os << v << "*";
            os << "z";
            if (k > 1) os << "^" << k;
        }
    }
    if (first) return "0";
    return os.str();
}

CycloScalar specialize(const LaurentPoly& p, long n) {
    if (n < 2) throw IndexOutOfRange("specialize: root parameter must be >= 2");
    const long order = 2 * n;
    CycloScalar out = CycloScalar::zero(order);
    for (const auto& [e, c] : p.terms())
        out += CycloScalar::zeta_power(order, e) * CycloScalar::from_rational(order, c);
    return out;
}

CycloScalar specialize(const RatScalar& x, long n) {
    CycloScalar num = specialize(x.num(), n);
    CycloScalar den = specialize(x.den(), n);
    if (den.is_zero())
        throw DenominatorVanishes("denominator (" + x.den().to_string() +
                                  ") vanishes at q = zeta_" + std::to_string(2 * n));
    return num / den;
}

}  // namespace tlj
