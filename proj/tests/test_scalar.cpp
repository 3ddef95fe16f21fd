#include "doctest.h"

#include <random>

#include "tlj/cyclotomic.hpp"
#include "tlj/errors.hpp"
#include "tlj/laurent.hpp"
#include "tlj/ratfun.hpp"

using namespace tlj;

TEST_CASE("laurent basics") {
    LaurentPoly p = LaurentPoly::q_power(2) + LaurentPoly::q_power(-2) + LaurentPoly::one();
    CHECK(p.to_string() == "q^-2 + 1 + q^2");
    CHECK(p.bar() == p);
    CHECK((p - p).is_zero());
    CHECK(p * LaurentPoly::one() == p);

    LaurentPoly q = LaurentPoly::q_power(1);
    CHECK((q * q.bar()).is_one());
}

TEST_CASE("laurent gcd and exact division") {
    // (q^2 - 1) and (q - 1) share the factor q - 1 (up to normalization).
    LaurentPoly a = LaurentPoly::q_power(2) - LaurentPoly::one();
    LaurentPoly b = LaurentPoly::q_power(1) - LaurentPoly::one();
    LaurentPoly g = laurent_gcd(a, b);
    CHECK(laurent_divexact(a, g) * g == a);
    CHECK(laurent_divexact(b, g) * g == b);
    CHECK(g.min_exp() == 0);
    CHECK(g.terms().begin()->second > 0);

    CHECK_THROWS_AS(laurent_divexact(a, LaurentPoly::zero()), DivisionByZero);
    CHECK_THROWS_AS(
        laurent_divexact(LaurentPoly::q_power(1) + LaurentPoly::one(), a), Error);
}

TEST_CASE("quantum integers") {
    CHECK(qint(0).is_zero());
    CHECK(qint(1).is_one());
    // [2] = q + q^-1
    RatScalar d = qint(2);
    CHECK(d.to_string() == "q^-1 + q");
    // [3] = q^2 + 1 + q^-2
    CHECK(qint(3) == RatScalar(parse_laurent("q^-2 + 1 + q^2")));
    // [-n] = -[n]
    CHECK(qint(-4) == -qint(4));
    // Defining fraction agrees with the summed form.
    for (long n = 1; n <= 12; ++n) {
        RatScalar frac =
            RatScalar(LaurentPoly::q_power(n) - LaurentPoly::q_power(-n),
                      LaurentPoly::q_power(1) - LaurentPoly::q_power(-1));
        CHECK(frac == qint(n));
    }
}

TEST_CASE("quantum integer recursion") {
    for (long n = 1; n <= 20; ++n)
        CHECK(qint(n + 1) == qint(2) * qint(n) - qint(n - 1));
}

TEST_CASE("quantum factorial") {
    CHECK(qfact(0).is_one());
    CHECK(qfact(2) == qint(2));
    CHECK(qfact(3) == qint(3) * qint(2));
    CHECK_THROWS_AS(qfact(-1), IndexOutOfRange);
}

TEST_CASE("rat scalar field ops and canonical form") {
    RatScalar d = qint(2);
    CHECK((d.inv() * d).is_one());
    CHECK_THROWS_AS(RatScalar::zero().inv(), DivisionByZero);

    // Canonical form is idempotent / stable under round trips.
    RatScalar x(parse_laurent("q^2 - 1"), parse_laurent("q - 1"));
    RatScalar y(parse_laurent("q + 1"));
    CHECK(x == y);

    // Denominator q-powers migrate to the numerator.
    RatScalar z(LaurentPoly::one(), LaurentPoly::q_power(3));
    CHECK(z == RatScalar::q_power(-3));

    // bar is an involution fixing each [k].
    for (long k = 0; k <= 10; ++k) {
        CHECK(qint(k).bar() == qint(k));
        RatScalar w = qint(3) / qint(5) + RatScalar::q_power(2);
        CHECK(w.bar().bar() == w);
    }
}

TEST_CASE("rat scalar parsing round trip") {
    RatScalar w = qint(3) / qint(7);
    CHECK(parse_rat_scalar(w.to_string()) == w);
    CHECK(parse_rat_scalar("q^-1 + q") == qint(2));
    CHECK_THROWS_AS(parse_rat_scalar("q +"), ParseError);
}

TEST_CASE("cyclotomic polynomial and field") {
    // Phi_6 = x^2 - x + 1
    const auto& phi6 = cyclotomic_polynomial(6);
    REQUIRE(phi6.size() == 3);
    CHECK(phi6[0] == 1);
    CHECK(phi6[1] == -1);
    CHECK(phi6[2] == 1);
    CHECK(euler_phi(6) == 2);
    CHECK(euler_phi(14) == 6);

    // zeta_6 + zeta_6^-1 = 1
    CycloScalar z = CycloScalar::zeta_power(6, 1) + CycloScalar::zeta_power(6, -1);
    CHECK(z == CycloScalar::one(6));

    // Field inverse.
    CycloScalar a = CycloScalar::zeta_power(10, 3) + CycloScalar::from_rational(10, 2);
    CHECK((a * a.inv()).is_one());
    CHECK_THROWS_AS(CycloScalar::zero(10).inv(), DivisionByZero);

    // bar is conjugation: z * bar(z) has bar-invariant value.
    CycloScalar zp = CycloScalar::zeta_power(14, 1);
    CHECK(zp.bar() == CycloScalar::zeta_power(14, -1));
    CHECK(zp * zp.bar() == CycloScalar::one(14));
}

TEST_CASE("specialize") {
    // [n] vanishes exactly at q = zeta_{2n}.
    for (long n = 2; n <= 9; ++n) {
        CHECK(specialize(qint(n), n).is_zero());
        for (long k = 1; k < n; ++k) CHECK(!specialize(qint(k), n).is_zero());
    }
    // Constants are fixed.
    CHECK(specialize(RatScalar(mpq_class(7, 3)), 5) ==
          CycloScalar::from_rational(10, mpq_class(7, 3)));
    // specialize(qint(2), 3) = 1.
    CHECK(specialize(qint(2), 3) == CycloScalar::one(6));
    // Division by a vanishing denominator is an error.
    RatScalar bad = RatScalar::one() / qint(4);
    CHECK_THROWS_AS(specialize(bad, 4), DenominatorVanishes);
}

TEST_CASE("specialize is a ring homomorphism") {
    std::mt19937 rng(7);
    auto random_scalar = [&]() {
        LaurentPoly p;
        for (int t = 0; t < 4; ++t) {
            long e = static_cast<long>(rng() % 9) - 4;
            long c = static_cast<long>(rng() % 11) - 5;
            p.add_term(e, mpq_class(c));
        }
        return RatScalar(p);
    };
    for (int it = 0; it < 40; ++it) {
        RatScalar x = random_scalar(), y = random_scalar();
        long n = 3 + static_cast<long>(rng() % 4);
        CHECK(specialize(x * y, n) == specialize(x, n) * specialize(y, n));
        CHECK(specialize(x + y, n) == specialize(x, n) + specialize(y, n));
    }
}

TEST_CASE("specialize commutes with bar") {
    RatScalar x = qint(3) + RatScalar::q_power(2, mpq_class(1, 2));
    for (long n = 3; n <= 6; ++n)
        CHECK(specialize(x.bar(), n) == specialize(x, n).bar());
}
