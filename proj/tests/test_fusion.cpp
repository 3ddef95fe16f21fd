#include "doctest.h"

#include "tlj/errors.hpp"
#include "tlj/fusion.hpp"
#include "tlj/jones_wenzl.hpp"

using namespace tlj;

TEST_CASE("q admissibility") {
    RootContext n3(3);
    CHECK(q_admissible(0, 0, 0, n3));
    CHECK(q_admissible(1, 1, 0, n3));
    CHECK(q_admissible(0, 1, 1, n3));
    CHECK(!q_admissible(1, 1, 2, n3));  // label 2 > n-2
    RootContext n4(4);
    CHECK(q_admissible(1, 1, 2, n4));
    CHECK(!q_admissible(2, 2, 2, n4));  // sum = 6 = 2n-2
}

TEST_CASE("negligible vertices") {
    for (long n = 3; n <= 6; ++n) {
        RootContext ctx(n);
        CHECK(!negligible_vertex(0, 0, 0, ctx));
        int a = ctx.max_label();
        CHECK(negligible_vertex(a, 1, a + 1, ctx));  // sum = 2n-2
    }
    CHECK_THROWS_AS(negligible_vertex(1, 1, 1, RootContext(4)), NotAdmissible);
}

TEST_CASE("negligibility equals vanishing of the specialized theta") {
    for (long n = 3; n <= 6; ++n) {
        RootContext ctx(n);
        for (int a = 0; a <= n - 1; ++a)
            for (int b = 0; b <= n - 1; ++b)
                for (int c = 0; c <= n - 1; ++c) {
                    if (!admissible(a, b, c)) continue;
                    bool vanished = ctx.at(theta_formula(a, b, c)).is_zero();
                    CHECK(vanished == negligible_vertex(a, b, c, ctx));
                }
    }
}

TEST_CASE("truncated sum") {
    RootContext n3(3);
    CHECK(truncated_sum(1, 1, n3) == 0);  // 2n - (a+b) - 4
    RootContext n5(5);
    CHECK(truncated_sum(1, 2, n5) == 3);
    CHECK(truncated_sum(3, 3, n5) == 0);
    CHECK(truncated_sum(2, 3, n5) == 1);
    // Closure: every emitted k is a valid label and (a,b,k) is q-admissible.
    for (long n = 3; n <= 6; ++n) {
        RootContext ctx(n);
        for (int a = 0; a <= ctx.max_label(); ++a)
            for (int b = 0; b <= ctx.max_label(); ++b) {
                int top = truncated_sum(a, b, ctx);
                CHECK(top <= ctx.max_label());
                CHECK((top - std::abs(a - b)) % 2 == 0);
                CHECK(top - std::abs(a - b) >= 0);
                for (int k = std::abs(a - b); k <= top; k += 2)
                    CHECK(q_admissible(a, b, k, ctx));
            }
    }
}

TEST_CASE("truncated fusion") {
    RootContext n3(3);
    auto f11 = truncated_fusion(1, 1, n3);
    REQUIRE(f11.size() == 1);  // 1 (x) 1 = 0 at n = 3
    CHECK(f11[0].first == 0);
    CHECK(f11[0].second == n3.at(RatScalar::one() / qint(2)));

    RootContext n5(5);
    for (int b = 0; b <= n5.max_label(); ++b) {
        auto f = truncated_fusion(0, b, n5);
        REQUIRE(f.size() == 1);
        CHECK(f[0].first == b);
        CHECK(f[0].second.is_one());
    }
    CHECK_THROWS_AS(truncated_fusion(4, 0, RootContext(5)), LabelOutOfRange);
}

TEST_CASE("truncated tensor product identity") {
    // The identity lives in the negligible quotient: below the truncation
    // threshold it is exact on the nose, above it the two sides differ by a
    // negligible morphism (the proof discards p_{n-1} terms).
    for (long n = 4; n <= 5; ++n) {
        RootContext ctx(n);
        for (int a = 0; a <= ctx.max_label(); ++a)
            for (int b = 0; b <= ctx.max_label(); ++b) {
                auto lhs = tensor(jw_at_root(a, n), jw_at_root(b, n));
                Morphism<CycloScalar> sum(a + b, a + b);
                for (const auto& [k, lam] : truncated_fusion(a, b, ctx)) {
                    auto v = specialize(vertex_morphism(a, b, k), n);
                    sum = sum + compose(bar(v), v).scaled(lam);
                }
                if (a + b < n - 1) {
                    CHECK(sum == lhs);
                } else {
                    CHECK(sum != lhs);
                    CHECK(is_negligible(sum - lhs));
                }
            }
    }
}

TEST_CASE("recoupling identity holds generically") {
    // H_j = sum_i r_i I_i expanded in the TL basis, labels <= 2.
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
            for (int c = 0; c <= 2; ++c)
                for (int d = 0; d <= 2; ++d)
                    for (int j = 0; j <= 4; ++j) {
                        if (!admissible(a, b, j) || !admissible(c, d, j)) continue;
                        Morphism<RatScalar> h = h_net(a, b, c, d, j);
                        Morphism<RatScalar> sum(a + d, b + c);
                        for (int i : recoupling_range(a, b, c, d))
                            sum = sum +
                                  i_net(a, b, c, d, i).scaled(sixj_generic(a, b, i, c, d, j));
                        CHECK(sum == h);
                    }
}

TEST_CASE("sixj special cases") {
    // j = 0 anchor: {a,a,i; c,c,0} = [i+1]/theta(a,c,i).
    for (int a = 0; a <= 3; ++a)
        for (int c = 0; c <= 3; ++c)
            for (int i : recoupling_range(a, a, c, c))
                CHECK(sixj_generic(a, a, i, c, c, 0) == qint(i + 1) / theta_formula(a, c, i));

    // a = 0 forces j = b, i = d and the value 1.
    for (int b = 0; b <= 3; ++b)
        for (int d = 0; d <= 3; ++d)
            for (int c = 0; c <= 3; ++c) {
                if (!admissible(c, d, b) || !admissible(b, c, d)) continue;
                CHECK(sixj_generic(0, b, d, c, d, b).is_one());
            }

    // The worked 2x2 system on all-unit external legs: middle labels live in
    // {0,2} on both sides (parity rules out an odd middle).
    for (int i : {0, 2})
        for (int j : {0, 2})
            CHECK(sixj_generic(1, 1, i, 1, 1, j) == sixj_generic_dense(1, 1, i, 1, 1, j));
    CHECK_THROWS_AS(sixj_generic(1, 1, 0, 1, 1, 1), NotAdmissible);
}

TEST_CASE("sixj two-oracle agreement at roots") {
    for (long n : {4L, 5L}) {
        RootContext ctx(n);
        int top = std::min(2, ctx.max_label());
        for (int a = 0; a <= top; ++a)
            for (int b = 0; b <= top; ++b)
                for (int c = 0; c <= top; ++c)
                    for (int d = 0; d <= top; ++d)
                        for (int j = 0; j <= ctx.max_label(); ++j) {
                            if (!q_admissible(a, b, j, ctx) || !q_admissible(c, d, j, ctx))
                                continue;
                            for (int i : recoupling_range(a, b, c, d, ctx))
                                CHECK(sixj(a, b, i, c, d, j, ctx) ==
                                      sixj_dense(a, b, i, c, d, j, ctx));
                        }
    }
}

TEST_CASE("direct cyclotomic sixj agrees with the specialized generic value") {
    RootContext ctx(5);
    CHECK(i_net_at_root(1, 1, 1, 1, 2, ctx) == specialize(i_net(1, 1, 1, 1, 2), 5));
    CHECK(h_net_at_root(1, 1, 1, 1, 2, ctx) == specialize(h_net(1, 1, 1, 1, 2), 5));
    // The root-side Gram path, exercised directly.
    for (int i : {0, 2})
        for (int j : {0, 2}) {
            auto direct = sixj_at_root_direct(1, 1, i, 1, 1, j, ctx);
            CHECK(direct == ctx.at(sixj_generic(1, 1, i, 1, 1, j)));
            CHECK(direct == sixj_dense(1, 1, i, 1, 1, j, ctx));
        }
}

TEST_CASE("orthogonality") {
    RootContext n3(3);
    // Single-term sum at n=3: a=b=c=d=1, j=k=0.
    CHECK(orthogonality_check(1, 1, 1, 1, 0, 0, n3));

    for (long n = 3; n <= 4; ++n) {
        RootContext ctx(n);
        int top = ctx.max_label();
        for (int a = 0; a <= top; ++a)
            for (int b = 0; b <= top; ++b)
                for (int c = 0; c <= top; ++c)
                    for (int d = 0; d <= top; ++d)
                        for (int j = 0; j <= top; ++j)
                            for (int k = 0; k <= top; ++k) {
                                if (!q_admissible(a, b, j, ctx) ||
                                    !q_admissible(c, d, j, ctx) ||
                                    !q_admissible(a, b, k, ctx) ||
                                    !q_admissible(c, d, k, ctx))
                                    continue;
                                CHECK(orthogonality_check(a, b, c, d, j, k, ctx));
                            }
    }
}

TEST_CASE("sixj rejects inadmissible labels") {
    RootContext ctx(3);
    CHECK_THROWS_AS(sixj(1, 1, 2, 1, 1, 0, ctx), NotAdmissible);
    CHECK_THROWS_AS(sixj_generic(1, 1, 1, 1, 1, 0), NotAdmissible);
}
