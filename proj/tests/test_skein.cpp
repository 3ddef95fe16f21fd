#include "doctest.h"

#include "tlj/errors.hpp"
#include "tlj/skein.hpp"

using namespace tlj;

namespace {
const std::map<int, int> no_boundary;
}

TEST_CASE("spine json round trip and validation") {
    Spine theta = make_theta_spine();
    Spine loaded = load_spine(spine_to_json(theta));
    CHECK(spine_equal(theta, loaded));
    CHECK(theta.holes() == 2);

    Spine dumbbell = make_dumbbell_spine();
    CHECK(dumbbell.holes() == 2);
    CHECK(spine_equal(dumbbell, load_spine(spine_to_json(dumbbell))));
    CHECK(!spine_equal(dumbbell, theta));

    Spine annulus = make_annulus_spine();
    CHECK(annulus.holes() == 1);
    CHECK(spine_equal(annulus, load_spine(spine_to_json(annulus))));

    CHECK_THROWS_AS(load_spine("{ not json"), ParseError);
    CHECK_THROWS_AS(
        load_spine(R"({"vertices":[{"kind":"internal","edge_cyclic_order":[0,1]}],)"
                   R"("edges":[[0,0],[0,0]]})"),
        InvalidDegree);
    // Euler/holes mismatch.
    CHECK_THROWS_AS(
        load_spine(R"({"vertices":[{"kind":"internal","edge_cyclic_order":[0,1,2]},)"
                   R"({"kind":"internal","edge_cyclic_order":[2,1,0]}],)"
                   R"("edges":[[0,1],[0,1],[0,1]],"holes":5})"),
        EulerMismatch);
    // Edge endpoints disagreeing with rotations.
    CHECK_THROWS_AS(
        load_spine(R"({"vertices":[{"kind":"internal","edge_cyclic_order":[0,1,2]},)"
                   R"({"kind":"internal","edge_cyclic_order":[2,1,0]}],)"
                   R"("edges":[[0,0],[0,1],[0,1]]})"),
        ParseError);
}

TEST_CASE("coloring bases") {
    RootContext n3(3);
    // Theta spine at n = 3: the four colorings (000),(011),(101),(110).
    auto theta_basis = enumerate_colorings(make_theta_spine(), n3, no_boundary);
    REQUIRE(theta_basis.dimension() == 4);
    CHECK(theta_basis.colorings[0].edge_labels == std::vector<int>{0, 0, 0});
    CHECK(theta_basis.colorings[1].edge_labels == std::vector<int>{0, 1, 1});
    CHECK(theta_basis.colorings[2].edge_labels == std::vector<int>{1, 0, 1});
    CHECK(theta_basis.colorings[3].edge_labels == std::vector<int>{1, 1, 0});

    // Dumbbell at n = 3 is 4-dimensional as well.
    CHECK(enumerate_colorings(make_dumbbell_spine(), n3, no_boundary).dimension() == 4);

    // Annulus: one free loop, n-1 colorings.
    for (long n = 3; n <= 6; ++n) {
        RootContext ctx(n);
        CHECK(enumerate_colorings(make_annulus_spine(), ctx, no_boundary).dimension() ==
              static_cast<size_t>(n - 1));
    }
}

TEST_CASE("boundary label validation") {
    RootContext ctx(4);
    Spine tree = make_caterpillar_spine(3);
    CHECK_THROWS_AS(enumerate_colorings(tree, ctx, no_boundary), LabelOutOfRange);
    std::map<int, int> bad{{0, 0}, {1, 0}, {2, 9}};
    CHECK_THROWS_AS(enumerate_colorings(tree, ctx, bad), LabelOutOfRange);
    std::map<int, int> good{{0, 1}, {1, 1}, {2, 2}};
    auto basis = enumerate_colorings(tree, ctx, good);
    CHECK(basis.dimension() == 1);  // single vertex, fixed legs
}

TEST_CASE("hi move structure") {
    Spine theta = make_theta_spine();
    // Moving the middle chord turns one theta presentation into the other.
    Spine moved = apply_hi(theta, {1, 0});
    CHECK(spine_equal(moved, theta));  // theta is self-similar under the move
    Spine twice = apply_hi(moved, {1, 0});
    CHECK(spine_equal(twice, theta));

    // Dumbbell <-> theta under the stem move.
    Spine dumbbell = make_dumbbell_spine();
    Spine after = apply_hi(dumbbell, {1, 0});
    CHECK(spine_equal(after, make_theta_spine()));
    CHECK(spine_equal(apply_hi(after, {1, 0}), dumbbell));

    CHECK_THROWS_AS(apply_hi(dumbbell, {0, 0}), InvalidEdge);  // self-loop
    Spine tree = make_caterpillar_spine(3);
    CHECK_THROWS_AS(apply_hi(tree, {0, 0}), InvalidEdge);  // boundary-adjacent
}

TEST_CASE("hi matrices invert each other") {
    for (long n = 3; n <= 5; ++n) {
        RootContext ctx(n);
        std::vector<Spine> library{make_theta_spine(), make_dumbbell_spine(),
                                   make_ladder_spine(3)};
        for (const auto& spine : library) {
            auto basis = enumerate_colorings(spine, ctx, no_boundary);
            for (int e = 0; e < spine.edge_count; ++e) {
                HIMove move{e, 0};
                Spine target;
                try {
                    target = apply_hi(spine, move);
                } catch (const InvalidEdge&) {
                    continue;
                }
                auto forward = hi_matrix(spine, move, ctx, no_boundary);
                auto backward = hi_matrix(target, move, ctx, no_boundary);
                CHECK(forward.target.dimension() == forward.source.dimension());
                CHECK(is_identity(matmul(backward.entries, forward.entries)));
                CHECK(is_identity(matmul(forward.entries, backward.entries)));
            }
        }
    }
}

TEST_CASE("dimension is invariant under moves") {
    for (long n = 3; n <= 6; ++n) {
        RootContext ctx(n);
        std::vector<Spine> library{make_theta_spine(), make_dumbbell_spine(),
                                   make_ladder_spine(3), make_ladder_spine(4)};
        for (const auto& spine : library) {
            size_t dim = enumerate_colorings(spine, ctx, no_boundary).dimension();
            for (int e = 0; e < spine.edge_count; ++e) {
                try {
                    Spine moved = apply_hi(spine, {e, 0});
                    CHECK(enumerate_colorings(moved, ctx, no_boundary).dimension() == dim);
                } catch (const InvalidEdge&) {
                }
            }
        }
    }
}

TEST_CASE("dumbbell to theta transport is invertible at n=3") {
    RootContext ctx(3);
    auto m = hi_matrix(make_dumbbell_spine(), {1, 0}, ctx, no_boundary);
    REQUIRE(m.source.dimension() == 4);
    REQUIRE(m.target.dimension() == 4);
    auto inv = inverse(m.entries);
    REQUIRE(inv.has_value());
    CHECK(is_identity(matmul(*inv, m.entries)));
}

TEST_CASE("transport composes and reverses") {
    RootContext ctx(4);
    Spine spine = make_ladder_spine(3);
    // empty sequence: identity
    auto t0 = transport(spine, {}, ctx, no_boundary);
    CHECK(is_identity(t0.matrix));

    auto first_movable = [](const Spine& s, int avoid) {
        for (int e = 0; e < s.edge_count; ++e) {
            if (e == avoid) continue;
            try {
                apply_hi(s, {e, 0});
                return e;
            } catch (const InvalidEdge&) {
            }
        }
        return -1;
    };
    int e0 = first_movable(spine, -1);
    REQUIRE(e0 >= 0);
    Spine mid = apply_hi(spine, {e0, 0});
    int e1 = first_movable(mid, e0);
    REQUIRE(e1 >= 0);
    // A sequence followed by its reverse is the identity.
    std::vector<HIMove> seq{{e0, 0}, {e1, 0}};
    auto fwd = transport(spine, seq, ctx, no_boundary);
    std::vector<HIMove> back{{e1, 0}, {e0, 0}};
    auto rev = transport(fwd.spine, back, ctx, no_boundary);
    CHECK(spine_equal(rev.spine, spine));
    CHECK(is_identity(matmul(rev.matrix, fwd.matrix)));
}

TEST_CASE("verlinde style ladder dimensions") {
    for (long n = 3; n <= 5; ++n) {
        RootContext ctx(n);
        for (int holes = 2; holes <= 3; ++holes) {
            auto direct =
                enumerate_colorings(make_ladder_spine(holes), ctx, no_boundary).dimension();
            CHECK(ladder_dimension_by_trace(holes, ctx) ==
                  static_cast<long>(direct));
        }
    }
    // Annulus: no vertex constraints, one label per coloring.
    RootContext ctx(5);
    CHECK(enumerate_colorings(make_annulus_spine(), ctx, no_boundary).dimension() == 4);
}

TEST_CASE("spine nets evaluate") {
    // The all-zero coloring of the theta spine is the empty picture.
    RootContext ctx(3);
    auto basis = enumerate_colorings(make_theta_spine(), ctx, no_boundary);
    CHECK(net_value_at_root(spine_net(basis.spine, basis.colorings[0]), 3).is_one());
    // Ladder spine with all-zero labels compiles too (planarity check).
    Coloring zero;
    zero.edge_labels.assign(static_cast<size_t>(make_ladder_spine(3).edge_count), 0);
    CHECK(net_value_at_root(spine_net(make_ladder_spine(3), zero), 3).is_one());
}

TEST_CASE("pentagon coherence") {
    RootContext n4(4);
    CHECK(pentagon_check({0, 0, 0, 0, 0}, n4));
    CHECK(pentagon_check({1, 1, 1, 1, 0}, n4));
    CHECK(pentagon_check({1, 1, 1, 1, 2}, n4));
    RootContext n5(5);
    CHECK(pentagon_check({1, 2, 1, 2, 2}, n5));
}
