#ifndef TLJ_NETS_HPP
#define TLJ_NETS_HPP

#include <optional>
#include <vector>

#include "tlj/fastcompose.hpp"
#include "tlj/jones_wenzl.hpp"

namespace tlj {

/// (a,b,c) admissible: even sum and the three triangle inequalities.
bool admissible(int a, int b, int c);

/// theta(a,b,c) = Net(m,n,l) = [m]![n]![l]![m+n+l+1]! / ([m+n]![n+l]![m+l]!)
/// with m = (a+b-c)/2, n = (b+c-a)/2, l = (a+c-b)/2.
RatScalar theta_formula(int a, int b, int c);
RatScalar net_formula(int m, int n, int l);

/// Fusion coefficients lambda(a,b,k) = [k+1]/theta(a,b,k) for
/// k = |a-b|, |a-b|+2, ..., a+b.
std::vector<std::pair<int, RatScalar>> fusion_coefficients(int a, int b);

/// The basis morphism of Hom(p_a ox p_b, p_c): p_c o f o (p_a ox p_b), where
/// f is the k-fold nested-cap diagram, k = (a+b-c)/2. The coefficient of f
/// itself is exactly 1. Cached.
const Morphism<RatScalar>& vertex_morphism(int a, int b, int c);
/// Same, with denominators cleared. Cached.
const ClearedMorphism& vertex_cleared(int a, int b, int c);
/// The nested-cap diagram f(a,b,c): a+b -> c alone.
Pairing vertex_cap_diagram(int a, int b, int c);

/// phi: column of vertex morphisms g_{a,b,k}; psi: row of
/// ([k+1]/theta(a,b,k)) * bar(g_{a,b,k}); labels lists the k values.
struct PhiPsi {
    std::vector<int> labels;
    std::vector<Morphism<RatScalar>> phi;  // a+b -> k
    std::vector<Morphism<RatScalar>> psi;  // k -> a+b
};
PhiPsi phi_psi(int a, int b);

/// Roundabout: composing the (c,d)->a vertex under the (c,d)->b vertex.
/// survives = (a == b); scalar = theta(a,c,d)/[a+1] when it survives.
struct BubbleResult {
    RatScalar scalar;
    bool survives = false;
};
BubbleResult bubble(int a, int b, int c, int d);

/// A planar uni-trivalent net given by its ribbon structure: per vertex the
/// counterclockwise cyclic list of incident edge ids (a self-loop edge
/// appears twice). Boundary vertices have degree one. Edges carry labels
/// (strand counts); vertex-free circle components are listed separately.
struct TrivalentNet {
    struct Vertex {
        bool internal = true;
        std::vector<int> edges;  // ccw; size 3 (internal) or 1 (boundary)
    };
    std::vector<Vertex> vertices;
    std::vector<int> edge_labels;
    std::vector<int> free_loop_labels;

    int edge_count() const { return static_cast<int>(edge_labels.size()); }
};

/// Result of compiling a net: a fan morphism 0 -> (sum of open stub labels),
/// stubs listed left to right (for nets with boundary, in contour order
/// starting at the first boundary vertex). A closed net compiles to a
/// 0 -> 0 morphism whose value() is the scalar it represents.
template <class R>
struct CompiledNet {
    Morphism<R> fan;
    std::vector<int> stub_vertices;  // boundary vertex index per stub
    std::vector<int> stub_labels;

    bool closed() const { return stub_labels.empty(); }
    R value() const {
        if (!closed()) throw ShapeMismatch("net has open legs; no scalar value");
        return fan.coefficient(Pairing::make(0, 0, {}));
    }
};

/// Compile over Q(q). Throws NotAdmissible on a bad vertex and
/// NonPlanarEmbedding when the ribbon structure has positive genus.
CompiledNet<RatScalar> compile_net(const TrivalentNet& net);
/// Compile at q = zeta_{2n}.
CompiledNet<CycloScalar> compile_net_at_root(const TrivalentNet& net, long n);

/// Closed-net scalar helpers.
RatScalar net_value(const TrivalentNet& net);
CycloScalar net_value_at_root(const TrivalentNet& net, long n);

/// The closed theta net and the single labelled circle, as nets.
TrivalentNet make_theta_net(int a, int b, int c);
TrivalentNet make_loop_net(int a);

/// Closed-theta evaluation through compile_net, cached per triple.
RatScalar theta_by_net(int a, int b, int c);

/// Triangle-shrinking checks. Both sides compiled as open nets; the k+1 move
/// must equal the plain vertex, the k-1 move the plain vertex scaled by
/// (-1)^s [k-s]/[k], s = (k+b-1-a)/2.
struct TriangleReport {
    bool k_plus_applicable = false;
    bool k_plus_holds = false;
    bool k_minus_applicable = false;
    bool k_minus_holds = false;
    RatScalar k_minus_coefficient;
    bool all_applicable_hold() const {
        return (!k_plus_applicable || k_plus_holds) &&
               (!k_minus_applicable || k_minus_holds);
    }
};
TriangleReport triangle_checks(int a, int b, int k);

}  // namespace tlj

#endif
