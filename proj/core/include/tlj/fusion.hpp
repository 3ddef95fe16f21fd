#ifndef TLJ_FUSION_HPP
#define TLJ_FUSION_HPP

#include <array>
#include <vector>

#include "tlj/linalg.hpp"
#include "tlj/nets.hpp"

namespace tlj {

/// Evaluation context at q = e^{i pi / n}, a primitive 2n-th root of unity.
/// Simple objects are the Jones-Wenzl projectors p_0, ..., p_{n-2}; p_{n-1}
/// exists but is negligible.
struct RootContext {
    long n;

    explicit RootContext(long root_n) : n(root_n) {
        if (n < 2) throw IndexOutOfRange("root context needs n >= 2");
    }
    long order() const { return 2 * n; }
    int max_label() const { return static_cast<int>(n) - 2; }
    CycloScalar zero() const { return CycloScalar::zero(order()); }
    CycloScalar one() const { return CycloScalar::one(order()); }
    CycloScalar at(const RatScalar& x) const { return specialize(x, n); }
};

/// Admissible, all labels <= n-2, and a+b+c < 2n-2.
bool q_admissible(int a, int b, int c, const RootContext& ctx);

/// For an admissible triple: the vertex is negligible iff a+b+c >= 2n-2.
bool negligible_vertex(int a, int b, int c, const RootContext& ctx);

/// The truncated sum a [+]_n b: a+b below the n-1 threshold, else 2n-(a+b)-4.
int truncated_sum(int a, int b, const RootContext& ctx);

/// Truncated fusion rule: pairs (k, lambda(a,b,k) at the root) for
/// k = |a-b|, |a-b|+2, ..., a [+]_n b.
std::vector<std::pair<int, CycloScalar>> truncated_fusion(int a, int b,
                                                          const RootContext& ctx);

/// The recoupling H- and I-nets on external legs a (bottom left), b (top
/// left), c (top right), d (bottom right), as morphisms a+d -> b+c.
Morphism<RatScalar> h_net(int a, int b, int c, int d, int j);
Morphism<RatScalar> i_net(int a, int b, int c, int d, int i);
Morphism<CycloScalar> h_net_at_root(int a, int b, int c, int d, int j,
                                    const RootContext& ctx);
Morphism<CycloScalar> i_net_at_root(int a, int b, int c, int d, int i,
                                    const RootContext& ctx);

/// Labels i that can appear in the recoupling expansion of H_j.
std::vector<int> recoupling_range(int a, int b, int c, int d);
std::vector<int> recoupling_range(int a, int b, int c, int d, const RootContext& ctx);

/// q-6j symbols {a,b,i; c,d,j}: the coefficient of the I-net with middle i in
/// the recoupling expansion of the H-net with middle j. Computed by Gram
/// projection against the I-tree (the Gram diagonal evaluated
/// diagrammatically, not assumed); memoized. The root version specializes the
/// generic value and falls back to sixj_at_root_direct when the generic
/// expression dies at the root.
RatScalar sixj_generic(int a, int b, int i, int c, int d, int j);
CycloScalar sixj(int a, int b, int i, int c, int d, int j, const RootContext& ctx);
CycloScalar sixj_at_root_direct(int a, int b, int i, int c, int d, int j,
                                const RootContext& ctx);

/// Independent oracle: expand both nets in the raw TL Catalan basis of
/// Hom(a+d, b+c) and solve the dense linear system. At a root of unity the
/// identity holds modulo negligibles, so the solve augments the tree columns
/// with a basis of the negligible subspace (the radical of the trace pairing).
RatScalar sixj_generic_dense(int a, int b, int i, int c, int d, int j);
CycloScalar sixj_dense(int a, int b, int i, int c, int d, int j,
                       const RootContext& ctx);

/// Negligibility test: tr(g f) = 0 for every g in the Catalan basis of the
/// reverse hom-space.
bool is_negligible(const Morphism<CycloScalar>& f);

/// Basis of the negligible subspace of Hom(m, k) at the root, as coefficient
/// vectors over pairing_basis(m, k).
Matrix<CycloScalar> negligible_kernel(int m, int k, const RootContext& ctx);

/// Orthogonality: sum_i {a,b,i;c,d,j} {d,a,k;b,c,i} = delta_{jk}.
bool orthogonality_check(int a, int b, int c, int d, int j, int k,
                         const RootContext& ctx);

/// Pentagon (Biedenharn-Elliott) coherence on the disk with five marked
/// boundary points: the two HI-move paths between the two extreme caterpillar
/// spines induce equal matrices on the coloring bases.
bool pentagon_check(const std::array<int, 5>& boundary_labels, const RootContext& ctx);

}  // namespace tlj

#endif
