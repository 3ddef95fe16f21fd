#ifndef TLJ_SKEIN_HPP
#define TLJ_SKEIN_HPP

#include <map>
#include <string>
#include <vector>

#include "tlj/fusion.hpp"

namespace tlj {

/// A trivalent spine of an n-holed disk: a ribbon graph with univalent
/// boundary-marked vertices (ordered by their position in the vertex list),
/// trivalent internal vertices, and vertex-free circle components. Stored
/// exactly like a TrivalentNet minus the labels: per vertex the ccw cyclic
/// list of incident edge ids, a self-loop edge appearing twice.
struct Spine {
    struct Vertex {
        bool internal = true;
        std::vector<int> edges;
    };
    std::vector<Vertex> vertices;
    int edge_count = 0;
    int free_loops = 0;
    /// Optional default labels for boundary-attached edges, from the file.
    std::map<int, int> boundary_labels;

    std::vector<int> boundary_vertices() const;
    /// Edges incident to a boundary vertex.
    std::vector<int> boundary_edges() const;
    /// First Betti number = holes of the thickened surface.
    int holes() const;
};

/// Parse and validate the spine JSON document:
///   {"vertices": [{"kind": "internal"|"boundary",
///                  "edge_cyclic_order": [edge ids...]}, ...],
///    "edges": [[v, w], ...],
///    "free_loops": k,
///    "boundary_labels": {"edge": label, ...},   // optional
///    "holes": n}                                 // optional, validated
/// Throws ParseError, InvalidDegree, EulerMismatch.
Spine load_spine(const std::string& json_text);
std::string spine_to_json(const Spine& spine);

/// An assignment of simple labels to edges and free loops, q-admissible at
/// every internal vertex.
struct Coloring {
    std::vector<int> edge_labels;
    std::vector<int> loop_labels;
    bool operator==(const Coloring& o) const {
        return edge_labels == o.edge_labels && loop_labels == o.loop_labels;
    }
    bool operator<(const Coloring& o) const {
        if (edge_labels != o.edge_labels) return edge_labels < o.edge_labels;
        return loop_labels < o.loop_labels;
    }
};

/// The coloring basis of C(s) with the given fixed boundary labels, in
/// lexicographic order (edge labels in edge-index order, then loop labels).
struct SkeinBasis {
    Spine spine;
    long root_n = 0;
    std::map<int, int> boundary;
    std::vector<Coloring> colorings;

    size_t dimension() const { return colorings.size(); }
    long index_of(const Coloring& c) const;  // -1 when absent
};

/// boundary_labels must cover exactly the boundary-attached edges; labels in
/// 0..n-2. Throws LabelOutOfRange.
SkeinBasis enumerate_colorings(const Spine& spine, const RootContext& ctx,
                               const std::map<int, int>& boundary_labels);

/// An HI move: contract an internal edge joining two distinct trivalent
/// vertices and re-expand perpendicularly. orient picks which endpoint plays
/// the role of the left H-vertex (0: the endpoint listed first).
struct HIMove {
    int edge = 0;
    int orient = 0;
};

/// Apply the move; the new edge keeps the old edge id. Double application
/// returns a spine structurally equal to the input. Throws InvalidEdge on
/// self-loops and boundary-adjacent edges.
Spine apply_hi(const Spine& spine, const HIMove& move);

/// The 6j-weighted change of basis C(s) -> C(apply_hi(s)); entries indexed
/// (target coloring, source coloring), identity off the moved edge.
struct HIMatrix {
    SkeinBasis source;
    SkeinBasis target;
    Matrix<CycloScalar> entries;
};
HIMatrix hi_matrix(const Spine& spine, const HIMove& move, const RootContext& ctx,
                   const std::map<int, int>& boundary_labels);

/// Composite of the per-move matrices along the sequence.
struct Transport {
    Spine spine;
    SkeinBasis source;
    SkeinBasis target;
    Matrix<CycloScalar> matrix;
};
Transport transport(const Spine& spine, const std::vector<HIMove>& moves,
                    const RootContext& ctx, const std::map<int, int>& boundary_labels);

/// Canonical form respecting the ribbon structure and boundary order;
/// structural equality of spines is equality of canonical forms.
std::string spine_canonical_form(const Spine& spine);
bool spine_equal(const Spine& a, const Spine& b);

/// The labelled net of a colored spine (for closed-net evaluation).
TrivalentNet spine_net(const Spine& spine, const Coloring& coloring);

/// Skein dimension of the k-holed disk computed Verlinde-style: the trace of
/// the (k-1)-th power of the rung transfer matrix of the circular-ladder
/// spine; agrees with direct coloring enumeration (two-oracle check lives in
/// the verify suite). k >= 2.
long ladder_dimension_by_trace(int holes, const RootContext& ctx);
/// The circular-ladder spine with `holes` holes (holes-1 rungs); holes = 2 is
/// the dumbbell of two monogon lollipops.
Spine make_ladder_spine(int holes);
/// The annulus spine: one free loop.
Spine make_annulus_spine();
/// The two standard spines of the doubly-holed disk.
Spine make_dumbbell_spine();
Spine make_theta_spine();
/// Caterpillar tree spine of the disk with `marks` boundary points.
Spine make_caterpillar_spine(int marks);

}  // namespace tlj

#endif
