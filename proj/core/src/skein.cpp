#include "tlj/skein.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

#include "json.hpp"

namespace tlj {

namespace {

// Half-edge bookkeeping: edge e owns halves 2e and 2e+1, assigned in order of
// appearance scanning the vertex rotations.
struct Halves {
    std::vector<std::vector<int>> rot;  // per vertex: ccw half ids
    std::vector<int> vertex_of;

    static Halves build(const Spine& s) {
        Halves h;
        h.vertex_of.assign(2 * static_cast<size_t>(s.edge_count), -1);
        h.rot.resize(s.vertices.size());
        std::vector<int> seen(static_cast<size_t>(s.edge_count), 0);
        for (size_t v = 0; v < s.vertices.size(); ++v) {
            for (int e : s.vertices[v].edges) {
                if (e < 0 || e >= s.edge_count)
                    throw ParseError("edge id out of range in vertex rotation");
                if (seen[static_cast<size_t>(e)] >= 2)
                    throw InvalidDegree("edge " + std::to_string(e) +
                                        " has more than two endpoints");
                int half = 2 * e + seen[static_cast<size_t>(e)]++;
                h.rot[v].push_back(half);
                h.vertex_of[static_cast<size_t>(half)] = static_cast<int>(v);
            }
        }
        for (int e = 0; e < s.edge_count; ++e)
            if (seen[static_cast<size_t>(e)] != 2)
                throw InvalidDegree("edge " + std::to_string(e) +
                                    " does not have two endpoints");
        return h;
    }
};

void validate_degrees(const Spine& s) {
    for (size_t v = 0; v < s.vertices.size(); ++v) {
        size_t want = s.vertices[v].internal ? 3 : 1;
        if (s.vertices[v].edges.size() != want)
            throw InvalidDegree("vertex " + std::to_string(v) + " has degree " +
                                std::to_string(s.vertices[v].edges.size()) +
                                ", expected " + std::to_string(want));
    }
    Halves::build(s);
}

int graph_components(const Spine& s) {
    const size_t nv = s.vertices.size();
    std::vector<int> parent(nv);
    for (size_t i = 0; i < nv; ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    Halves h = Halves::build(s);
    for (int e = 0; e < s.edge_count; ++e) {
        int a = find(h.vertex_of[static_cast<size_t>(2 * e)]);
        int b = find(h.vertex_of[static_cast<size_t>(2 * e + 1)]);
        if (a != b) parent[static_cast<size_t>(a)] = b;
    }
    int comps = 0;
    for (size_t i = 0; i < nv; ++i)
        if (find(static_cast<int>(i)) == static_cast<int>(i)) ++comps;
    return comps;
}

}  // namespace

std::vector<int> Spine::boundary_vertices() const {
    std::vector<int> out;
    for (size_t v = 0; v < vertices.size(); ++v)
        if (!vertices[v].internal) out.push_back(static_cast<int>(v));
    return out;
}

std::vector<int> Spine::boundary_edges() const {
    std::vector<int> out;
    for (const auto& v : vertices)
        if (!v.internal)
            for (int e : v.edges) out.push_back(e);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int Spine::holes() const {
    // First Betti number: E - V + C, counting free loops as extra circle
    // components (each contributes one hole and zero Euler characteristic).
    int comps = vertices.empty() ? 0 : graph_components(*this);
    return edge_count - static_cast<int>(vertices.size()) + comps + free_loops;
}

Spine load_spine(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("spine JSON: ") + e.what());
    }
    Spine s;
    try {
        if (!doc.contains("vertices") || !doc["vertices"].is_array())
            throw ParseError("spine JSON: missing vertices array");
        for (const auto& v : doc["vertices"]) {
            Spine::Vertex vx;
            std::string kind = v.at("kind").get<std::string>();
            if (kind == "internal") {
                vx.internal = true;
            } else if (kind == "boundary") {
                vx.internal = false;
            } else {
                throw ParseError("spine JSON: vertex kind must be internal|boundary");
            }
            vx.edges = v.at("edge_cyclic_order").get<std::vector<int>>();
            s.vertices.push_back(std::move(vx));
        }
        std::vector<std::array<int, 2>> edge_ends;
        if (doc.contains("edges")) {
            for (const auto& e : doc["edges"]) {
                auto pair = e.get<std::vector<int>>();
                if (pair.size() != 2) throw ParseError("spine JSON: edge needs 2 ends");
                edge_ends.push_back({pair[0], pair[1]});
            }
        }
        s.edge_count = static_cast<int>(edge_ends.size());
        if (s.edge_count == 0) {
            // Edge count may also be implied by the rotations.
            int max_edge = -1;
            for (const auto& v : s.vertices)
                for (int e : v.edges) max_edge = std::max(max_edge, e);
            s.edge_count = max_edge + 1;
        }
        s.free_loops = doc.value("free_loops", 0);
        if (s.free_loops < 0) throw ParseError("spine JSON: negative free_loops");
        if (doc.contains("boundary_labels"))
            for (const auto& [key, value] : doc["boundary_labels"].items())
                s.boundary_labels[std::stoi(key)] = value.get<int>();

        validate_degrees(s);

        // Cross-check the edges array against the rotations.
        if (!edge_ends.empty()) {
            Halves h = Halves::build(s);
            for (int e = 0; e < s.edge_count; ++e) {
                int a = h.vertex_of[static_cast<size_t>(2 * e)];
                int b = h.vertex_of[static_cast<size_t>(2 * e + 1)];
                auto want = edge_ends[static_cast<size_t>(e)];
                if (!((want[0] == a && want[1] == b) || (want[0] == b && want[1] == a)))
                    throw ParseError("spine JSON: edge " + std::to_string(e) +
                                     " endpoints disagree with the rotations");
            }
        }
        if (doc.contains("holes")) {
            int claimed = doc["holes"].get<int>();
            if (claimed != s.holes())
                throw EulerMismatch("spine claims " + std::to_string(claimed) +
                                    " holes but has " + std::to_string(s.holes()));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("spine JSON: ") + e.what());
    }
    return s;
}

std::string spine_to_json(const Spine& spine) {
    nlohmann::json doc;
    doc["vertices"] = nlohmann::json::array();
    for (const auto& v : spine.vertices)
        doc["vertices"].push_back({{"kind", v.internal ? "internal" : "boundary"},
                                   {"edge_cyclic_order", v.edges}});
    Halves h = Halves::build(spine);
    doc["edges"] = nlohmann::json::array();
    for (int e = 0; e < spine.edge_count; ++e)
        doc["edges"].push_back({h.vertex_of[static_cast<size_t>(2 * e)],
                                h.vertex_of[static_cast<size_t>(2 * e + 1)]});
    doc["free_loops"] = spine.free_loops;
    if (!spine.boundary_labels.empty()) {
        nlohmann::json labels;
        for (const auto& [e, l] : spine.boundary_labels) labels[std::to_string(e)] = l;
        doc["boundary_labels"] = labels;
    }
    doc["holes"] = spine.holes();
    return doc.dump(2);
}

long SkeinBasis::index_of(const Coloring& c) const {
    auto it = std::lower_bound(colorings.begin(), colorings.end(), c);
    if (it == colorings.end() || !(*it == c)) return -1;
    return it - colorings.begin();
}

SkeinBasis enumerate_colorings(const Spine& spine, const RootContext& ctx,
                               const std::map<int, int>& boundary_labels) {
    validate_degrees(spine);
    auto bedges = spine.boundary_edges();
    for (const auto& [e, l] : boundary_labels) {
        if (std::find(bedges.begin(), bedges.end(), e) == bedges.end())
            throw LabelOutOfRange("boundary label on non-boundary edge " +
                                  std::to_string(e));
        if (l < 0 || l > ctx.max_label())
            throw LabelOutOfRange("boundary label out of range");
    }
    for (int e : bedges)
        if (!boundary_labels.count(e))
            throw LabelOutOfRange("missing boundary label for edge " + std::to_string(e));

    SkeinBasis basis;
    basis.spine = spine;
    basis.root_n = ctx.n;
    basis.boundary = boundary_labels;

    // Vertices become checkable once their last incident edge is labelled.
    std::vector<int> check_after(spine.vertices.size(), -1);
    for (size_t v = 0; v < spine.vertices.size(); ++v)
        for (int e : spine.vertices[v].edges)
            check_after[v] = std::max(check_after[v], e);

    std::vector<int> labels(static_cast<size_t>(spine.edge_count), -1);
    std::vector<int> loops(static_cast<size_t>(spine.free_loops), 0);

    auto vertex_ok = [&](size_t v) {
        const auto& e = spine.vertices[v].edges;
        if (!spine.vertices[v].internal) return true;
        return q_admissible(labels[static_cast<size_t>(e[0])],
                            labels[static_cast<size_t>(e[1])],
                            labels[static_cast<size_t>(e[2])], ctx);
    };

    std::function<void(int)> assign = [&](int edge) {
        if (edge == spine.edge_count) {
            // Free loops carry any simple label, enumerated lexicographically.
            std::function<void(size_t)> fill = [&](size_t li) {
                if (li == loops.size()) {
                    basis.colorings.push_back(Coloring{labels, loops});
                    return;
                }
                for (int l = 0; l <= ctx.max_label(); ++l) {
                    loops[li] = l;
                    fill(li + 1);
                }
            };
            fill(0);
            return;
        }
        auto fixed = boundary_labels.find(edge);
        int lo = 0, hi = ctx.max_label();
        if (fixed != boundary_labels.end()) lo = hi = fixed->second;
        for (int l = lo; l <= hi; ++l) {
            labels[static_cast<size_t>(edge)] = l;
            bool ok = true;
            for (size_t v = 0; v < spine.vertices.size() && ok; ++v)
                if (check_after[v] == edge && !vertex_ok(v)) ok = false;
            if (ok) assign(edge + 1);
        }
        labels[static_cast<size_t>(edge)] = -1;
    };
    assign(0);
    return basis;
}

namespace {

// Letters of the H-picture around a move edge m with ccw rotations
// (m, x1, x2) at u and (m, x3, x4) at w: b = x1, a = x2, d = x3, c = x4.
struct MoveFrame {
    int u, w;
    int x1, x2, x3, x4;  // half-edges
};

MoveFrame move_frame(const Spine& spine, const Halves& h, const HIMove& move) {
    if (move.edge < 0 || move.edge >= spine.edge_count)
        throw InvalidEdge("move edge out of range");
    int h0 = 2 * move.edge, h1 = 2 * move.edge + 1;
    if (move.orient) std::swap(h0, h1);
    int u = h.vertex_of[static_cast<size_t>(h0)];
    int w = h.vertex_of[static_cast<size_t>(h1)];
    if (u == w) throw InvalidEdge("HI move on a self-loop edge");
    if (!spine.vertices[static_cast<size_t>(u)].internal ||
        !spine.vertices[static_cast<size_t>(w)].internal)
        throw InvalidEdge("HI move on a boundary-adjacent edge");
    auto after = [&](int v, int half) {
        const auto& rot = h.rot[static_cast<size_t>(v)];
        size_t r = 0;
        while (rot[r] != half) ++r;
        return std::pair<int, int>(rot[(r + 1) % 3], rot[(r + 2) % 3]);
    };
    auto [x1, x2] = after(u, h0);
    auto [x3, x4] = after(w, h1);
    return {u, w, x1, x2, x3, x4};
}

}  // namespace

Spine apply_hi(const Spine& spine, const HIMove& move) {
    validate_degrees(spine);
    Halves h = Halves::build(spine);
    MoveFrame f = move_frame(spine, h, move);

    // Contracting m gives the 4-valent rotation (x1,x2,x3,x4); the
    // perpendicular re-expansion pairs (x2,x3) at one vertex and (x4,x1) at
    // the other. The moved edge keeps its id.
    Spine out = spine;
    auto edge_of = [](int half) { return half / 2; };
    out.vertices[static_cast<size_t>(f.u)].edges = {move.edge, edge_of(f.x2),
                                                    edge_of(f.x3)};
    out.vertices[static_cast<size_t>(f.w)].edges = {move.edge, edge_of(f.x4),
                                                    edge_of(f.x1)};
    validate_degrees(out);
    return out;
}

HIMatrix hi_matrix(const Spine& spine, const HIMove& move, const RootContext& ctx,
                   const std::map<int, int>& boundary_labels) {
    Halves h = Halves::build(spine);
    MoveFrame f = move_frame(spine, h, move);
    auto edge_of = [](int half) { return half / 2; };

    HIMatrix out;
    out.source = enumerate_colorings(spine, ctx, boundary_labels);
    Spine moved = apply_hi(spine, move);
    out.target = enumerate_colorings(moved, ctx, boundary_labels);
    out.entries.assign(out.target.dimension(),
                       std::vector<CycloScalar>(out.source.dimension(), ctx.zero()));

    for (size_t col = 0; col < out.source.dimension(); ++col) {
        const Coloring& src = out.source.colorings[col];
        const int j = src.edge_labels[static_cast<size_t>(move.edge)];
        const int b = src.edge_labels[static_cast<size_t>(edge_of(f.x1))];
        const int a = src.edge_labels[static_cast<size_t>(edge_of(f.x2))];
        const int d = src.edge_labels[static_cast<size_t>(edge_of(f.x3))];
        const int c = src.edge_labels[static_cast<size_t>(edge_of(f.x4))];
        for (int i = 0; i <= ctx.max_label(); ++i) {
            if (!q_admissible(a, d, i, ctx) || !q_admissible(b, c, i, ctx)) continue;
            Coloring tgt = src;
            tgt.edge_labels[static_cast<size_t>(move.edge)] = i;
            long row = out.target.index_of(tgt);
            if (row < 0)
                throw Error("hi_matrix: recoupled coloring missing from target basis");
            out.entries[static_cast<size_t>(row)][col] = sixj(a, b, i, c, d, j, ctx);
        }
    }
    return out;
}

Transport transport(const Spine& spine, const std::vector<HIMove>& moves,
                    const RootContext& ctx, const std::map<int, int>& boundary_labels) {
    Transport out;
    out.source = enumerate_colorings(spine, ctx, boundary_labels);
    out.spine = spine;
    out.target = out.source;

    const size_t dim = out.source.dimension();
    out.matrix.assign(dim, std::vector<CycloScalar>(dim, ctx.zero()));
    for (size_t i = 0; i < dim; ++i) out.matrix[i][i] = ctx.one();

    for (const auto& move : moves) {
        HIMatrix step = hi_matrix(out.spine, move, ctx, boundary_labels);
        out.matrix = matmul(step.entries, out.matrix);
        out.spine = apply_hi(out.spine, move);
        out.target = std::move(step.target);
    }
    return out;
}

std::string spine_canonical_form(const Spine& spine) {
    validate_degrees(spine);
    Halves h = Halves::build(spine);
    const size_t nv = spine.vertices.size();

    // Encode a rooted traversal; vertices and edges are renamed in discovery
    // order, so the string depends only on the rooted ribbon structure.
    auto encode_from = [&](int root_half) {
        std::vector<int> vertex_id(nv, -1);
        std::vector<int> edge_id(static_cast<size_t>(spine.edge_count), -1);
        int next_vertex = 0, next_edge = 0;
        std::ostringstream os;
        std::queue<int> todo;  // half-edges pointing at vertices to visit
        todo.push(root_half);
        while (!todo.empty()) {
            int half = todo.front();
            todo.pop();
            int v = h.vertex_of[static_cast<size_t>(half)];
            if (vertex_id[static_cast<size_t>(v)] >= 0) continue;
            vertex_id[static_cast<size_t>(v)] = next_vertex++;
            os << (spine.vertices[static_cast<size_t>(v)].internal ? "I" : "B");
            const auto& rot = h.rot[static_cast<size_t>(v)];
            size_t start = 0;
            while (rot[start] != half) ++start;
            for (size_t t = 0; t < rot.size(); ++t) {
                int hh = rot[(start + t) % rot.size()];
                int e = hh / 2;
                if (edge_id[static_cast<size_t>(e)] < 0)
                    edge_id[static_cast<size_t>(e)] = next_edge++;
                os << " " << edge_id[static_cast<size_t>(e)];
                todo.push(hh ^ 1);
            }
            os << ";";
        }
        os << " visited=" << next_vertex;
        return os.str();
    };

    std::string best;
    auto consider = [&](const std::string& s) {
        if (best.empty() || s < best) best = s;
    };

    auto bverts = spine.boundary_vertices();
    if (!bverts.empty()) {
        // Root at the first boundary vertex; the boundary order is part of
        // the structure, so there is no minimization over boundary roots.
        best = encode_from(h.rot[static_cast<size_t>(bverts[0])][0]);
    } else {
        for (size_t v = 0; v < nv; ++v)
            for (int half : h.rot[v]) consider(encode_from(half));
    }
    std::ostringstream os;
    os << best << "|loops=" << spine.free_loops << "|V=" << nv
       << "|E=" << spine.edge_count << "|B=" << bverts.size();
    return os.str();
}

bool spine_equal(const Spine& a, const Spine& b) {
    return spine_canonical_form(a) == spine_canonical_form(b);
}

TrivalentNet spine_net(const Spine& spine, const Coloring& coloring) {
    if (static_cast<int>(coloring.edge_labels.size()) != spine.edge_count ||
        static_cast<int>(coloring.loop_labels.size()) != spine.free_loops)
        throw ShapeMismatch("coloring does not match the spine");
    TrivalentNet net;
    net.edge_labels = coloring.edge_labels;
    net.free_loop_labels = coloring.loop_labels;
    for (const auto& v : spine.vertices) net.vertices.push_back({v.internal, v.edges});
    return net;
}

Spine make_annulus_spine() {
    Spine s;
    s.free_loops = 1;
    return s;
}

Spine make_dumbbell_spine() {
    Spine s;
    s.edge_count = 3;
    s.vertices.push_back({true, {0, 0, 1}});
    s.vertices.push_back({true, {1, 2, 2}});
    return s;
}

Spine make_theta_spine() {
    Spine s;
    s.edge_count = 3;
    s.vertices.push_back({true, {0, 1, 2}});
    s.vertices.push_back({true, {2, 1, 0}});
    return s;
}

Spine make_ladder_spine(int holes) {
    if (holes < 2) throw IndexOutOfRange("ladder spine needs >= 2 holes");
    const int m = holes - 1;
    if (m == 1) return make_dumbbell_spine();
    Spine s;
    // edges: outer arcs 0..m-1, inner arcs m..2m-1, rungs 2m..3m-1
    s.edge_count = 3 * m;
    for (int i = 0; i < m; ++i) {
        int prev_outer = (i + m - 1) % m;
        s.vertices.push_back({true, {prev_outer, i, 2 * m + i}});
    }
    for (int i = 0; i < m; ++i) {
        int prev_inner = m + (i + m - 1) % m;
        s.vertices.push_back({true, {prev_inner, 2 * m + i, m + i}});
    }
    return s;
}

Spine make_caterpillar_spine(int marks) {
    if (marks < 3) throw IndexOutOfRange("caterpillar spine needs >= 3 marks");
    Spine s;
    // legs 0..marks-1, stems marks..2*marks-4
    const int stems = marks - 3;
    s.edge_count = marks + stems;
    for (int i = 0; i < marks; ++i) s.vertices.push_back({false, {i}});
    if (stems == 0) {
        s.vertices.push_back({true, {0, 2, 1}});
        return s;
    }
    // First internal vertex: legs 0,1 and stem; middle: stem, leg, stem;
    // last: stem and legs marks-2, marks-1.
    s.vertices.push_back({true, {0, marks, 1}});
    for (int t = 1; t < stems; ++t)
        s.vertices.push_back({true, {marks + t - 1, marks + t, t + 1}});
    s.vertices.push_back({true, {marks + stems - 1, marks - 1, marks - 2}});
    return s;
}

long ladder_dimension_by_trace(int holes, const RootContext& ctx) {
    if (holes < 2) throw IndexOutOfRange("trace formula needs >= 2 holes");
    const int m = holes - 1;
    const int labels = ctx.max_label() + 1;
    const int dim = labels * labels;
    // Rung transfer matrix on (outer, inner) arc label pairs.
    std::vector<std::vector<long>> t(static_cast<size_t>(dim),
                                     std::vector<long>(static_cast<size_t>(dim), 0));
    for (int x = 0; x < labels; ++x)
        for (int y = 0; y < labels; ++y)
            for (int x2 = 0; x2 < labels; ++x2)
                for (int y2 = 0; y2 < labels; ++y2) {
                    long count = 0;
                    for (int r = 0; r < labels; ++r)
                        if (q_admissible(x, x2, r, ctx) && q_admissible(y, y2, r, ctx))
                            ++count;
                    t[static_cast<size_t>(x * labels + y)]
                     [static_cast<size_t>(x2 * labels + y2)] = count;
                }
    // tr(T^m)
    std::vector<std::vector<long>> acc = t;
    for (int p = 1; p < m; ++p) {
        std::vector<std::vector<long>> next(
            static_cast<size_t>(dim), std::vector<long>(static_cast<size_t>(dim), 0));
        for (int i = 0; i < dim; ++i)
            for (int k = 0; k < dim; ++k) {
                if (acc[static_cast<size_t>(i)][static_cast<size_t>(k)] == 0) continue;
                for (int j = 0; j < dim; ++j)
                    next[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                        acc[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                        t[static_cast<size_t>(k)][static_cast<size_t>(j)];
            }
        acc = std::move(next);
    }
    long trace_value = 0;
    for (int i = 0; i < dim; ++i)
        trace_value += acc[static_cast<size_t>(i)][static_cast<size_t>(i)];
    return trace_value;
}

// ---------------------------------------------------------------------------
// Pentagon coherence (declared in fusion.hpp): search the move graph of the
// five-marked disk for two distinct HI paths (lengths 2 and 3) between the
// same pair of caterpillar spines and compare the transported matrices.
// ---------------------------------------------------------------------------

namespace {

std::string normalized_key(const Spine& s) {
    // Rotation lists compared up to cyclic start, vertex list as a sorted
    // multiset; edge ids are NOT renamed, so equal keys mean the same
    // labelled ribbon structure (and hence identical coloring bases).
    std::vector<std::string> parts;
    for (const auto& v : s.vertices) {
        std::vector<int> rot = v.edges;
        if (v.internal && rot.size() == 3) {
            size_t best = 0;
            for (size_t i = 1; i < 3; ++i) {
                std::vector<int> cand = rot;
                std::rotate(cand.begin(), cand.begin() + static_cast<long>(i), cand.end());
                std::vector<int> cur = rot;
                std::rotate(cur.begin(), cur.begin() + static_cast<long>(best), cur.end());
                if (cand < cur) best = i;
            }
            std::rotate(rot.begin(), rot.begin() + static_cast<long>(best), rot.end());
        }
        std::ostringstream os;
        os << (v.internal ? "I" : "B");
        for (int e : rot) os << "," << e;
        parts.push_back(os.str());
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& p : parts) out += p + ";";
    return out;
}

std::vector<int> movable_edges(const Spine& s) {
    Halves h = Halves::build(s);
    std::vector<int> out;
    for (int e = 0; e < s.edge_count; ++e) {
        int u = h.vertex_of[static_cast<size_t>(2 * e)];
        int w = h.vertex_of[static_cast<size_t>(2 * e + 1)];
        if (u != w && s.vertices[static_cast<size_t>(u)].internal &&
            s.vertices[static_cast<size_t>(w)].internal)
            out.push_back(e);
    }
    return out;
}

}  // namespace

namespace {

Spine relabel_edges(const Spine& s, const std::map<int, int>& sigma) {
    Spine out = s;
    for (auto& v : out.vertices)
        for (auto& e : v.edges) {
            auto it = sigma.find(e);
            if (it != sigma.end()) e = it->second;
        }
    return out;
}

}  // namespace

bool pentagon_check(const std::array<int, 5>& boundary_labels, const RootContext& ctx) {
    Spine start = make_caterpillar_spine(5);
    std::map<int, int> bnd;
    for (int leg = 0; leg < 5; ++leg) {
        if (boundary_labels[static_cast<size_t>(leg)] < 0 ||
            boundary_labels[static_cast<size_t>(leg)] > ctx.max_label())
            throw LabelOutOfRange("pentagon boundary label out of range");
        bnd[leg] = boundary_labels[static_cast<size_t>(leg)];
    }

    // Internal edge ids move around the pentagon, so two paths end in the
    // same geometric spine with the ids permuted. Candidate identifications:
    // the permutations of the non-boundary edges.
    std::vector<int> internal_edges;
    {
        auto bedges = start.boundary_edges();
        for (int e = 0; e < start.edge_count; ++e)
            if (std::find(bedges.begin(), bedges.end(), e) == bedges.end())
                internal_edges.push_back(e);
    }

    // Enumerate all move paths up to length 3.
    struct Node {
        Spine spine;
        std::vector<HIMove> path;
    };
    std::vector<Node> nodes;
    std::vector<Node> frontier{{start, {}}};
    for (int depth = 1; depth <= 3; ++depth) {
        std::vector<Node> next;
        for (const auto& node : frontier) {
            for (int e : movable_edges(node.spine)) {
                Node child;
                child.spine = apply_hi(node.spine, {e, 0});
                child.path = node.path;
                child.path.push_back({e, 0});
                next.push_back(child);
                nodes.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }

    // A pentagon face: a length-2 and a length-3 path with different first
    // moves whose final spines agree under some identification sigma.
    for (const auto& n2 : nodes) {
        if (n2.path.size() != 2) continue;
        for (const auto& n3 : nodes) {
            if (n3.path.size() != 3 || n3.path[0].edge == n2.path[0].edge) continue;
            std::vector<int> perm = internal_edges;
            std::sort(perm.begin(), perm.end());
            do {
                std::map<int, int> sigma;
                for (size_t t = 0; t < internal_edges.size(); ++t)
                    sigma[internal_edges[t]] = perm[t];
                if (normalized_key(relabel_edges(n3.spine, sigma)) !=
                    normalized_key(n2.spine))
                    continue;
                Transport t2 = transport(start, n2.path, ctx, bnd);
                Transport t3 = transport(start, n3.path, ctx, bnd);
                if (t2.target.dimension() != t3.target.dimension()) continue;
                // Compare t2 against t3 with the target basis of t3 read
                // through sigma.
                bool equal = true;
                for (size_t r3 = 0; r3 < t3.target.dimension() && equal; ++r3) {
                    Coloring c2 = t3.target.colorings[r3];
                    for (size_t t = 0; t < internal_edges.size(); ++t)
                        c2.edge_labels[static_cast<size_t>(sigma.at(internal_edges[t]))] =
                            t3.target.colorings[r3]
                                .edge_labels[static_cast<size_t>(internal_edges[t])];
                    long r2 = t2.target.index_of(c2);
                    if (r2 < 0) {
                        equal = false;
                        break;
                    }
                    for (size_t col = 0; col < t2.source.dimension(); ++col)
                        if (t3.matrix[r3][col] != t2.matrix[static_cast<size_t>(r2)][col]) {
                            equal = false;
                            break;
                        }
                }
                return equal;
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
    throw Error("pentagon_check: no pentagon face found in the move graph");
}

}  // namespace tlj
