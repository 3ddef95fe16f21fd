#include "tlj/nets.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "tlj/errors.hpp"

namespace tlj {

bool admissible(int a, int b, int c) {
    if (a < 0 || b < 0 || c < 0) return false;
    if ((a + b + c) % 2 != 0) return false;
    return a + b >= c && b + c >= a && a + c >= b;
}

RatScalar net_formula(int m, int n, int l) {
    if (m < 0 || n < 0 || l < 0) throw NotAdmissible("Net(m,n,l) needs m,n,l >= 0");
    RatScalar num = qfact(m) * qfact(n) * qfact(l) * qfact(m + n + l + 1);
    RatScalar den = qfact(m + n) * qfact(n + l) * qfact(m + l);
    return num / den;
}

RatScalar theta_formula(int a, int b, int c) {
    if (!admissible(a, b, c))
        throw NotAdmissible("theta(" + std::to_string(a) + "," + std::to_string(b) +
                            "," + std::to_string(c) + "): triple not admissible");
    const int m = (a + b - c) / 2;
    const int n = (b + c - a) / 2;
    const int l = (a + c - b) / 2;
    return net_formula(m, n, l);
}

std::vector<std::pair<int, RatScalar>> fusion_coefficients(int a, int b) {
    if (a < 0 || b < 0) throw NotAdmissible("fusion_coefficients: negative label");
    std::vector<std::pair<int, RatScalar>> out;
    for (int k = std::abs(a - b); k <= a + b; k += 2)
        out.emplace_back(k, qint(k + 1) / theta_formula(a, b, k));
    return out;
}

Pairing vertex_cap_diagram(int a, int b, int c) {
    if (!admissible(a, b, c)) throw NotAdmissible("vertex diagram: triple not admissible");
    const int k = (a + b - c) / 2;
    std::vector<std::pair<int, int>> arcs;
    for (int t = 0; t < k; ++t) arcs.emplace_back(a - 1 - t, a + t);
    int top = a + b;
    for (int p = 0; p < a - k; ++p) arcs.emplace_back(p, top + p);
    for (int p = 0; p < b - k; ++p) arcs.emplace_back(a + k + p, top + (a - k) + p);
    return Pairing::make(a + b, c, std::move(arcs));
}

namespace {

Morphism<LaurentPoly> poly_simple(const Pairing& p) {
    Morphism<LaurentPoly> m(p.bottom, p.top);
    m.add_term(p, LaurentPoly::one());
    return m;
}

struct VertexCacheEntry {
    Morphism<RatScalar> rational;
    ClearedMorphism cleared;
};

std::shared_mutex vertex_mutex;
std::map<std::tuple<int, int, int>, VertexCacheEntry> vertex_cache;

const VertexCacheEntry& vertex_entry(int a, int b, int c) {
    const auto key = std::make_tuple(a, b, c);
    {
        std::shared_lock lock(vertex_mutex);
        auto it = vertex_cache.find(key);
        if (it != vertex_cache.end()) return it->second;
    }
    if (!admissible(a, b, c))
        throw NotAdmissible("vertex(" + std::to_string(a) + "," + std::to_string(b) +
                            "," + std::to_string(c) + "): triple not admissible");
    auto [pa, da] = jw_cleared(a);
    auto [pb, db] = jw_cleared(b);
    auto [pc, dc] = jw_cleared(c);
    Morphism<LaurentPoly> ab = fast_tensor(pa, pb);
    Morphism<LaurentPoly> fab = fast_compose(poly_simple(vertex_cap_diagram(a, b, c)), ab);
    Morphism<LaurentPoly> num = fast_compose(pc, fab);
    ClearedMorphism cleared{std::move(num), da * db * dc};
    cleared.normalize();
    VertexCacheEntry entry{cleared.to_rational(), std::move(cleared)};

    std::unique_lock lock(vertex_mutex);
    auto [it, inserted] = vertex_cache.emplace(key, std::move(entry));
    return it->second;
}

}  // namespace

const Morphism<RatScalar>& vertex_morphism(int a, int b, int c) {
    return vertex_entry(a, b, c).rational;
}

const ClearedMorphism& vertex_cleared(int a, int b, int c) {
    return vertex_entry(a, b, c).cleared;
}

PhiPsi phi_psi(int a, int b) {
    PhiPsi out;
    for (const auto& [k, lam] : fusion_coefficients(a, b)) {
        out.labels.push_back(k);
        out.phi.push_back(vertex_morphism(a, b, k));
        out.psi.push_back(bar(vertex_morphism(a, b, k)).scaled(lam));
    }
    return out;
}

BubbleResult bubble(int a, int b, int c, int d) {
    if (!admissible(a, c, d) || !admissible(b, c, d))
        throw NotAdmissible("bubble: (a,c,d) and (b,c,d) must be admissible");
    BubbleResult out;
    out.survives = (a == b);
    if (out.survives) out.scalar = theta_formula(a, c, d) / qint(a + 1);
    return out;
}

// ---------------------------------------------------------------------------
// Net compilation.
//
// The net is traversed as a planar ribbon graph: a spanning-tree contour walk
// with eager cap-closing of non-tree chords. The running morphism is a fan
// 0 -> (current cross-section); every vertex contributes its basis morphism
// in three thin layers (the nested-cap diagram, then the two leg projectors)
// so no composition ever multiplies two large morphisms. Crossing chords, the
// signature of a positive-genus ribbon structure, surface as stubs that can
// never be capped and raise NonPlanarEmbedding.
// ---------------------------------------------------------------------------

namespace {

struct HalfEdgeView {
    std::vector<std::vector<int>> rot;  // per vertex: ccw half-edge ids
    std::vector<int> vertex_of;         // per half-edge

    static HalfEdgeView build(const TrivalentNet& net) {
        HalfEdgeView view;
        const int E = net.edge_count();
        view.vertex_of.assign(2 * static_cast<size_t>(E), -1);
        view.rot.resize(net.vertices.size());
        std::vector<int> seen(static_cast<size_t>(E), 0);
        for (size_t v = 0; v < net.vertices.size(); ++v) {
            const auto& vx = net.vertices[v];
            size_t want = vx.internal ? 3 : 1;
            if (vx.edges.size() != want)
                throw InvalidDegree("vertex " + std::to_string(v) + " has degree " +
                                    std::to_string(vx.edges.size()) + ", expected " +
                                    std::to_string(want));
            for (int e : vx.edges) {
                if (e < 0 || e >= E) throw IndexOutOfRange("edge id out of range");
                if (seen[static_cast<size_t>(e)] >= 2)
                    throw ShapeMismatch("edge " + std::to_string(e) +
                                        " has more than two endpoints");
                int h = 2 * e + seen[static_cast<size_t>(e)]++;
                view.rot[v].push_back(h);
                view.vertex_of[static_cast<size_t>(h)] = static_cast<int>(v);
            }
        }
        for (int e = 0; e < E; ++e)
            if (seen[static_cast<size_t>(e)] != 2)
                throw ShapeMismatch("edge " + std::to_string(e) +
                                    " does not have two endpoints");
        return view;
    }
};

Pairing nested_cap_pairing(int z) {
    std::vector<std::pair<int, int>> arcs;
    for (int t = 0; t < z; ++t) arcs.emplace_back(t, 2 * z - 1 - t);
    return Pairing::make(2 * z, 0, std::move(arcs));
}

Pairing bar_pairing(const Pairing& p) {
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(p.arcs.size());
    for (auto [x, y] : p.arcs) {
        auto map = [&](int t) { return t < p.bottom ? p.top + t : t - p.bottom; };
        arcs.emplace_back(map(x), map(y));
    }
    return Pairing::make(p.top, p.bottom, std::move(arcs));
}

struct RatNetEngine {
    using Mor = Morphism<LaurentPoly>;
    LaurentPoly den = LaurentPoly::one();

    Mor simple(const Pairing& p) const { return poly_simple(p); }
    Mor projector(int k) {
        auto [num, d] = jw_cleared(k);
        den = den * d;
        return num;
    }
    static Mor compose2(const Mor& g, const Mor& f) { return fast_compose(g, f); }
    static Mor tensor2(const Mor& f, const Mor& g) { return fast_tensor(f, g); }
    Mor empty_one() const {
        Mor m(0, 0);
        m.add_term(Pairing::make(0, 0, {}), LaurentPoly::one());
        return m;
    }
    CompiledNet<RatScalar> finish(Mor fan, std::vector<int> stub_vertices,
                                  std::vector<int> stub_labels) const {
        return {with_denominator(fan, den), std::move(stub_vertices),
                std::move(stub_labels)};
    }
};

struct CycloNetEngine {
    using Mor = Morphism<CycloScalar>;
    long root_n;
    CycloScalar one;

    explicit CycloNetEngine(long n) : root_n(n), one(CycloScalar::one(2 * n)) {}
    Mor simple(const Pairing& p) const {
        Mor m(p.bottom, p.top);
        m.add_term(p, one);
        return m;
    }
    Mor projector(int k) const { return jw_at_root(k, root_n); }
    static Mor compose2(const Mor& g, const Mor& f) { return compose(g, f); }
    static Mor tensor2(const Mor& f, const Mor& g) { return tensor(f, g); }
    Mor empty_one() const {
        Mor m(0, 0);
        m.add_term(Pairing::make(0, 0, {}), one);
        return m;
    }
    CompiledNet<CycloScalar> finish(Mor fan, std::vector<int> stub_vertices,
                                    std::vector<int> stub_labels) const {
        return {std::move(fan), std::move(stub_vertices), std::move(stub_labels)};
    }
};

// Each connected component gets its own sweep. Components with boundary
// compile to a fan 0 -> stubs rooted at their first boundary vertex; closed
// components are cut open along one edge, swept as a morphism z -> ..., and
// re-glued by the diagrammatic trace, which keeps the running support on the
// small side. Every edge receives its Jones-Wenzl projector exactly once
// (absorption makes additional copies redundant): at the cut or root, when a
// vertex consumes the edge, when a chord closes, or on a leftover open leg.
template <class Engine>
class NetCompiler {
public:
    using Mor = typename Engine::Mor;

    NetCompiler(Engine& eng, const TrivalentNet& net)
        : eng_(eng), net_(net), view_(HalfEdgeView::build(net)) {
        for (size_t v = 0; v < net.vertices.size(); ++v) {
            if (!net.vertices[v].internal) continue;
            const auto& e = net.vertices[v].edges;
            int a = net.edge_labels[static_cast<size_t>(e[0])];
            int b = net.edge_labels[static_cast<size_t>(e[1])];
            int c = net.edge_labels[static_cast<size_t>(e[2])];
            if (!admissible(a, b, c))
                throw NotAdmissible("vertex " + std::to_string(v) + " labels (" +
                                    std::to_string(a) + "," + std::to_string(b) + "," +
                                    std::to_string(c) + ") not admissible");
        }
        for (int l : net.edge_labels)
            if (l < 0) throw LabelOutOfRange("negative edge label");
    }

    auto run() {
        visited_.assign(net_.vertices.size(), 0);
        projected_.assign(static_cast<size_t>(net_.edge_count()), 0);

        Mor fan = eng_.empty_one();
        std::vector<int> stub_vertices, stub_labels;
        for (size_t v = 0; v < net_.vertices.size(); ++v) {
            if (net_.vertices[v].internal || visited_[v]) continue;
            run_open_component(static_cast<int>(v));
            fan = Engine::tensor2(fan, m_);
            for (const auto& s : slots_) {
                stub_vertices.push_back(s.boundary_vertex);
                stub_labels.push_back(label_of(s.far));
            }
        }
        for (size_t v = 0; v < net_.vertices.size(); ++v) {
            if (!net_.vertices[v].internal || visited_[v]) continue;
            Mor value = run_closed_component(static_cast<int>(v));
            fan = Engine::tensor2(fan, value);
        }
        for (int l : net_.free_loop_labels) {
            Mor cup_hat = Engine::compose2(
                Engine::tensor2(eng_.projector(l), eng_.simple(identity_pairing(l))),
                eng_.simple(eta_pairing(l)));
            Mor circle = Engine::compose2(eng_.simple(nested_cap_pairing(l)), cup_hat);
            fan = Engine::tensor2(fan, circle);
        }
        return eng_.finish(std::move(fan), std::move(stub_vertices), std::move(stub_labels));
    }

private:
    struct Slot {
        int far;  // half-edge at the not-yet-built end
        enum State { Pending, Chord, Boundary } state = Pending;
        int boundary_vertex = -1;
    };

    Engine& eng_;
    const TrivalentNet& net_;
    HalfEdgeView view_;
    Mor m_;
    std::vector<Slot> slots_;
    std::vector<char> visited_;
    std::vector<char> projected_;  // per edge: projector already inserted

    int label_of(int half) const {
        return net_.edge_labels[static_cast<size_t>(half / 2)];
    }

    int width_before(size_t idx) const {
        int w = 0;
        for (size_t i = 0; i < idx; ++i) w += label_of(slots_[i].far);
        return w;
    }

    void apply_layer(const Mor& x, int at) {
        int after = m_.target - at - x.source;
        if (at < 0 || after < 0)
            throw Error("net compiler: layer does not fit the cross-section");
        Mor layer = Engine::tensor2(
            Engine::tensor2(eng_.simple(identity_pairing(at)), x),
            eng_.simple(identity_pairing(after)));
        m_ = Engine::compose2(layer, m_);
    }

    void project_slot_edge(size_t i) {
        int edge = slots_[i].far / 2;
        if (projected_[static_cast<size_t>(edge)]) return;
        projected_[static_cast<size_t>(edge)] = 1;
        int z = label_of(slots_[i].far);
        if (z > 0) apply_layer(eng_.projector(z), width_before(i));
    }

    // Open component: bend the root boundary edge into a projected cup and
    // sweep; the surviving slots are the component's boundary stubs.
    void run_open_component(int boundary_root) {
        slots_.clear();
        int h0 = view_.rot[static_cast<size_t>(boundary_root)][0];
        int label = label_of(h0);
        m_ = Engine::compose2(
            Engine::tensor2(eng_.projector(label), eng_.simple(identity_pairing(label))),
            eng_.simple(eta_pairing(label)));
        projected_[static_cast<size_t>(h0 / 2)] = 1;
        slots_.push_back({h0, Slot::Pending, -1});
        slots_.push_back({h0 ^ 1, Slot::Pending, -1});
        sweep();
        for (size_t i = 0; i < slots_.size(); ++i) {
            if (slots_[i].state != Slot::Boundary)
                throw NonPlanarEmbedding("net embedding is not planar (unclosed chord)");
            project_slot_edge(i);
        }
    }

    // Closed component: cut the root edge, sweep from one side, glue back by
    // tracing. Exactly one chord stub (the cut edge itself) must survive.
    Mor run_closed_component(int root_vertex) {
        slots_.clear();
        int h0 = view_.rot[static_cast<size_t>(root_vertex)][0];
        int z = label_of(h0);
        m_ = eng_.projector(z);
        projected_[static_cast<size_t>(h0 / 2)] = 1;
        slots_.push_back({h0, Slot::Pending, -1});
        sweep();
        if (slots_.size() != 1 || slots_[0].state != Slot::Chord ||
            slots_[0].far / 2 != h0 / 2)
            throw NonPlanarEmbedding("net embedding is not planar (unclosed chord)");
        return trace_mor(m_);
    }

    static Mor trace_mor(const Mor& m) {
        Mor out(0, 0);
        auto value = trace(m);
        if (!value.is_zero()) out.add_term(Pairing::make(0, 0, {}), value);
        return out;
    }

    void sweep() {
        while (true) {
            size_t i = slots_.size();
            for (size_t t = 0; t < slots_.size(); ++t)
                if (slots_[t].state == Slot::Pending) {
                    i = t;
                    break;
                }
            if (i == slots_.size()) return;
            int h = slots_[i].far;
            int v = view_.vertex_of[static_cast<size_t>(h)];
            if (!net_.vertices[static_cast<size_t>(v)].internal) {
                visited_[static_cast<size_t>(v)] = 1;
                slots_[i].state = Slot::Boundary;
                slots_[i].boundary_vertex = v;
                continue;
            }
            if (!visited_[static_cast<size_t>(v)]) {
                visited_[static_cast<size_t>(v)] = 1;
                expand_vertex(i, h, v);
                continue;
            }
            slots_[i].state = Slot::Chord;
            if (i > 0 && slots_[i - 1].state == Slot::Chord &&
                slots_[i - 1].far / 2 == slots_[i].far / 2)
                close_chord(i);
        }
    }

    // Entering internal vertex v from below via half-edge h with ccw rotation
    // (h, h1, h2): the upward legs read (h2, h1) left to right.
    void expand_vertex(size_t i, int h, int v) {
        const auto& rot = view_.rot[static_cast<size_t>(v)];
        size_t r = 0;
        while (rot[r] != h) ++r;
        int h1 = rot[(r + 1) % 3];
        int h2 = rot[(r + 2) % 3];
        int z = label_of(h), x = label_of(h2), y = label_of(h1);

        project_slot_edge(i);
        apply_layer(eng_.simple(bar_pairing(vertex_cap_diagram(x, y, z))),
                    width_before(i));

        slots_[i] = {h2 ^ 1, Slot::Pending, -1};
        slots_.insert(slots_.begin() + static_cast<long>(i) + 1,
                      Slot{h1 ^ 1, Slot::Pending, -1});
    }

    void close_chord(size_t i) {
        project_slot_edge(i - 1);
        int z = label_of(slots_[i].far);
        apply_layer(eng_.simple(nested_cap_pairing(z)), width_before(i - 1));
        slots_.erase(slots_.begin() + static_cast<long>(i - 1),
                     slots_.begin() + static_cast<long>(i) + 1);
    }
};

std::shared_mutex theta_net_mutex;
std::map<std::tuple<int, int, int>, RatScalar> theta_net_cache;

// The triangle net of the shrinking lemmas: bottom leg m, top legs a and b,
// built from vertices (k,1,m), (a,b-1,k), (b-1,1,b).
TrivalentNet make_triangle_net(int a, int b, int k, int m) {
    TrivalentNet net;
    // edges: 0 m-leg, 1 a-leg, 2 b-leg, 3 k, 4 b-1, 5 unit strand
    net.edge_labels = {m, a, b, k, b - 1, 1};
    net.vertices.push_back({false, {0}});       // bottom boundary
    net.vertices.push_back({false, {1}});       // top-left boundary
    net.vertices.push_back({false, {2}});       // top-right boundary
    net.vertices.push_back({true, {0, 5, 3}});  // in m; up-right 1, up-left k
    net.vertices.push_back({true, {3, 4, 1}});  // in k; up-right b-1, up-left a
    net.vertices.push_back({true, {2, 4, 5}});  // out b; down-left b-1, down-right 1
    return net;
}

TrivalentNet make_vertex_net(int a, int b, int m) {
    TrivalentNet net;
    net.edge_labels = {m, a, b};
    net.vertices.push_back({false, {0}});
    net.vertices.push_back({false, {1}});
    net.vertices.push_back({false, {2}});
    net.vertices.push_back({true, {0, 2, 1}});
    return net;
}

}  // namespace

CompiledNet<RatScalar> compile_net(const TrivalentNet& net) {
    RatNetEngine eng;
    return NetCompiler<RatNetEngine>(eng, net).run();
}

CompiledNet<CycloScalar> compile_net_at_root(const TrivalentNet& net, long n) {
    CycloNetEngine eng(n);
    return NetCompiler<CycloNetEngine>(eng, net).run();
}

RatScalar net_value(const TrivalentNet& net) { return compile_net(net).value(); }

CycloScalar net_value_at_root(const TrivalentNet& net, long n) {
    return compile_net_at_root(net, n).value();
}

TrivalentNet make_theta_net(int a, int b, int c) {
    TrivalentNet net;
    net.edge_labels = {a, b, c};
    net.vertices.push_back({true, {0, 1, 2}});
    net.vertices.push_back({true, {2, 1, 0}});
    return net;
}

TrivalentNet make_loop_net(int a) {
    TrivalentNet net;
    net.free_loop_labels = {a};
    return net;
}

RatScalar theta_by_net(int a, int b, int c) {
    const auto key = std::make_tuple(a, b, c);
    {
        std::shared_lock lock(theta_net_mutex);
        auto it = theta_net_cache.find(key);
        if (it != theta_net_cache.end()) return it->second;
    }
    RatScalar v = net_value(make_theta_net(a, b, c));
    std::unique_lock lock(theta_net_mutex);
    return theta_net_cache.emplace(key, std::move(v)).first->second;
}

TriangleReport triangle_checks(int a, int b, int k) {
    TriangleReport report;
    if (!admissible(a, b - 1, k) || !admissible(b - 1, 1, b))
        throw NotAdmissible("triangle_checks: side triples not admissible");

    if (admissible(k, 1, k + 1)) {
        report.k_plus_applicable = true;
        auto lhs = compile_net(make_triangle_net(a, b, k, k + 1));
        auto rhs = compile_net(make_vertex_net(a, b, k + 1));
        report.k_plus_holds =
            lhs.stub_labels == rhs.stub_labels && lhs.fan == rhs.fan;
    }
    if (k >= 1 && admissible(k, 1, k - 1) && a + k > b - 1) {
        report.k_minus_applicable = true;
        const int s = (k + b - 1 - a) / 2;
        RatScalar coeff = qint(k - s) / qint(k);
        if (s % 2 == 1) coeff = -coeff;
        report.k_minus_coefficient = coeff;
        auto lhs = compile_net(make_triangle_net(a, b, k, k - 1));
        auto rhs = compile_net(make_vertex_net(a, b, k - 1));
        report.k_minus_holds = lhs.stub_labels == rhs.stub_labels &&
                               lhs.fan == rhs.fan.scaled(coeff);
    }
    return report;
}

}  // namespace tlj
