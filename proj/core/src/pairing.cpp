#include "tlj/pairing.hpp"

#include <algorithm>
#include <sstream>

#include "tlj/errors.hpp"

namespace tlj {

namespace {

// Position of point p in the circular boundary order: bottom left->right,
// then top right->left.
int circular_pos(int p, int bottom, int top) {
    return p < bottom ? p : bottom + (top - 1 - (p - bottom));
}

}  // namespace

Pairing Pairing::make(int bottom, int top, std::vector<std::pair<int, int>> arcs) {
    if (bottom < 0 || top < 0) throw ShapeMismatch("negative point count");
    if ((bottom + top) % 2 != 0)
        throw ShapeMismatch("odd total point count has no pairings");
    const int total = bottom + top;
    if (static_cast<int>(arcs.size()) * 2 != total)
        throw ShapeMismatch("arc count does not match point count");

    std::vector<int> seen(total, 0);
    for (auto& [a, b] : arcs) {
        if (a > b) std::swap(a, b);
        if (a < 0 || b >= total || a == b)
            throw ShapeMismatch("arc endpoint out of range");
        seen[a]++;
        seen[b]++;
    }
    for (int c : seen)
        if (c != 1) throw ShapeMismatch("not a perfect matching");

    // Noncrossing test in the circular order.
    std::vector<std::pair<int, int>> circ;
    circ.reserve(arcs.size());
    for (const auto& [a, b] : arcs) {
        int ca = circular_pos(a, bottom, top);
        int cb = circular_pos(b, bottom, top);
        circ.emplace_back(std::min(ca, cb), std::max(ca, cb));
    }
    for (size_t i = 0; i < circ.size(); ++i)
        for (size_t j = i + 1; j < circ.size(); ++j) {
            auto [a, b] = circ[i];
            auto [c, d] = circ[j];
            bool c_in = (a < c && c < b);
            bool d_in = (a < d && d < b);
            if (c_in != d_in) throw ShapeMismatch("crossing arcs in pairing");
        }

    std::sort(arcs.begin(), arcs.end());
    Pairing p;
    p.bottom = bottom;
    p.top = top;
    p.arcs = std::move(arcs);
    return p;
}

int Pairing::through_strands() const {
    int c = 0;
    for (const auto& [a, b] : arcs)
        if (a < bottom && b >= bottom) ++c;
    return c;
}

int Pairing::match(int p) const {
    for (const auto& [a, b] : arcs) {
        if (a == p) return b;
        if (b == p) return a;
    }
    throw IndexOutOfRange("point not in pairing");
}

bool Pairing::operator<(const Pairing& o) const {
    if (bottom != o.bottom) return bottom < o.bottom;
    if (top != o.top) return top < o.top;
    return arcs < o.arcs;
}

std::string Pairing::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < arcs.size(); ++i) {
        if (i) os << ",";
        os << "(" << arcs[i].first << "," << arcs[i].second << ")";
    }
    os << "]";
    return os.str();
}

namespace {

// Enumerate noncrossing matchings of circular positions 0..total-1.
void enumerate_circular(std::vector<int>& partner, int total,
                        std::vector<std::vector<int>>& out) {
    int first = -1;
    for (int i = 0; i < total; ++i)
        if (partner[i] < 0) {
            first = i;
            break;
        }
    if (first < 0) {
        out.push_back(partner);
        return;
    }
    for (int j = first + 1; j < total; j += 2) {
        if (partner[j] >= 0) break;  // contiguous free block: j beyond it would cross
        partner[first] = j;
        partner[j] = first;
        // The block strictly between first and j must be matched internally;
        // recursing with the invariant that free points form contiguous
        // blocks keeps the matching noncrossing.
        enumerate_circular(partner, total, out);
        partner[first] = -1;
        partner[j] = -1;
    }
}

}  // namespace

std::vector<Pairing> pairing_basis(int m, int n) {
    std::vector<Pairing> result;
    if (m < 0 || n < 0) return result;
    const int total = m + n;
    if (total % 2 != 0) return result;
    if (total == 0) {
        result.push_back(Pairing::make(0, 0, {}));
        return result;
    }

    // Inverse of circular_pos.
    std::vector<int> point_of(total);
    for (int p = 0; p < total; ++p) point_of[circular_pos(p, m, n)] = p;

    std::vector<std::vector<int>> circ_matchings;
    std::vector<int> partner(total, -1);
    enumerate_circular(partner, total, circ_matchings);

    result.reserve(circ_matchings.size());
    for (const auto& match : circ_matchings) {
        std::vector<std::pair<int, int>> arcs;
        arcs.reserve(total / 2);
        for (int i = 0; i < total; ++i)
            if (match[i] > i) arcs.emplace_back(point_of[i], point_of[match[i]]);
        result.push_back(Pairing::make(m, n, std::move(arcs)));
    }
    std::sort(result.begin(), result.end());
    return result;
}

Pairing identity_pairing(int n) {
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(n);
    for (int i = 0; i < n; ++i) arcs.emplace_back(i, n + i);
    return Pairing::make(n, n, std::move(arcs));
}

Pairing u_pairing(int i, int n) {
    if (i < 1 || i > n - 1) throw IndexOutOfRange("U_i index out of range");
    std::vector<std::pair<int, int>> arcs;
    arcs.emplace_back(i - 1, i);              // cap on the bottom edge
    arcs.emplace_back(n + i - 1, n + i);      // cup on the top edge
    for (int k = 0; k < n; ++k)
        if (k != i - 1 && k != i) arcs.emplace_back(k, n + k);
    return Pairing::make(n, n, std::move(arcs));
}

Pairing cup_pairing(int i, int n) {
    if (n < 2 || i < 1 || i > n - 1) throw IndexOutOfRange("cup index out of range");
    const int m = n - 2;
    std::vector<std::pair<int, int>> arcs;
    arcs.emplace_back(m + i - 1, m + i);  // cup joining top points i, i+1
    int b = 0;
    for (int t = 0; t < n; ++t) {
        if (t == i - 1 || t == i) continue;
        arcs.emplace_back(b, m + t);
        ++b;
    }
    return Pairing::make(m, n, std::move(arcs));
}

Pairing cap_pairing(int i, int n) {
    if (n < 2 || i < 1 || i > n - 1) throw IndexOutOfRange("cap index out of range");
    const int k = n - 2;
    std::vector<std::pair<int, int>> arcs;
    arcs.emplace_back(i - 1, i);  // cap joining bottom points i, i+1
    int t = 0;
    for (int b = 0; b < n; ++b) {
        if (b == i - 1 || b == i) continue;
        arcs.emplace_back(b, n + t);
        ++t;
    }
    return Pairing::make(n, k, std::move(arcs));
}

Pairing eta_pairing(int a) {
    if (a < 0) throw IndexOutOfRange("eta: negative strand count");
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(a);
    for (int i = 0; i < a; ++i) arcs.emplace_back(i, 2 * a - 1 - i);
    return Pairing::make(0, 2 * a, std::move(arcs));
}

}  // namespace tlj
