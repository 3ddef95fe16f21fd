#ifndef TLJ_PAIRING_HPP
#define TLJ_PAIRING_HPP

#include <string>
#include <utility>
#include <vector>

namespace tlj {

/// A loop-free noncrossing perfect matching on m bottom + n top boundary
/// points of the square. Points are indexed 0..m-1 left to right on the
/// bottom edge and m..m+n-1 left to right on the top edge. Arcs are stored
/// as (min, max) pairs sorted lexicographically, so equality is structural
/// and doubles as planar-isotopy equality.
struct Pairing {
    int bottom = 0;
    int top = 0;
    std::vector<std::pair<int, int>> arcs;

    /// Canonicalizes and validates: perfect matching, noncrossing in the
    /// circular order (bottom left->right, then top right->left).
    static Pairing make(int bottom, int top, std::vector<std::pair<int, int>> arcs);

    int points() const { return bottom + top; }
    /// Number of arcs connecting a bottom point to a top point.
    int through_strands() const;
    /// Partner of point p.
    int match(int p) const;

    bool operator==(const Pairing& o) const {
        return bottom == o.bottom && top == o.top && arcs == o.arcs;
    }
    bool operator<(const Pairing& o) const;

    std::string to_string() const;  // "[(0,1),(2,5),(3,4)]"
};

/// All loop-free noncrossing matchings from m to n points in deterministic
/// (lexicographic) order; Catalan((m+n)/2) of them for even m+n, none for odd.
std::vector<Pairing> pairing_basis(int m, int n);

/// The identity pairing on n strands.
Pairing identity_pairing(int n);
/// The TL generator U_i in TL_n (1 <= i <= n-1): cap at bottom (i-1, i),
/// cup at top, through-strings elsewhere.
Pairing u_pairing(int i, int n);
/// Cup at top positions i, i+1 (1-based): the simple diagram n-2 -> n.
Pairing cup_pairing(int i, int n);
/// Cap at bottom positions i, i+1 (1-based): the simple diagram n -> n-2.
Pairing cap_pairing(int i, int n);
/// The a-fold nested cup 0 -> 2a.
Pairing eta_pairing(int a);

}  // namespace tlj

#endif
