#ifndef TLJ_JONES_WENZL_HPP
#define TLJ_JONES_WENZL_HPP

#include "tlj/morphism.hpp"

namespace tlj {

/// The n-th Jones-Wenzl idempotent p_n in TL_n over Q(q), built by the Wenzl
/// recursion p_{n+1} = p_n ox 1 - ([n]/[n+1]) (p_n ox 1) U_n (p_n ox 1).
/// Results are memoized process-wide (concurrent readers, exclusive fill)
/// up to jw_memo_limit().
const Morphism<RatScalar>& jw(int n);

/// Memoization ceiling for jw(); n above it still computes but is not cached.
int jw_memo_limit();
void set_jw_memo_limit(int n);

/// jw(n) with denominators cleared: jw(n) = first / second.
std::pair<Morphism<LaurentPoly>, LaurentPoly> jw_cleared(int n);

/// p_k evaluated at q = zeta_{2n}; defined only for k <= n-1.
Morphism<CycloScalar> jw_at_root(int k, long n);

/// Diagnostic report for the three defining properties of p_n.
struct JwReport {
    bool identity_coefficient_one = false;
    bool cap_kill = false;    // cap_i o p = 0 for all i
    bool cup_kill = false;    // p o cup_i = 0 for all i
    bool idempotent = false;  // p o p = p
    bool all() const {
        return identity_coefficient_one && cap_kill && cup_kill && idempotent;
    }
};

JwReport check_jw(const Morphism<RatScalar>& p);

/// Absorption: (id_offset ox jw(m) ox id) o jw(n) = jw(n) and the mirror,
/// for m < n placed at the given offset (0 <= offset <= n-m).
bool absorb_check(int n, int m, int offset);

}  // namespace tlj

#endif
