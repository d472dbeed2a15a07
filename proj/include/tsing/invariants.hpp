#pragma once

#include "tsing/chain.hpp"

namespace tsing {

// Self-intersection of the canonical class after resolving a surface with
// m blow-ups and contracting one chain of length r with invariant d:
//   K_W^2 = K_S^2 - m + r - d + 1.
Int kw2_from(const Int& ks2, const Int& m, const Int& r, const Int& d);

// sum(b_i - 2) over the chain; for a T-chain this equals r - d + 2.
// Throws std::domain_error when the chain is not a T-chain.
Int chain_canonical_degree(const Chain& chain);

// Total intersection of the exceptional pullback classes with the chain:
// r - d + 2 - lambda, where lambda is the canonical degree of the chain's
// image downstairs.
Int exceptional_pairing_total(const Int& r, const Int& d, const Int& lambda);

// For T-chains shaped [2^s, x_1..x_{r-s-1}, s+2] (s >= 1 leading 2s, final
// entry s+2), the middle block satisfies sum(x_i - 2) = r - s - d + 2.
struct StructuralReport {
    bool applicable = false; // chain is a T-chain of the required shape
    bool pass = true;        // identity holds (meaningful when applicable)
    Int s = 0;
    Int lhs = 0;
    Int rhs = 0;
};
StructuralReport structural_identity_check(const Chain& chain);

// (kw2 + chi_top + d - 1) / 12; integral exactly when the inputs are the
// invariants of an actual surface with one T-singularity of index d.
Rat chi_relation(const Int& kw2, const Int& chi_top, const Int& d);

// d - 1/(d n^2) <= 12 chi - (4/3) kw2, compared exactly.
bool log_bmy_check(const Int& d, const Int& n, const Int& chi, const Int& kw2);

} // namespace tsing
