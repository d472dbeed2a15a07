#pragma once

#include "tsing/chain.hpp"

#include <utility>
#include <vector>

namespace tsing {

// Discrepancies mu_1..mu_r of the chain's contraction: the unique exact
// solution of the tridiagonal system
//   mu_{i-1} - b_i mu_i + mu_{i+1} = b_i - 2,   mu_0 = mu_{r+1} = 0.
// Each mu_i lies in (-1, 0] (equal to 0 only for an all-2 chain).
std::vector<Rat> discrepancies(const Chain& chain);

// How a fixed curve on the resolution meets the chain: 1-based chain indices
// with intersection multiplicities, plus the curve's degree against the
// canonical class upstairs (a (-1)-curve has -1, the default).
struct IncidenceProfile {
    std::vector<std::pair<size_t, Int>> meets;
    Int kx_degree = -1;
};

// Degree of the image of the curve against the canonical class after
// contracting the chain:  kx_degree - sum(mult_i * mu_i).
// Throws std::invalid_argument for out-of-range or repeated indices or
// nonpositive multiplicities.
Rat contracted_degree(const Chain& chain, const IncidenceProfile& profile);

} // namespace tsing
