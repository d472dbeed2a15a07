#pragma once

#include "tsing/rational.hpp"

#include <string>
#include <vector>

namespace tsing {

// A cyclic quotient singularity 1/m(1,q): "order" m and "weight" q with
// 0 < q < m and gcd(m,q) = 1.
struct CyclicQuotient {
    Int order;
    Int weight;

    friend bool operator==(const CyclicQuotient& a, const CyclicQuotient& b) {
        return a.order == b.order && a.weight == b.weight;
    }
};

// The negative continued fraction [b_1,...,b_r], b_i >= 2, i.e. the
// self-intersection string (with signs flipped) of the minimal resolution.
using Chain = std::vector<Int>;

// Throws std::invalid_argument unless 0 < weight < order and gcd = 1.
void validate_quotient(const CyclicQuotient& cq);

// Throws std::invalid_argument unless the chain is nonempty with entries >= 2.
void validate_chain(const Chain& chain);

// m/q = b_1 - 1/(b_2 - 1/(... - 1/b_r)) via repeated ceiling division.
Chain hj_expand(const CyclicQuotient& cq);

// Inverse of hj_expand: fold the chain right-to-left back into m/q.
CyclicQuotient hj_eval(const Chain& chain);

Chain reverse_chain(const Chain& chain);

// The weight q' with q*q' = 1 mod m.  Reversing a chain swaps q for q'.
CyclicQuotient inverse_weight(const CyclicQuotient& cq);

// Text form "[3,5,2]".  parse_chain accepts optional brackets and
// comma- or space-separated entries; it does not range-check entries
// (validate_chain does).
std::string format_chain(const Chain& chain);
Chain parse_chain(const std::string& text);

} // namespace tsing
