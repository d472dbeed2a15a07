#include "tsing/invariants.hpp"

#include "tsing/tchain.hpp"

#include <stdexcept>

namespace tsing {

Int kw2_from(const Int& ks2, const Int& m, const Int& r, const Int& d) {
    if (m < 0) throw std::invalid_argument("blow-up count must be >= 0, got " + m.str());
    if (r < 1 || d < 1)
        throw std::invalid_argument("need r >= 1 and d >= 1, got r=" + r.str() +
                                    " d=" + d.str());
    return ks2 - m + r - d + 1;
}

Int chain_canonical_degree(const Chain& chain) {
    ChainClass cls = classify(chain);
    if (!cls.is_t())
        throw std::domain_error("canonical degree identity needs a T-chain, got " +
                                format_chain(chain));
    Int total = 0;
    for (const Int& b : chain) total += b - 2;
    return total;
}

Int exceptional_pairing_total(const Int& r, const Int& d, const Int& lambda) {
    return r - d + 2 - lambda;
}

StructuralReport structural_identity_check(const Chain& chain) {
    StructuralReport rep;
    ChainClass cls = classify(chain);
    if (!cls.is_t()) return rep; // not applicable
    size_t s = 0;
    while (s < chain.size() && chain[s] == 2) ++s;
    if (s < 1 || s + 1 >= chain.size()) return rep; // need leading 2s and a middle
    if (chain.back() != Int(s) + 2) return rep;
    rep.applicable = true;
    rep.s = s;
    Int lhs = 0;
    for (size_t i = s; i + 1 < chain.size(); ++i) lhs += chain[i] - 2;
    rep.lhs = lhs;
    rep.rhs = Int(chain.size()) - Int(s) - cls.params.d + 2;
    rep.pass = rep.lhs == rep.rhs;
    return rep;
}

Rat chi_relation(const Int& kw2, const Int& chi_top, const Int& d) {
    if (d < 1) throw std::invalid_argument("need d >= 1, got " + d.str());
    return Rat(kw2 + chi_top + d - 1) / 12;
}

bool log_bmy_check(const Int& d, const Int& n, const Int& chi, const Int& kw2) {
    if (d < 1 || n < 2)
        throw std::invalid_argument("need d >= 1 and n >= 2, got d=" + d.str() +
                                    " n=" + n.str());
    Rat lhs = Rat(d) - Rat(1) / (d * n * n);
    Rat rhs = Rat(12) * chi - Rat(4, 3) * kw2;
    return lhs <= rhs;
}

} // namespace tsing
