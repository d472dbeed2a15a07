#include "tsing/discrepancy.hpp"

#include <set>
#include <stdexcept>

namespace tsing {

std::vector<Rat> discrepancies(const Chain& chain) {
    validate_chain(chain);
    const size_t r = chain.size();
    // Write mu_i = p_i + h_i * t with t = mu_1 and propagate both parts
    // through mu_{i+1} = b_i mu_i - mu_{i-1} + (b_i - 2); the final row
    // (through the phantom mu_{r+1} = 0) pins t.
    std::vector<Rat> p(r + 2, 0), h(r + 2, 0);
    // indices shifted by one: slot i holds mu_i, slot 0 the phantom mu_0
    if (r >= 1) h[1] = 1;
    for (size_t i = 1; i <= r; ++i) {
        Rat b(chain[i - 1]);
        p[i + 1] = b * p[i] - p[i - 1] + (b - 2);
        h[i + 1] = b * h[i] - h[i - 1];
    }
    // mu_{r+1} must vanish: p + h t = 0
    if (h[r + 1] == 0) throw std::logic_error("degenerate discrepancy system");
    Rat t = -p[r + 1] / h[r + 1];
    std::vector<Rat> mu(r);
    for (size_t i = 1; i <= r; ++i) mu[i - 1] = p[i] + h[i] * t;
    return mu;
}

Rat contracted_degree(const Chain& chain, const IncidenceProfile& profile) {
    std::vector<Rat> mu = discrepancies(chain);
    std::set<size_t> seen;
    Rat total = Rat(profile.kx_degree);
    for (const auto& [index, mult] : profile.meets) {
        if (index < 1 || index > chain.size())
            throw std::invalid_argument("incidence index " + std::to_string(index) +
                                        " outside chain of length " +
                                        std::to_string(chain.size()));
        if (!seen.insert(index).second)
            throw std::invalid_argument("repeated incidence index " + std::to_string(index));
        if (mult < 1)
            throw std::invalid_argument("incidence multiplicity must be >= 1, got " + mult.str());
        total -= Rat(mult) * mu[index - 1];
    }
    return total;
}

} // namespace tsing
