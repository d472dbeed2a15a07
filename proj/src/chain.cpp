#include "tsing/chain.hpp"

#include <boost/integer/mod_inverse.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace tsing {

void validate_quotient(const CyclicQuotient& cq) {
    if (cq.order < 2)
        throw std::invalid_argument("cyclic quotient needs order >= 2, got " + cq.order.str());
    if (cq.weight <= 0 || cq.weight >= cq.order)
        throw std::invalid_argument("weight must satisfy 0 < q < m, got q=" + cq.weight.str() +
                                    " m=" + cq.order.str());
    if (gcd(cq.order, cq.weight) != 1)
        throw std::invalid_argument("order and weight must be coprime, got " + cq.order.str() +
                                    "/" + cq.weight.str());
}

void validate_chain(const Chain& chain) {
    if (chain.empty()) throw std::invalid_argument("chain must be nonempty");
    for (const Int& b : chain)
        if (b < 2)
            throw std::invalid_argument("chain entries must be >= 2, got " + b.str());
}

Chain hj_expand(const CyclicQuotient& cq) {
    validate_quotient(cq);
    Chain out;
    Int m = cq.order, q = cq.weight;
    while (q > 0) {
        Int b = (m + q - 1) / q; // ceil(m/q), both positive
        out.push_back(b);
        Int next_q = b * q - m;
        m = q;
        q = next_q;
    }
    // gcd(m,q)=1 guarantees the recursion bottoms out at m=1.
    if (m != 1) throw std::logic_error("hj_expand did not terminate at 1");
    return out;
}

CyclicQuotient hj_eval(const Chain& chain) {
    validate_chain(chain);
    Int m = chain.back(), q = 1;
    for (auto it = std::next(chain.rbegin()); it != chain.rend(); ++it) {
        Int next_m = *it * m - q;
        q = m;
        m = next_m;
    }
    CyclicQuotient cq{m, q};
    validate_quotient(cq);
    return cq;
}

Chain reverse_chain(const Chain& chain) {
    return Chain(chain.rbegin(), chain.rend());
}

CyclicQuotient inverse_weight(const CyclicQuotient& cq) {
    validate_quotient(cq);
    Int inv = boost::integer::mod_inverse(cq.weight, cq.order);
    return CyclicQuotient{cq.order, inv};
}

std::string format_chain(const Chain& chain) {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < chain.size(); ++i) {
        if (i) os << ',';
        os << chain[i];
    }
    os << ']';
    return os.str();
}

Chain parse_chain(const std::string& text) {
    std::string body = text;
    // tolerate surrounding brackets and whitespace
    auto drop = [&](char c) {
        auto pos = body.find(c);
        if (pos != std::string::npos) body.erase(pos, 1);
    };
    drop('[');
    drop(']');
    for (char& c : body)
        if (c == ',') c = ' ';
    Chain out;
    std::istringstream is(body);
    std::string tok;
    while (is >> tok) {
        try {
            out.emplace_back(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad chain entry '" + tok + "' in " + text);
        }
    }
    if (out.empty()) throw std::invalid_argument("empty chain in '" + text + "'");
    return out;
}

} // namespace tsing
