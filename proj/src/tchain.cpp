#include "tsing/tchain.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace tsing {

void validate_t_params(const TParams& p) {
    if (p.d < 1) throw std::invalid_argument("T-parameters need d >= 1, got " + p.d.str());
    if (p.n < 2) throw std::invalid_argument("T-parameters need n >= 2, got " + p.n.str());
    if (p.a <= 0 || p.a >= p.n)
        throw std::invalid_argument("T-parameters need 0 < a < n, got a=" + p.a.str() +
                                    " n=" + p.n.str());
    if (gcd(p.n, p.a) != 1)
        throw std::invalid_argument("T-parameters need gcd(n,a) = 1, got n=" + p.n.str() +
                                    " a=" + p.a.str());
}

Chain chain_of(const TParams& p) {
    validate_t_params(p);
    return hj_expand({p.d * p.n * p.n, p.d * p.n * p.a - 1});
}

namespace {

// Route 1: read (d,n,a) off the evaluated fraction and re-check all the
// defining identities.
ChainClass classify_arithmetic(const Chain& chain) {
    CyclicQuotient cq = hj_eval(chain);
    const Int &m = cq.order, &q = cq.weight;
    Int g = gcd(m, q + 1);
    Int n = m / g;
    Int a = (q + 1) / g;
    if ((g * g) % m != 0) return ChainClass::not_t();
    Int d = (g * g) / m;
    if (d < 1 || n < 2 || a <= 0 || a >= n) return ChainClass::not_t();
    if (gcd(n, a) != 1) return ChainClass::not_t();
    if (m != d * n * n || q != d * n * a - 1) return ChainClass::not_t();
    return ChainClass::t_chain({d, n, a});
}

// Route 2: peel expansion moves off the ends until an initial chain (or a
// contradiction) appears.  Returns d on success.  A genuine T-chain never
// carries a 2 at both ends, so the branch order below is immaterial for
// positives.
bool classify_strip(const Chain& chain, Int& d_out) {
    std::deque<Int> c(chain.begin(), chain.end());
    auto is_initial = [&]() -> bool {
        if (c.size() == 1) return c[0] == 4;
        if (c.front() != 3 || c.back() != 3) return false;
        for (size_t i = 1; i + 1 < c.size(); ++i)
            if (c[i] != 2) return false;
        return true;
    };
    while (true) {
        if (is_initial()) {
            d_out = (c.size() == 1) ? Int(1) : Int(c.size());
            return true;
        }
        if (c.size() < 2) return false;
        if (c.front() == 2) {
            c.pop_front();
            c.back() -= 1;
            if (c.back() < 2) return false;
        } else if (c.back() == 2) {
            c.pop_back();
            c.front() -= 1;
            if (c.front() < 2) return false;
        } else {
            return false;
        }
    }
}

} // namespace

ChainClass classify(const Chain& chain) {
    validate_chain(chain);
    if (std::all_of(chain.begin(), chain.end(), [](const Int& b) { return b == 2; }))
        return ChainClass::du_val(Int(chain.size()));

    ChainClass arith = classify_arithmetic(chain);
    Int d_strip = 0;
    bool strip_t = classify_strip(chain, d_strip);
    // the two recognizers must always agree
    if (strip_t != arith.is_t() || (strip_t && d_strip != arith.params.d))
        throw std::logic_error("T-chain recognizers disagree on " + format_chain(chain));
    return arith;
}

Chain expand_left(const Chain& chain) {
    if (!classify(chain).is_t())
        throw std::domain_error("expand_left requires a T-chain, got " + format_chain(chain));
    Chain out;
    out.reserve(chain.size() + 1);
    out.push_back(2);
    out.insert(out.end(), chain.begin(), chain.end());
    out.back() += 1;
    return out;
}

Chain expand_right(const Chain& chain) {
    if (!classify(chain).is_t())
        throw std::domain_error("expand_right requires a T-chain, got " + format_chain(chain));
    Chain out(chain);
    out.front() += 1;
    out.push_back(2);
    return out;
}

Chain initial_chain(const Int& d) {
    if (d < 1) throw std::invalid_argument("initial_chain needs d >= 1, got " + d.str());
    if (d == 1) return Chain{4};
    Chain out;
    out.push_back(3);
    for (Int i = 0; i < d - 2; ++i) out.push_back(2);
    out.push_back(3);
    return out;
}

std::vector<Chain> enumerate_tchains(const Int& d, const Int& k) {
    if (k < 0) throw std::invalid_argument("enumeration needs k >= 0, got " + k.str());
    std::vector<Chain> level{initial_chain(d)};
    for (Int step = 0; step < k; ++step) {
        std::vector<Chain> next;
        next.reserve(level.size() * 2);
        for (const Chain& c : level) {
            // skip the classify() reverification inside expand_*: members of
            // the enumeration are T-chains by construction
            Chain left;
            left.reserve(c.size() + 1);
            left.push_back(2);
            left.insert(left.end(), c.begin(), c.end());
            left.back() += 1;
            next.push_back(std::move(left));
            Chain right(c);
            right.front() += 1;
            right.push_back(2);
            next.push_back(std::move(right));
        }
        level = std::move(next);
    }
    return level;
}

std::vector<Chain> dedupe_reversals(const std::vector<Chain>& chains) {
    std::vector<Chain> kept;
    for (const Chain& c : chains) {
        Chain rev = reverse_chain(c);
        bool seen = std::find(kept.begin(), kept.end(), c) != kept.end() ||
                    std::find(kept.begin(), kept.end(), rev) != kept.end();
        if (!seen) kept.push_back(c);
    }
    return kept;
}

Int fibonacci(const Int& i) {
    if (i < -2) throw std::invalid_argument("fibonacci index must be >= -2, got " + i.str());
    Int prev = 1, cur = 1; // F(-2), F(-1)
    for (Int j = 0; j <= i; ++j) {
        Int next = prev + cur;
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace {

// [3,...,3,5,3,...,3,2] with i+j+2 = chain length; the extremal shape for d=1.
bool matches_extremal_form(const Chain& c) {
    if (c.size() < 2) return false;
    if (c.back() != 2) return false;
    size_t fives = 0;
    for (size_t i = 0; i + 1 < c.size(); ++i) {
        if (c[i] == 5) ++fives;
        else if (c[i] != 3) return false;
    }
    return fives == 1;
}

} // namespace

FibonacciReport verify_fibonacci_bound(const Int& d, const Int& k) {
    FibonacciReport rep;
    rep.d = d;
    rep.k = k;
    rep.fib = fibonacci(k);
    for (const Chain& c : enumerate_tchains(d, k)) {
        ChainClass cls = classify(c);
        if (!cls.is_t() || cls.params.d != d)
            throw std::logic_error("enumeration produced a non-T chain " + format_chain(c));
        const Int& n = cls.params.n;
        if (n > rep.max_n) {
            rep.max_n = n;
            rep.maximizers.clear();
        }
        if (n == rep.max_n) rep.maximizers.push_back(c);
    }
    rep.bound_ok = rep.max_n <= rep.fib;
    rep.equality = rep.max_n == rep.fib;
    if (d == 1 && k >= 1) {
        rep.form_ok = !rep.maximizers.empty();
        for (const Chain& c : rep.maximizers)
            if (!matches_extremal_form(c) && !matches_extremal_form(reverse_chain(c)))
                rep.form_ok = false;
    }
    return rep;
}

} // namespace tsing
