#pragma once

#include "tsing/chain.hpp"

#include <vector>

namespace tsing {

// Parameters of a T-singularity 1/(d n^2)(1, d n a - 1) with gcd(n,a) = 1,
// 0 < a < n, d >= 1.
struct TParams {
    Int d;
    Int n;
    Int a;

    friend bool operator==(const TParams& x, const TParams& y) {
        return x.d == y.d && x.n == y.n && x.a == y.a;
    }
};

struct ChainClass {
    enum class Kind { DuVal, TChain, NotT };
    Kind kind = Kind::NotT;
    Int duval_rank = 0; // set for DuVal: chain of that many (-2)-curves
    TParams params{};   // set for TChain

    static ChainClass du_val(Int rank) { return {Kind::DuVal, std::move(rank), {}}; }
    static ChainClass t_chain(TParams p) { return {Kind::TChain, 0, std::move(p)}; }
    static ChainClass not_t() { return {Kind::NotT, 0, {}}; }

    bool is_t() const { return kind == Kind::TChain; }

    friend bool operator==(const ChainClass& x, const ChainClass& y) {
        if (x.kind != y.kind) return false;
        if (x.kind == Kind::DuVal) return x.duval_rank == y.duval_rank;
        if (x.kind == Kind::TChain) return x.params == y.params;
        return true;
    }
};

// Throws std::invalid_argument unless d >= 1, n >= 2, 0 < a < n, gcd(n,a) = 1.
void validate_t_params(const TParams& p);

// Resolution chain of the T-singularity with the given parameters.
Chain chain_of(const TParams& p);

// Decide whether a chain resolves a Du Val A_r point, a T-singularity, or
// neither.  Two independent routes (parameter arithmetic on hj_eval, and the
// end-stripping peel) are run and cross-checked on every call.
ChainClass classify(const Chain& chain);

// The two length-raising moves that preserve T-ness:
//   left:  [b_1,...,b_r] -> [2, b_1, ..., b_r + 1]
//   right: [b_1,...,b_r] -> [b_1 + 1, ..., b_r, 2]
// Throw std::domain_error when the input is not a T-chain.
Chain expand_left(const Chain& chain);
Chain expand_right(const Chain& chain);

// Shortest T-chain with d n^2 = 4d: [4] for d = 1, [3,2^(d-2),3] otherwise.
Chain initial_chain(const Int& d);

// All T-chains with the given d and k expansion steps, in deterministic
// order (level order, left move before right move).  Exactly 2^k chains;
// a chain and its reversal both appear.
std::vector<Chain> enumerate_tchains(const Int& d, const Int& k);

// Drop, for each {chain, reversal} pair, whichever is lexicographically
// larger (keeps palindromic chains once).  Order of first occurrence.
std::vector<Chain> dedupe_reversals(const std::vector<Chain>& chains);

// Shifted Fibonacci sequence: F(-2) = F(-1) = 1, F(0) = 2, F(i) = F(i-1) + F(i-2).
// Throws std::invalid_argument for i < -2.
Int fibonacci(const Int& i);

struct FibonacciReport {
    Int d;
    Int k;
    Int fib;                      // F(k)
    Int max_n;                    // largest n over the enumeration
    bool bound_ok = false;        // max_n <= F(k)
    bool equality = false;        // max_n == F(k)
    std::vector<Chain> maximizers;
    // for d = 1, k >= 1: every maximizer matches [3^i,5,3^j,2] up to reversal
    // (k = 0 has the single chain [4]); true vacuously for d >= 2
    bool form_ok = true;
    bool pass() const { return bound_ok && form_ok && (d != 1 || equality); }
};

// Enumerate (d,k), compare max n against F(k), and for d = 1 check the
// shape of the maximizers.
FibonacciReport verify_fibonacci_bound(const Int& d, const Int& k);

} // namespace tsing
