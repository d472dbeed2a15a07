#pragma once

#include "tsing/chain.hpp"
#include "tsing/discrepancy.hpp"
#include "tsing/tchain.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tsing {

// A curve declared on the starting surface: self-intersection, degree
// against the canonical class, and number of (unresolved) simple nodes.
// Curves are rational; their geometric genus is carried by the node count,
// so self + k_dot = -2 + 2*nodes must hold.
struct CurveDecl {
    std::string label;
    Int self = 0;
    Int k_dot = 0;
    Int nodes = 0;
};

struct PairDecl {
    std::string a;
    std::string b;
    Int mult = 1;
};

struct BlowupStep {
    enum class Op { Free, Intersection, Node };
    Op op;
    std::vector<std::string> args; // Free/Node: one label; Intersection: two
};

// Tracks the Picard classes of a blow-up sequence exactly: every curve is
// its base class minus a signed combination of the exceptional classes
// e_1..e_m, with e_i^2 = -1 and everything else orthogonal.  Each blow-up
// step introduces a fresh curve E<m>.
class BlowupConfig {
  public:
    static BlowupConfig init(Int ks2, const std::vector<CurveDecl>& curves,
                             const std::vector<PairDecl>& pairings);

    // Throws std::domain_error when the step's geometric precondition fails
    // (missing intersection point to blow up, no node left).
    void blow_up(const BlowupStep& step);

    Int pairing(const std::string& a, const std::string& b) const;
    Int self(const std::string& label) const;
    Int k_degree(const std::string& label) const;
    Int nodes(const std::string& label) const;
    bool has_curve(const std::string& label) const;

    Int m() const { return m_; }
    Int kx2() const { return ks2_ - m_; }
    const Int& ks2() const { return ks2_; }

    // Intersection of the pullback class e_i (1-based) with the sum of the
    // given curves.
    Int pullback_pairing(size_t i, const std::vector<std::string>& labels) const;

    // Reads off the resolution chain [-self_1, ..., -self_r] after checking
    // it really is a chain: consecutive curves meet once, non-consecutive
    // ones not at all, every self-intersection is <= -2 and all nodes are
    // resolved.  Throws std::domain_error naming the offending curve/pair.
    Chain extract_chain(const std::vector<std::string>& order) const;

  private:
    struct Curve {
        std::string base;        // declared label, empty for exceptionals
        std::vector<Int> ecoef;  // signed coefficient of e_1..e_m
        Int nodes = 0;
    };

    const Curve& at(const std::string& label) const;
    Int base_pairing(const std::string& a, const std::string& b) const;

    Int ks2_ = 0;
    Int m_ = 0;
    std::map<std::string, CurveDecl> decls_;
    std::map<std::pair<std::string, std::string>, Int> declared_pairs_;
    std::map<std::string, Curve> curves_;
    std::vector<std::string> order_; // insertion order, declared then E1..
};

// A construction document: starting surface data, blow-up steps, the chain
// to extract and (optionally) a designated (-1)-curve whose contracted
// degree matters.
struct ConstructionDoc {
    std::string name;
    Int ks2 = 0;
    std::vector<CurveDecl> curves;
    std::vector<PairDecl> intersections;
    std::vector<std::string> pi_c; // declared curves forming the image of the chain
    std::vector<BlowupStep> steps;
    std::vector<std::string> chain_order;
    std::optional<std::string> designated_f;
    std::string notes;
    // optional frozen expectations, checked when present
    std::optional<Int> expect_m;
    std::optional<Chain> expect_chain;
    std::optional<TParams> expect_class;
    std::optional<Int> expect_kw2;
    std::optional<Int> expect_lambda;
    std::optional<Int> expect_pairing_total;
    std::optional<Rat> expect_designated_degree;
};

struct ReplayLine {
    std::string check;
    std::string detail;
    bool pass = false;
};

struct ReplayReport {
    std::string name;
    Int m = 0;
    Int lambda = 0;
    Chain chain;
    ChainClass cls;
    Int kw2 = 0; // meaningful when the chain is a T-chain
    std::optional<Rat> designated_degree;
    std::vector<ReplayLine> lines;
    bool pass = true;
};

// Parse a construction document from its JSON text.  Throws
// std::invalid_argument on malformed documents.
ConstructionDoc parse_construction(const std::string& json_text);
ConstructionDoc load_construction(const std::string& path);

// Run the document and verify every stated invariant.
ReplayReport replay(const ConstructionDoc& doc);

// Directory with the shipped construction documents: the TSING_FIXTURES
// environment variable, or the built-in default.
std::string default_fixture_dir();

} // namespace tsing
