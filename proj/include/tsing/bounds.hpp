#pragma once

#include "tsing/chain.hpp"
#include "tsing/tchain.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tsing {

enum class Kappa { Zero = 0, One = 1, Two = 2 };

// How the exceptional (-1)-curves meet the chain, seen from the chain's
// (-2)-end: no long diagram, a long diagram hitting only the end curve
// (type I), or one hitting every curve of the leading (-2)-block (type II,
// with s block curves and the adjacent curve of self-intersection gamma).
struct DiagramKind {
    enum class Type { NoLong, TypeI, TypeII };
    Type type = Type::NoLong;
    Int s = 0;          // type II only: length of the (-2)-block
    Int gamma_self = 0; // type II only: self-intersection <= -3 next to it

    static DiagramKind no_long() { return {Type::NoLong, 0, 0}; }
    static DiagramKind type_i() { return {Type::TypeI, 0, 0}; }
    static DiagramKind type_ii(Int s, Int gamma_self);
};

// Contribution of the diagram to the unconditional bound: 0, 1, or s.
Int delta_of(const DiagramKind& diagram);

// r - d <= 2 (K_W^2 - K_S^2) + delta - lambda, valid with no positivity
// assumption on K_S.
Int bound_unconditional(const Int& delta_k2, const Int& delta, const Int& lambda);

// Blanket bound on r - d when K_S is nef, by Kodaira dimension:
//   kappa = 0: 4 kw2      kappa = 1: 4 kw2 - 2
//   kappa = 2: 4 (kw2-ks2) - 4 when kw2-ks2 > 1, else 1
Int bound_nef(Kappa kappa, const Int& kw2, const Int& ks2);

// Refinements when K_S is nef and the diagram is constrained:
//   no long diagram:   2 kw2 | 2 kw2 - 1 | 2 (kw2-ks2) - 1
//   type I diagram:    2 kw2 + 1 | 2 kw2 | 2 (kw2-ks2)
Int bound_no_long(Kappa kappa, const Int& kw2, const Int& ks2);
Int bound_type_i(Kappa kappa, const Int& kw2, const Int& ks2);

// Bound on r - d with no nef assumption:
//   no long: 2 delta_k2 - lambda;  type I: + 1;  type II: 4 delta_k2 - 2 lambda.
Int bound_not_nef(const Int& delta_k2, const Int& lambda, DiagramKind::Type type);

// Lower estimate for type II diagrams under nef K_S:
// r - d >= 2s (kappa 0,1) or 2s + 1 (kappa 2).
struct TypeIILowerReport {
    Int r_minus_d = 0;
    Int lower = 0;
    bool holds = false;
    bool s_consistent = false; // s equals the 2-block at one end of the chain
};
// Throws std::domain_error unless the diagram is type II and the chain is
// a T-chain.
TypeIILowerReport type_ii_lower_estimate(Kappa kappa, const Chain& chain,
                                         const DiagramKind& diagram);

// A surface scenario: one T-chain on a surface S (K_S^2 = ks2, canonical
// degree lambda of the chain's image), resolved with m blow-ups, contracted
// to W with K_W^2 = kw2.  kappa is empty when K_S is not nef.
struct ScenarioRecord {
    std::string name;
    std::optional<Kappa> kappa;
    bool ks_nef = true;
    Int ks2 = 0;
    Int kw2 = 0;
    Int lambda = 0;
    Int m = 0;
    DiagramKind diagram;
    Chain chain;
    bool tight = false; // r - d attains the applicable upper bound
};

struct CheckLine {
    std::string check;
    std::string detail; // e.g. "4=4" or "4<=6"
    bool pass = false;
};

struct ScenarioReport {
    std::string name;
    std::vector<CheckLine> lines;
    bool pass = true;
    TParams params{}; // of the chain
    Int r = 0;
    Int d = 0;
};

// Run every applicable inequality of the record through the bound functions.
// Throws std::invalid_argument when the record's bookkeeping is inconsistent
// (kw2 doesn't match ks2 - m + r - d + 1, chain not a T-chain, nef without
// kappa).
ScenarioReport check_scenario(const ScenarioRecord& record);

// The built-in classification scenarios (nef fixtures for kappa = 0, 1, 2
// and the non-nef plane fixture), each fully populated and hand-checked.
std::vector<ScenarioRecord> classification_fixtures();

// Chains quoted in the classification along with their recognition data,
// including the one chain carried without full surface bookkeeping.
struct NamedChain {
    std::string name;
    Chain chain;
    TParams params;
};
std::vector<NamedChain> classification_chains();

} // namespace tsing
