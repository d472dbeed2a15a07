#include "tsing/bounds.hpp"

#include "tsing/invariants.hpp"

#include <sstream>
#include <stdexcept>

namespace tsing {

DiagramKind DiagramKind::type_ii(Int s, Int gamma_self) {
    if (s < 1)
        throw std::invalid_argument("type II diagram needs s >= 1, got " + s.str());
    if (gamma_self > -3)
        throw std::invalid_argument("type II diagram needs gamma <= -3, got " +
                                    gamma_self.str());
    return {Type::TypeII, std::move(s), std::move(gamma_self)};
}

Int delta_of(const DiagramKind& diagram) {
    switch (diagram.type) {
    case DiagramKind::Type::NoLong: return 0;
    case DiagramKind::Type::TypeI: return 1;
    case DiagramKind::Type::TypeII: return diagram.s;
    }
    throw std::logic_error("unreachable diagram type");
}

Int bound_unconditional(const Int& delta_k2, const Int& delta, const Int& lambda) {
    return 2 * delta_k2 + delta - lambda;
}

Int bound_nef(Kappa kappa, const Int& kw2, const Int& ks2) {
    switch (kappa) {
    case Kappa::Zero: return 4 * kw2;
    case Kappa::One: return 4 * kw2 - 2;
    case Kappa::Two: {
        Int delta = kw2 - ks2;
        return delta > 1 ? 4 * delta - 4 : Int(1);
    }
    }
    throw std::logic_error("unreachable kappa");
}

Int bound_no_long(Kappa kappa, const Int& kw2, const Int& ks2) {
    switch (kappa) {
    case Kappa::Zero: return 2 * kw2;
    case Kappa::One: return 2 * kw2 - 1;
    case Kappa::Two: return 2 * (kw2 - ks2) - 1;
    }
    throw std::logic_error("unreachable kappa");
}

Int bound_type_i(Kappa kappa, const Int& kw2, const Int& ks2) {
    switch (kappa) {
    case Kappa::Zero: return 2 * kw2 + 1;
    case Kappa::One: return 2 * kw2;
    case Kappa::Two: return 2 * (kw2 - ks2);
    }
    throw std::logic_error("unreachable kappa");
}

Int bound_not_nef(const Int& delta_k2, const Int& lambda, DiagramKind::Type type) {
    switch (type) {
    case DiagramKind::Type::NoLong: return 2 * delta_k2 - lambda;
    case DiagramKind::Type::TypeI: return 2 * delta_k2 + 1 - lambda;
    case DiagramKind::Type::TypeII: return 4 * delta_k2 - 2 * lambda;
    }
    throw std::logic_error("unreachable diagram type");
}

namespace {

Int end_two_run(const Chain& chain, bool front) {
    Int run = 0;
    if (front) {
        for (const Int& b : chain) {
            if (b != 2) break;
            ++run;
        }
    } else {
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            if (*it != 2) break;
            ++run;
        }
    }
    return run;
}

} // namespace

TypeIILowerReport type_ii_lower_estimate(Kappa kappa, const Chain& chain,
                                         const DiagramKind& diagram) {
    if (diagram.type != DiagramKind::Type::TypeII)
        throw std::domain_error("lower estimate applies to type II diagrams only");
    ChainClass cls = classify(chain);
    if (!cls.is_t())
        throw std::domain_error("lower estimate needs a T-chain, got " + format_chain(chain));
    TypeIILowerReport rep;
    rep.r_minus_d = Int(chain.size()) - cls.params.d;
    rep.lower = (kappa == Kappa::Two) ? Int(2 * diagram.s + 1) : Int(2 * diagram.s);
    rep.holds = rep.r_minus_d >= rep.lower;
    rep.s_consistent = end_two_run(chain, true) == diagram.s ||
                       end_two_run(chain, false) == diagram.s;
    return rep;
}

namespace {

CheckLine line_le(const std::string& check, const Int& lhs, const Int& rhs) {
    std::ostringstream os;
    os << lhs << (lhs == rhs ? "=" : (lhs < rhs ? "<" : ">")) << rhs;
    return {check, os.str(), lhs <= rhs};
}

CheckLine line_eq(const std::string& check, const Int& lhs, const Int& rhs) {
    std::ostringstream os;
    os << lhs << (lhs == rhs ? "=" : "!=") << rhs;
    return {check, os.str(), lhs == rhs};
}

} // namespace

ScenarioReport check_scenario(const ScenarioRecord& record) {
    ChainClass cls = classify(record.chain);
    if (!cls.is_t())
        throw std::invalid_argument("scenario '" + record.name + "' chain " +
                                    format_chain(record.chain) + " is not a T-chain");
    Int r = record.chain.size();
    const Int& d = cls.params.d;
    if (record.kw2 != kw2_from(record.ks2, record.m, r, d))
        throw std::invalid_argument("scenario '" + record.name + "' has inconsistent kw2: " +
                                    record.kw2.str() + " vs ks2-m+r-d+1 = " +
                                    kw2_from(record.ks2, record.m, r, d).str());
    if (record.ks_nef && !record.kappa)
        throw std::invalid_argument("scenario '" + record.name +
                                    "' is nef but carries no Kodaira dimension");
    if (!record.ks_nef && record.kappa)
        throw std::invalid_argument("scenario '" + record.name +
                                    "' is not nef yet carries a Kodaira dimension");

    ScenarioReport rep;
    rep.name = record.name;
    rep.params = cls.params;
    rep.r = r;
    rep.d = d;

    Int rd = r - d;
    Int delta_k2 = record.kw2 - record.ks2;
    Int delta = delta_of(record.diagram);

    rep.lines.push_back(
        line_le("unconditional", rd, bound_unconditional(delta_k2, delta, record.lambda)));
    // total exceptional/chain intersection is at least m+1
    rep.lines.push_back(line_le("incidence-floor", record.m + 1,
                                exceptional_pairing_total(r, d, record.lambda)));
    rep.lines.push_back(line_le("k2-gain", record.lambda, delta_k2));

    if (record.kappa) {
        Kappa kappa = *record.kappa;
        rep.lines.push_back(line_le("nef-gain", 1, delta_k2));
        if (kappa == Kappa::Zero)
            rep.lines.push_back(line_eq("lambda-sign", record.lambda, 0));
        else
            rep.lines.push_back(line_le("lambda-sign", 1, record.lambda));
        rep.lines.push_back(
            line_le("nef-blanket", rd, bound_nef(kappa, record.kw2, record.ks2)));
        switch (record.diagram.type) {
        case DiagramKind::Type::NoLong:
            rep.lines.push_back(
                line_le("no-long", rd, bound_no_long(kappa, record.kw2, record.ks2)));
            break;
        case DiagramKind::Type::TypeI:
            rep.lines.push_back(
                line_le("type-i", rd, bound_type_i(kappa, record.kw2, record.ks2)));
            break;
        case DiagramKind::Type::TypeII: {
            auto low = type_ii_lower_estimate(kappa, record.chain, record.diagram);
            rep.lines.push_back(line_le("type-ii-lower", low.lower, low.r_minus_d));
            rep.lines.push_back({"type-ii-s", low.s_consistent ? "s matches 2-block" : "s mismatch",
                                 low.s_consistent});
            break;
        }
        }
        if (record.tight)
            rep.lines.push_back(line_eq("tight", rd, bound_nef(kappa, record.kw2, record.ks2)));
    } else {
        rep.lines.push_back(line_le(
            "not-nef", rd, bound_not_nef(delta_k2, record.lambda, record.diagram.type)));
        if (record.tight)
            rep.lines.push_back(line_eq(
                "tight", rd, bound_not_nef(delta_k2, record.lambda, record.diagram.type)));
    }

    for (const CheckLine& line : rep.lines)
        if (!line.pass) rep.pass = false;
    return rep;
}

namespace {

Chain two_run(int count) { return Chain(count, Int(2)); }

// [2^s, 3, 2^(s-2), s+3, s+2] for s >= 2: the recurring nef family.
Chain family_chain(int s) {
    Chain c = two_run(s);
    c.push_back(3);
    Chain mid = two_run(s - 2);
    c.insert(c.end(), mid.begin(), mid.end());
    c.push_back(Int(s) + 3);
    c.push_back(Int(s) + 2);
    return c;
}

Chain k2b_chain(int d) {
    Chain c{2, 3};
    Chain mid = two_run(d - 2);
    c.insert(c.end(), mid.begin(), mid.end());
    c.push_back(4);
    return c;
}

ScenarioRecord nef_record(std::string name, Kappa kappa, Int ks2, Int kw2, Int lambda,
                          Int m, DiagramKind diagram, Chain chain, bool tight) {
    return {std::move(name), kappa,  true,  std::move(ks2),     std::move(kw2),
            std::move(lambda), std::move(m), std::move(diagram), std::move(chain), tight};
}

} // namespace

std::vector<ScenarioRecord> classification_fixtures() {
    std::vector<ScenarioRecord> out;

    // kappa 0: K_S^2 = 0, lambda = 0, the chain [2,2,6,2,4] from either
    // minimal-surface route, then the family at s = 2k
    out.push_back(nef_record("k0-A", Kappa::Zero, 0, 1, 0, 4,
                             DiagramKind::type_ii(2, -6), {2, 2, 6, 2, 4}, true));
    out.push_back(nef_record("k0-B", Kappa::Zero, 0, 1, 0, 4,
                             DiagramKind::type_ii(2, -6), {2, 2, 6, 2, 4}, true));
    for (int k = 1; k <= 4; ++k) {
        int s = 2 * k;
        out.push_back(nef_record("k0-C-k" + std::to_string(k), Kappa::Zero, 0, k, 0,
                                 3 * k + 1, DiagramKind::type_ii(s, -(Int(s) + 3)),
                                 family_chain(s), true));
    }

    // kappa 1: K_S^2 = 0, lambda = 1
    out.push_back(nef_record("k1-A", Kappa::One, 0, 1, 1, 2, DiagramKind::type_i(),
                             {3, 5, 2}, true));
    for (int k = 1; k <= 4; ++k) {
        int s = 2 * k + 1;
        for (const char* case_name : {"B", "C"})
            out.push_back(nef_record(std::string("k1-") + case_name + "-k" + std::to_string(k),
                                     Kappa::One, 0, k + 1, 1, 3 * k + 2,
                                     DiagramKind::type_ii(s, -(Int(s) + 3)),
                                     family_chain(s), true));
    }
    // the multi-fibre variants: one attaining the blanket bound, two not
    out.push_back(nef_record("k1-D-a", Kappa::One, 0, 2, 1, 5,
                             DiagramKind::type_ii(3, -6), family_chain(3), true));
    out.push_back(nef_record("k1-D-b", Kappa::One, 0, 3, 1, 6,
                             DiagramKind::type_ii(4, -7), family_chain(4), false));
    out.push_back(nef_record("k1-E", Kappa::One, 0, 4, 1, 7,
                             DiagramKind::type_ii(5, -8), family_chain(5), false));

    // kappa 2: lambda = 1 throughout
    out.push_back(nef_record("k2-A", Kappa::Two, 4, 5, 1, 1, DiagramKind::no_long(),
                             {2, 5}, true));
    for (int d : {4, 6, 8, 10})
        out.push_back(nef_record("k2-B-d" + std::to_string(d), Kappa::Two, 1, 2, 1, 1,
                                 DiagramKind::no_long(), k2b_chain(d), true));
    out.push_back(nef_record("k2-C", Kappa::Two, 1, 3, 1, 3, DiagramKind::type_ii(1, -7),
                             {2, 7, 2, 2, 3}, true));
    out.push_back(nef_record("k2-D", Kappa::Two, 1, 3, 1, 3, DiagramKind::type_ii(1, -6),
                             {2, 3, 2, 6, 3}, true));

    // K_S not nef: from the plane, 16 blow-ups along a singular septic
    ScenarioRecord septic;
    septic.name = "notnef-septic";
    septic.kappa = std::nullopt;
    septic.ks_nef = false;
    septic.ks2 = 9;
    septic.kw2 = 2;
    septic.lambda = -21;
    septic.m = 16;
    septic.diagram = DiagramKind::type_i();
    septic.chain = two_run(8);
    septic.chain.push_back(12);
    septic.tight = true;
    out.push_back(septic);

    return out;
}

std::vector<NamedChain> classification_chains() {
    std::vector<NamedChain> out;
    auto add = [&](std::string name, Chain chain, Int d, Int n, Int a) {
        out.push_back({std::move(name), std::move(chain), {std::move(d), std::move(n), std::move(a)}});
    };
    add("k0-A", {2, 2, 6, 2, 4}, 1, 10, 7);
    add("order-121", {2, 2, 3, 5, 4}, 1, 11, 8);
    add("k0-C-k1", family_chain(2), 1, 11, 8);
    add("k0-C-k2", family_chain(4), 1, 29, 24);
    add("k0-C-k3", family_chain(6), 1, 55, 48);
    add("k0-C-k4", family_chain(8), 1, 89, 80);
    add("k1-A", {2, 5, 3}, 1, 5, 3); // the scenario carries the reverse orientation
    add("k1-B-k1", family_chain(3), 1, 19, 15);
    add("k1-B-k2", family_chain(5), 1, 41, 35);
    add("k1-B-k3", family_chain(7), 1, 71, 63);
    add("k1-B-k4", family_chain(9), 1, 109, 99);
    add("k2-A", {2, 5}, 1, 3, 2);
    add("k2-B-d4", k2b_chain(4), 4, 3, 2);
    add("k2-B-d6", k2b_chain(6), 6, 3, 2);
    add("k2-B-d8", k2b_chain(8), 8, 3, 2);
    add("k2-B-d10", k2b_chain(10), 10, 3, 2);
    add("k2-C", {2, 7, 2, 2, 3}, 1, 9, 5);
    add("k2-D", {2, 3, 2, 6, 3}, 1, 11, 7);
    Chain septic = Chain(8, Int(2));
    septic.push_back(12);
    add("notnef-septic", septic, 1, 10, 9);
    add("order-10000", {4, 2, 6, 2, 6, 2, 2, 2, 4, 2, 2}, 1, 100, 29);
    return out;
}

} // namespace tsing
