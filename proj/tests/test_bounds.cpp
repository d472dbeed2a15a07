#include <doctest.h>

#include "tsing/bounds.hpp"
#include "tsing/invariants.hpp"

#include <stdexcept>

using namespace tsing;

static Chain C(std::initializer_list<int> xs) { return Chain(xs.begin(), xs.end()); }

TEST_CASE("delta of a diagram") {
    CHECK(delta_of(DiagramKind::no_long()) == 0);
    CHECK(delta_of(DiagramKind::type_i()) == 1);
    CHECK(delta_of(DiagramKind::type_ii(3, -6)) == 3);
    CHECK_THROWS_AS(DiagramKind::type_ii(0, -6), std::invalid_argument);
    CHECK_THROWS_AS(DiagramKind::type_ii(2, -2), std::invalid_argument);
}

TEST_CASE("bound values on known inputs") {
    CHECK(bound_unconditional(1, 2, 0) == 4);
    CHECK(bound_unconditional(1, 0, 1) == 1);
    CHECK(bound_unconditional(-7, 1, -21) == 8);

    CHECK(bound_nef(Kappa::Zero, 1, 0) == 4);
    CHECK(bound_nef(Kappa::One, 1, 0) == 2);
    CHECK(bound_nef(Kappa::One, 2, 0) == 6);
    CHECK(bound_nef(Kappa::Two, 5, 4) == 1);  // gain 1: residual branch
    CHECK(bound_nef(Kappa::Two, 2, 1) == 1);
    CHECK(bound_nef(Kappa::Two, 3, 1) == 4);  // gain 2: 4*2-4

    CHECK(bound_no_long(Kappa::Zero, 1, 0) == 2);
    CHECK(bound_no_long(Kappa::One, 1, 0) == 1);
    CHECK(bound_no_long(Kappa::Two, 5, 4) == 1);
    CHECK(bound_no_long(Kappa::Two, 3, 1) == 3);

    CHECK(bound_type_i(Kappa::Zero, 1, 0) == 3);
    CHECK(bound_type_i(Kappa::One, 1, 0) == 2);
    CHECK(bound_type_i(Kappa::Two, 5, 4) == 2);
    CHECK(bound_type_i(Kappa::Two, 3, 1) == 4);

    CHECK(bound_not_nef(-7, -21, DiagramKind::Type::TypeI) == 8);
    CHECK(bound_not_nef(1, -1, DiagramKind::Type::NoLong) == 3);
    CHECK(bound_not_nef(2, -1, DiagramKind::Type::TypeII) == 10);
}

TEST_CASE("bound ordering: where it truly holds and the sharp exception") {
    for (int kw2 = 1; kw2 <= 12; ++kw2) {
        for (Kappa kappa : {Kappa::Zero, Kappa::One}) {
            CHECK(bound_no_long(kappa, kw2, 0) <= bound_type_i(kappa, kw2, 0));
            CHECK(bound_type_i(kappa, kw2, 0) <= bound_nef(kappa, kw2, 0));
        }
        for (int ks2 = 1; ks2 < kw2 - 1; ++ks2) { // gain >= 2
            CHECK(bound_no_long(Kappa::Two, kw2, ks2) <= bound_type_i(Kappa::Two, kw2, ks2));
            CHECK(bound_type_i(Kappa::Two, kw2, ks2) <= bound_nef(Kappa::Two, kw2, ks2));
        }
    }
    // at canonical gain 1 the blanket bound undercuts the type-I refinement:
    // the middle term of the chain of inequalities genuinely fails there
    CHECK(bound_no_long(Kappa::Two, 2, 1) == 1);
    CHECK(bound_type_i(Kappa::Two, 2, 1) == 2);
    CHECK(bound_nef(Kappa::Two, 2, 1) == 1);
    CHECK(bound_type_i(Kappa::Two, 2, 1) > bound_nef(Kappa::Two, 2, 1));
}

TEST_CASE("type II lower estimate") {
    auto ok = type_ii_lower_estimate(Kappa::Zero, C({2, 2, 6, 2, 4}),
                                     DiagramKind::type_ii(2, -6));
    CHECK(ok.holds);
    CHECK(ok.r_minus_d == 4);
    CHECK(ok.lower == 4);
    CHECK(ok.s_consistent);

    auto viol = type_ii_lower_estimate(Kappa::Zero, C({2, 5}), DiagramKind::type_ii(1, -5));
    CHECK(!viol.holds); // 1 < 2: the deliberate failure example
    CHECK(viol.r_minus_d == 1);
    CHECK(viol.lower == 2);

    auto k2 = type_ii_lower_estimate(Kappa::Two, C({2, 7, 2, 2, 3}),
                                     DiagramKind::type_ii(1, -7));
    CHECK(k2.holds); // 4 >= 3
    CHECK(k2.lower == 3);
    CHECK(k2.s_consistent);

    CHECK_THROWS_AS(type_ii_lower_estimate(Kappa::Zero, C({2, 5}), DiagramKind::type_i()),
                    std::domain_error);
    CHECK_THROWS_AS(
        type_ii_lower_estimate(Kappa::Zero, C({2, 4}), DiagramKind::type_ii(1, -4)),
        std::domain_error);
}

TEST_CASE("every built-in scenario passes its ledger") {
    auto fixtures = classification_fixtures();
    CHECK(fixtures.size() == 26);
    for (const ScenarioRecord& rec : fixtures) {
        ScenarioReport rep = check_scenario(rec);
        INFO(rep.name);
        for (const CheckLine& line : rep.lines) {
            INFO(line.check, ": ", line.detail);
            CHECK(line.pass);
        }
        CHECK(rep.pass);
    }
}

TEST_CASE("scenario reports carry the expected shape") {
    auto fixtures = classification_fixtures();
    const ScenarioRecord* k0a = nullptr;
    const ScenarioRecord* septic = nullptr;
    for (const auto& rec : fixtures) {
        if (rec.name == "k0-A") k0a = &rec;
        if (rec.name == "notnef-septic") septic = &rec;
    }
    REQUIRE(k0a != nullptr);
    REQUIRE(septic != nullptr);

    ScenarioReport rep = check_scenario(*k0a);
    CHECK(rep.r == 5);
    CHECK(rep.d == 1);
    CHECK(rep.params == TParams{1, 10, 7});
    // r-d attains the blanket bound 4*kw2
    bool saw_tight = false;
    for (const auto& line : rep.lines)
        if (line.check == "tight") {
            saw_tight = true;
            CHECK(line.detail == "4=4");
        }
    CHECK(saw_tight);

    ScenarioReport srep = check_scenario(*septic);
    CHECK(srep.r == 9);
    CHECK(srep.d == 1);
    // r = 9 = 2 kw2 + 5 against the no-nef type-I bound
    CHECK(srep.r == 2 * septic->kw2 + 5);
    for (const auto& line : srep.lines)
        if (line.check == "tight") CHECK(line.detail == "8=8");
}

TEST_CASE("scenario bookkeeping validation") {
    ScenarioRecord bad;
    bad.name = "bad-kw2";
    bad.kappa = Kappa::Zero;
    bad.ks2 = 0;
    bad.kw2 = 2; // should be 1
    bad.lambda = 0;
    bad.m = 4;
    bad.diagram = DiagramKind::type_ii(2, -6);
    bad.chain = C({2, 2, 6, 2, 4});
    CHECK_THROWS_AS(check_scenario(bad), std::invalid_argument);

    bad.kw2 = 1;
    bad.chain = C({2, 4});
    CHECK_THROWS_AS(check_scenario(bad), std::invalid_argument); // not a T-chain

    bad.chain = C({2, 2, 6, 2, 4});
    bad.kappa = std::nullopt; // nef without a Kodaira dimension
    CHECK_THROWS_AS(check_scenario(bad), std::invalid_argument);
}

TEST_CASE("a scenario violating the type II lower estimate fails its ledger") {
    ScenarioRecord rec;
    rec.name = "violates-lower";
    rec.kappa = Kappa::Zero;
    rec.ks_nef = true;
    rec.ks2 = 0;
    rec.kw2 = kw2_from(0, 1, 2, 1); // m=1, chain [2,5]: kw2 = 1
    rec.lambda = 0;
    rec.m = 1;
    rec.diagram = DiagramKind::type_ii(1, -5);
    rec.chain = C({2, 5});
    ScenarioReport rep = check_scenario(rec);
    CHECK(!rep.pass);
    bool lower_failed = false;
    for (const auto& line : rep.lines)
        if (line.check == "type-ii-lower" && !line.pass) lower_failed = true;
    CHECK(lower_failed);
}

TEST_CASE("named classification chains recognize to their stated parameters") {
    for (const NamedChain& row : classification_chains()) {
        INFO(row.name);
        ChainClass cls = classify(row.chain);
        CHECK(cls.is_t());
        CHECK(cls.params == row.params);
    }
}
