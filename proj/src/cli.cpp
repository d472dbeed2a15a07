#include "tsing/cli.hpp"

#include "tsing/blowup.hpp"
#include "tsing/bounds.hpp"
#include "tsing/chain.hpp"
#include "tsing/discrepancy.hpp"
#include "tsing/invariants.hpp"
#include "tsing/tchain.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace tsing {

namespace {

using json = nlohmann::ordered_json;

// JSON numbers are emitted exactly while they fit a 64-bit integer; larger
// values fall back to decimal strings.
json json_int(const Int& v) {
    static const Int lo = Int(std::numeric_limits<long long>::min());
    static const Int hi = Int(std::numeric_limits<long long>::max());
    if (v >= lo && v <= hi) return json(v.convert_to<long long>());
    return json(v.str());
}

json json_chain(const Chain& chain) {
    json arr = json::array();
    for (const Int& b : chain) arr.push_back(json_int(b));
    return arr;
}

std::string quotient_str(const CyclicQuotient& cq) {
    return "1/" + cq.order.str() + "(1," + cq.weight.str() + ")";
}

CyclicQuotient parse_fraction(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos)
        throw std::invalid_argument("expected a fraction m/q, got '" + text + "'");
    try {
        CyclicQuotient cq{Int(text.substr(0, slash)), Int(text.substr(slash + 1))};
        validate_quotient(cq);
        return cq;
    } catch (const std::runtime_error&) { // integer parse failure
        throw std::invalid_argument("expected a fraction m/q, got '" + text + "'");
    }
}

// "--meets 2:1,3:1": 1-based chain index, optional multiplicity (default 1).
std::vector<std::pair<std::size_t, Int>> parse_meets(const std::string& text) {
    std::vector<std::pair<std::size_t, Int>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto colon = item.find(':');
        try {
            std::size_t index = std::stoul(item.substr(0, colon));
            Int mult = colon == std::string::npos ? Int(1) : Int(item.substr(colon + 1));
            out.push_back({index, mult});
        } catch (const std::exception&) {
            throw std::invalid_argument("bad incidence '" + item +
                                        "', expected index:multiplicity");
        }
    }
    if (out.empty()) throw std::invalid_argument("--meets lists no incidences");
    return out;
}

DiagramKind make_diagram(const std::string& name, long long s, long long gamma) {
    if (name == "none") return DiagramKind::no_long();
    if (name == "I") return DiagramKind::type_i();
    if (name == "II") {
        if (s < 1) throw std::invalid_argument("--diagram II requires --s >= 1");
        return DiagramKind::type_ii(Int(s), Int(gamma));
    }
    throw std::invalid_argument("unknown diagram '" + name + "', expected none|I|II");
}

// One catalog record per chain; the schema shared by `enumerate --jsonl`
// and `catalog`.
json catalog_record(const Chain& chain, const Int& k) {
    ChainClass cls = classify(chain);
    CyclicQuotient cq = hj_eval(chain);
    return json{{"chain", json_chain(chain)},
                {"d", json_int(cls.params.d)},
                {"n", json_int(cls.params.n)},
                {"a", json_int(cls.params.a)},
                {"order", json_int(cq.order)},
                {"weight", json_int(cq.weight)},
                {"r", json_int(Int(chain.size()))},
                {"k", json_int(k)}};
}

json check_line_json(const CheckLine& line) {
    return json{{"check", line.check}, {"detail", line.detail}, {"pass", line.pass}};
}

json replay_line_json(const ReplayLine& line) {
    return json{{"check", line.check}, {"detail", line.detail}, {"pass", line.pass}};
}

void print_scenario_text(const ScenarioRecord& rec, const ScenarioReport& rep,
                         std::ostream& out) {
    Int rd = rep.r - rep.d;
    Int bound = rec.ks_nef ? bound_nef(*rec.kappa, rec.kw2, rec.ks2)
                           : bound_not_nef(rec.kw2 - rec.ks2, rec.lambda, rec.diagram.type);
    out << rep.name << ": r-d=" << rd.str() << (rec.tight ? "=" : "<=") << bound.str()
        << (rec.ks_nef ? " (nef bound)" : " (not-nef bound)") << (rec.tight ? " TIGHT" : "");
    if (rep.pass) {
        out << " ok\n";
    } else {
        out << " FAIL";
        for (const CheckLine& line : rep.lines)
            if (!line.pass) out << " [" << line.check << ": " << line.detail << "]";
        out << "\n";
    }
}

json scenario_json(const ScenarioRecord& rec, const ScenarioReport& rep) {
    json checks = json::array();
    for (const CheckLine& line : rep.lines) checks.push_back(check_line_json(line));
    return json{{"name", rep.name},
                {"r", json_int(rep.r)},
                {"d", json_int(rep.d)},
                {"n", json_int(rep.params.n)},
                {"a", json_int(rep.params.a)},
                {"tight", rec.tight},
                {"checks", checks},
                {"pass", rep.pass}};
}

int do_replay_report(const ReplayReport& rep, bool as_json, std::ostream& out) {
    if (as_json) {
        json lines = json::array();
        for (const ReplayLine& line : rep.lines) lines.push_back(replay_line_json(line));
        json j{{"name", rep.name},
               {"m", json_int(rep.m)},
               {"lambda", json_int(rep.lambda)},
               {"chain", json_chain(rep.chain)}};
        if (rep.cls.is_t()) {
            j["class"] = json{{"d", json_int(rep.cls.params.d)},
                              {"n", json_int(rep.cls.params.n)},
                              {"a", json_int(rep.cls.params.a)}};
            j["kw2"] = json_int(rep.kw2);
        }
        if (rep.designated_degree) j["designated_degree"] = format_rat(*rep.designated_degree);
        j["lines"] = lines;
        j["pass"] = rep.pass;
        out << j.dump() << "\n";
    } else {
        out << rep.name << ": m=" << rep.m.str() << " chain=" << format_chain(rep.chain)
            << "\n";
        for (const ReplayLine& line : rep.lines)
            out << "  " << line.check << ": " << line.detail
                << (line.pass ? "" : " FAIL") << "\n";
        out << (rep.pass ? "replay: ok" : "replay: FAIL") << "\n";
    }
    return rep.pass ? 0 : 1;
}

std::vector<std::filesystem::path> fixture_documents() {
    namespace fs = std::filesystem;
    fs::path dir = default_fixture_dir();
    if (!fs::is_directory(dir))
        throw std::invalid_argument("fixture directory '" + dir.string() +
                                    "' does not exist");
    std::vector<fs::path> docs;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".json") docs.push_back(entry.path());
    std::sort(docs.begin(), docs.end());
    return docs;
}

} // namespace

int run(int argc, char** argv) {
    CLI::App app{"exact calculator for T-chains on stable surfaces"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit structured JSON instead of text");
    int code = 0;

    // ---- hj ---------------------------------------------------------------
    auto* hj = app.add_subcommand("hj", "continued-fraction expansion of 1/m(1,q)");
    hj->fallthrough();
    std::string hj_fraction;
    hj->add_option("fraction", hj_fraction, "cyclic quotient as m/q")->required();
    hj->callback([&] {
        CyclicQuotient cq = parse_fraction(hj_fraction);
        Chain chain = hj_expand(cq);
        if (as_json) {
            json j{{"order", json_int(cq.order)},
                   {"weight", json_int(cq.weight)},
                   {"chain", json_chain(chain)}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << format_chain(chain) << "\n";
        }
    });

    // ---- eval -------------------------------------------------------------
    auto* eval = app.add_subcommand("eval", "evaluate a chain back to its cyclic quotient");
    eval->fallthrough();
    std::string eval_chain;
    eval->add_option("chain", eval_chain, "chain as \"[b1,b2,...]\"")->required();
    eval->callback([&] {
        CyclicQuotient cq = hj_eval(parse_chain(eval_chain));
        if (as_json) {
            json j{{"order", json_int(cq.order)}, {"weight", json_int(cq.weight)}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << quotient_str(cq) << "\n";
        }
    });

    // ---- recognize ----------------------------------------------------------
    auto* recognize = app.add_subcommand("recognize", "classify a chain: T, du Val or neither");
    recognize->fallthrough();
    std::string recognize_chain;
    recognize->add_option("chain", recognize_chain, "chain as \"[b1,b2,...]\"")->required();
    recognize->callback([&] {
        Chain chain = parse_chain(recognize_chain);
        ChainClass cls = classify(chain);
        CyclicQuotient cq = hj_eval(chain);
        if (as_json) {
            json j{{"chain", json_chain(chain)},
                   {"order", json_int(cq.order)},
                   {"weight", json_int(cq.weight)}};
            switch (cls.kind) {
            case ChainClass::Kind::TChain:
                j["kind"] = "T";
                j["d"] = json_int(cls.params.d);
                j["n"] = json_int(cls.params.n);
                j["a"] = json_int(cls.params.a);
                j["reverse_weight"] = json_int(inverse_weight(cq).weight);
                break;
            case ChainClass::Kind::DuVal:
                j["kind"] = "du-val";
                j["rank"] = json_int(cls.duval_rank);
                break;
            case ChainClass::Kind::NotT:
                j["kind"] = "not-T";
                break;
            }
            std::cout << j.dump() << "\n";
        } else {
            switch (cls.kind) {
            case ChainClass::Kind::TChain:
                std::cout << "T-chain: d=" << cls.params.d.str() << " n=" << cls.params.n.str()
                          << " a=" << cls.params.a.str() << " (order " << cq.order.str()
                          << ", weight " << cq.weight.str() << "); reverse is "
                          << quotient_str(inverse_weight(cq)) << "\n";
                break;
            case ChainClass::Kind::DuVal:
                std::cout << "du Val A_" << cls.duval_rank.str() << " (order "
                          << cq.order.str() << ", weight " << cq.weight.str() << ")\n";
                break;
            case ChainClass::Kind::NotT:
                std::cout << "not a T-chain (order " << cq.order.str() << ", weight "
                          << cq.weight.str() << ")\n";
                break;
            }
        }
    });

    // ---- enumerate ----------------------------------------------------------
    auto* enumerate = app.add_subcommand(
        "enumerate", "all T-chains with d blocks and k expansion steps");
    enumerate->fallthrough();
    long long enum_d = 0, enum_k = 0;
    bool enum_dedupe = false;
    std::string enum_jsonl;
    enumerate->add_option("--d", enum_d, "invariant d = K_W^2 gain of the singularity")
        ->required();
    enumerate->add_option("--k", enum_k, "number of expansion steps (r = d + k)")->required();
    enumerate->add_flag("--dedupe", enum_dedupe, "collapse reversal pairs");
    enumerate->add_option("--jsonl", enum_jsonl, "also write one JSON record per line here");
    enumerate->callback([&] {
        std::vector<Chain> chains = enumerate_tchains(Int(enum_d), Int(enum_k));
        if (enum_dedupe) chains = dedupe_reversals(chains);
        if (!enum_jsonl.empty()) {
            std::ofstream out(enum_jsonl);
            if (!out)
                throw std::invalid_argument("cannot open '" + enum_jsonl + "' for writing");
            for (const Chain& c : chains) out << catalog_record(c, Int(enum_k)).dump() << "\n";
        }
        if (as_json) {
            json arr = json::array();
            for (const Chain& c : chains) arr.push_back(catalog_record(c, Int(enum_k)));
            std::cout << arr.dump() << "\n";
        } else {
            for (const Chain& c : chains) {
                ChainClass cls = classify(c);
                CyclicQuotient cq = hj_eval(c);
                std::cout << format_chain(c) << " d=" << cls.params.d.str()
                          << " n=" << cls.params.n.str() << " a=" << cls.params.a.str()
                          << " order=" << cq.order.str() << "\n";
            }
        }
    });

    // ---- discrepancies -------------------------------------------------------
    auto* discrep = app.add_subcommand("discrepancies",
                                       "exact discrepancies of the chain's contraction");
    discrep->fallthrough();
    std::string discrep_chain;
    discrep->add_option("chain", discrep_chain, "chain as \"[b1,b2,...]\"")->required();
    discrep->callback([&] {
        Chain chain = parse_chain(discrep_chain);
        std::vector<Rat> mu = discrepancies(chain);
        if (as_json) {
            json arr = json::array();
            for (const Rat& m : mu) arr.push_back(format_rat(m));
            json j{{"chain", json_chain(chain)}, {"discrepancies", arr}};
            std::cout << j.dump() << "\n";
        } else {
            for (size_t i = 0; i < mu.size(); ++i)
                std::cout << (i ? " " : "") << format_rat(mu[i]);
            std::cout << "\n";
        }
    });

    // ---- kwdeg ---------------------------------------------------------------
    auto* kwdeg = app.add_subcommand(
        "kwdeg", "contracted canonical degree of a curve meeting the chain");
    kwdeg->fallthrough();
    std::string kwdeg_chain, kwdeg_meets;
    long long kwdeg_kx = -1;
    kwdeg->add_option("chain", kwdeg_chain, "chain as \"[b1,b2,...]\"")->required();
    kwdeg->add_option("--meets", kwdeg_meets,
                      "incidences with the chain, e.g. 2:1,3:1 (1-based index:multiplicity)")
        ->required();
    kwdeg->add_option("--kx", kwdeg_kx, "degree of the curve against K_X (default -1)");
    kwdeg->callback([&] {
        Chain chain = parse_chain(kwdeg_chain);
        IncidenceProfile profile;
        profile.kx_degree = Int(kwdeg_kx);
        profile.meets = parse_meets(kwdeg_meets);
        Rat degree = contracted_degree(chain, profile);
        if (as_json) {
            json meets = json::array();
            for (const auto& [index, mult] : profile.meets)
                meets.push_back(json::array({json((long long)index), json_int(mult)}));
            json j{{"chain", json_chain(chain)},
                   {"kx", json_int(profile.kx_degree)},
                   {"meets", meets},
                   {"degree", format_rat(degree)}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << format_rat(degree) << "\n";
        }
    });

    // ---- bound ----------------------------------------------------------------
    auto* bound = app.add_subcommand(
        "bound", "length bounds on r-d; add --chain to audit a full scenario");
    bound->fallthrough();
    long long bound_kappa = -1, bound_kw2 = 0, bound_ks2 = 0, bound_lambda = 0;
    long long bound_s = 0, bound_gamma = -3, bound_m = 0;
    std::string bound_diagram = "none", bound_chain, bound_name = "scenario";
    bool bound_not_nef_flag = false, bound_tight = false;
    bound->add_option("--kappa", bound_kappa, "Kodaira dimension 0|1|2 (K_S nef)")
        ->check(CLI::Range(0, 2));
    bound->add_option("--kw2", bound_kw2, "K_W^2 after contraction")->required();
    bound->add_option("--ks2", bound_ks2, "K_S^2 of the minimal-model stage")->required();
    bound->add_option("--lambda", bound_lambda, "canonical degree of the chain's image");
    bound->add_option("--diagram", bound_diagram, "long diagram shape: none|I|II");
    bound->add_option("--s", bound_s, "type II only: length of the leading (-2)-block");
    bound->add_option("--gamma", bound_gamma,
                      "type II only: self-intersection next to the block (default -3)");
    bound->add_flag("--not-nef", bound_not_nef_flag, "drop the nef assumption on K_S");
    bound->add_option("--chain", bound_chain, "audit this chain as a full scenario");
    bound->add_option("--m", bound_m, "blow-ups used by the scenario (default: inferred)");
    bound->add_option("--name", bound_name, "scenario name used in reports");
    bound->add_flag("--tight", bound_tight, "assert r-d attains the applicable bound");
    bound->callback([&] {
        if (bound_not_nef_flag && bound_kappa >= 0)
            throw std::invalid_argument("--not-nef contradicts --kappa");
        if (!bound_not_nef_flag && bound_kappa < 0)
            throw std::invalid_argument("--kappa 0|1|2 is required unless --not-nef");
        DiagramKind diagram = make_diagram(bound_diagram, bound_s, bound_gamma);

        if (!bound_chain.empty()) {
            ScenarioRecord rec;
            rec.name = bound_name;
            rec.ks_nef = !bound_not_nef_flag;
            if (rec.ks_nef) rec.kappa = static_cast<Kappa>(bound_kappa);
            rec.ks2 = Int(bound_ks2);
            rec.kw2 = Int(bound_kw2);
            rec.lambda = Int(bound_lambda);
            rec.diagram = diagram;
            rec.chain = parse_chain(bound_chain);
            rec.tight = bound_tight;
            if (bound->count("--m")) {
                rec.m = Int(bound_m);
            } else {
                ChainClass cls = classify(rec.chain);
                if (cls.is_t())
                    rec.m = rec.ks2 + Int(rec.chain.size()) - cls.params.d + 1 - rec.kw2;
            }
            ScenarioReport rep = check_scenario(rec);
            if (as_json) {
                std::cout << scenario_json(rec, rep).dump() << "\n";
            } else {
                for (const CheckLine& line : rep.lines)
                    std::cout << line.check << ": " << line.detail
                              << (line.pass ? "" : " FAIL") << "\n";
                std::cout << (rep.pass ? "scenario: ok" : "scenario: FAIL") << "\n";
            }
            code = rep.pass ? 0 : 1;
            return;
        }

        Int delta_k2 = Int(bound_kw2) - Int(bound_ks2);
        Int delta = delta_of(diagram);
        std::vector<std::pair<std::string, Int>> uppers;
        std::vector<std::pair<std::string, Int>> lowers;
        uppers.push_back(
            {"unconditional", bound_unconditional(delta_k2, delta, Int(bound_lambda))});
        if (bound_not_nef_flag) {
            uppers.push_back(
                {"not-nef", bound_not_nef(delta_k2, Int(bound_lambda), diagram.type)});
        } else {
            Kappa kappa = static_cast<Kappa>(bound_kappa);
            uppers.push_back({"nef-blanket", bound_nef(kappa, Int(bound_kw2), Int(bound_ks2))});
            switch (diagram.type) {
            case DiagramKind::Type::NoLong:
                uppers.push_back(
                    {"no-long", bound_no_long(kappa, Int(bound_kw2), Int(bound_ks2))});
                break;
            case DiagramKind::Type::TypeI:
                uppers.push_back(
                    {"type-i", bound_type_i(kappa, Int(bound_kw2), Int(bound_ks2))});
                break;
            case DiagramKind::Type::TypeII:
                lowers.push_back({"type-ii-lower", kappa == Kappa::Two
                                                       ? Int(2 * bound_s + 1)
                                                       : Int(2 * bound_s)});
                break;
            }
        }
        if (as_json) {
            json ledger = json::array();
            for (const auto& [name, value] : uppers)
                ledger.push_back(json{{"name", name}, {"relation", "<="}, {"value", json_int(value)}});
            for (const auto& [name, value] : lowers)
                ledger.push_back(json{{"name", name}, {"relation", ">="}, {"value", json_int(value)}});
            std::cout << json{{"bounds", ledger}}.dump() << "\n";
        } else {
            for (const auto& [name, value] : uppers)
                std::cout << "r-d <= " << value.str() << " (" << name << ")\n";
            for (const auto& [name, value] : lowers)
                std::cout << "r-d >= " << value.str() << " (" << name << ")\n";
        }
    });

    // ---- verify ---------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "batch verification suites");
    verify->fallthrough();
    verify->require_subcommand(1);

    auto* vfib = verify->add_subcommand(
        "fibonacci", "maximal index of enumerated chains against the Fibonacci ceiling");
    vfib->fallthrough();
    long long vfib_max_d = 4, vfib_max_k = 12;
    vfib->add_option("--max-d", vfib_max_d, "largest d to sweep (default 4)");
    vfib->add_option("--max-k", vfib_max_k, "largest k to sweep (default 12)");
    vfib->callback([&] {
        bool all = true;
        json rows = json::array();
        for (long long d = 1; d <= vfib_max_d; ++d) {
            for (long long k = 0; k <= vfib_max_k; ++k) {
                FibonacciReport rep = verify_fibonacci_bound(Int(d), Int(k));
                all = all && rep.pass();
                if (as_json) {
                    rows.push_back(json{{"d", json_int(rep.d)},
                                        {"k", json_int(rep.k)},
                                        {"max_n", json_int(rep.max_n)},
                                        {"fib", json_int(rep.fib)},
                                        {"bound_ok", rep.bound_ok},
                                        {"equality", rep.equality},
                                        {"form_ok", rep.form_ok},
                                        {"pass", rep.pass()}});
                } else {
                    std::cout << "d=" << d << " k=" << std::setw(2) << k
                              << "  max_n=" << std::setw(6) << rep.max_n.str()
                              << "  F=" << std::setw(6) << rep.fib.str()
                              << (rep.bound_ok ? "  bound=ok" : "  bound=FAIL")
                              << (rep.equality ? " equality=yes" : " equality=no")
                              << (rep.form_ok ? " form=ok" : " form=FAIL") << "\n";
                }
            }
        }
        if (as_json) {
            json j{{"verify", "fibonacci"},
                   {"max_d", vfib_max_d},
                   {"max_k", vfib_max_k},
                   {"rows", rows},
                   {"pass", all}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << (all ? "fibonacci: ok" : "fibonacci: FAIL") << "\n";
        }
        code = all ? 0 : 1;
    });

    auto* vid = verify->add_subcommand(
        "identities", "length, discrepancy and structural identities over the enumeration");
    vid->fallthrough();
    long long vid_max_d = 4, vid_max_k = 8;
    vid->add_option("--max-d", vid_max_d, "largest d to sweep (default 4)");
    vid->add_option("--max-k", vid_max_k, "largest k to sweep (default 8)");
    vid->callback([&] {
        long long canonical = 0, ends = 0, both_ends = 0, structural = 0, reversal = 0;
        bool all = true;
        auto note = [&all](bool ok) {
            if (!ok) all = false;
            return ok;
        };
        for (long long d = 1; d <= vid_max_d; ++d) {
            for (long long k = 0; k <= vid_max_k; ++k) {
                for (const Chain& c : enumerate_tchains(Int(d), Int(k))) {
                    ChainClass cls = classify(c);
                    Int r = c.size();
                    const Int& n = cls.params.n;
                    const Int& a = cls.params.a;
                    if (note(chain_canonical_degree(c) == r - Int(d) + 2)) ++canonical;

                    std::vector<Rat> mu = discrepancies(c);
                    bool end_ok = mu.front() == Rat(a - n, n) && mu.back() == Rat(-a, n);
                    if (note(end_ok)) ++ends;

                    IncidenceProfile profile;
                    if (c.size() == 1)
                        profile.meets = {{1, 2}};
                    else
                        profile.meets = {{1, 1}, {c.size(), 1}};
                    if (note(contracted_degree(c, profile) == 0)) ++both_ends;

                    StructuralReport sr = structural_identity_check(c);
                    if (sr.applicable && note(sr.pass)) ++structural;

                    if (note(classify(reverse_chain(c)) ==
                             ChainClass::t_chain({Int(d), n, n - a})))
                        ++reversal;
                }
            }
        }
        std::vector<std::pair<std::string, long long>> counts{
            {"canonical-degree", canonical},
            {"end-discrepancies", ends},
            {"both-ends-contraction", both_ends},
            {"structural-identity", structural},
            {"reversal-class", reversal}};
        if (as_json) {
            json checks = json::array();
            for (const auto& [name, count] : counts)
                checks.push_back(json{{"identity", name}, {"chains", count}});
            json j{{"verify", "identities"},
                   {"max_d", vid_max_d},
                   {"max_k", vid_max_k},
                   {"checks", checks},
                   {"pass", all}};
            std::cout << j.dump() << "\n";
        } else {
            for (const auto& [name, count] : counts)
                std::cout << name << ": " << count << " chains ok\n";
            std::cout << (all ? "identities: ok" : "identities: FAIL") << "\n";
        }
        code = all ? 0 : 1;
    });

    auto* vfix = verify->add_subcommand(
        "fixtures", "classification scenarios, quoted chains and construction documents");
    vfix->fallthrough();
    vfix->callback([&] {
        bool all = true;
        json scenarios = json::array();
        json chains = json::array();
        json constructions = json::array();

        for (const ScenarioRecord& rec : classification_fixtures()) {
            ScenarioReport rep = check_scenario(rec);
            if (!rep.pass) all = false;
            if (as_json)
                scenarios.push_back(scenario_json(rec, rep));
            else
                print_scenario_text(rec, rep, std::cout);
        }

        for (const NamedChain& named : classification_chains()) {
            bool ok = classify(named.chain) == ChainClass::t_chain(named.params);
            if (!ok) all = false;
            if (as_json) {
                chains.push_back(json{{"name", named.name},
                                      {"chain", json_chain(named.chain)},
                                      {"d", json_int(named.params.d)},
                                      {"n", json_int(named.params.n)},
                                      {"a", json_int(named.params.a)},
                                      {"pass", ok}});
            } else {
                std::cout << named.name << ": " << format_chain(named.chain) << " = T(d="
                          << named.params.d.str() << ",n=" << named.params.n.str()
                          << ",a=" << named.params.a.str() << ")" << (ok ? " ok" : " FAIL")
                          << "\n";
            }
        }

        for (const auto& path : fixture_documents()) {
            std::string name = path.filename().string();
            bool ok = true;
            json lines = json::array();
            std::string failure;
            try {
                ConstructionDoc doc = load_construction(path.string());
                ReplayReport rep = replay(doc);
                name = rep.name;
                ok = rep.pass;
                for (const ReplayLine& line : rep.lines) {
                    lines.push_back(replay_line_json(line));
                    if (!line.pass && failure.empty())
                        failure = line.check + ": " + line.detail;
                }
            } catch (const std::exception& e) {
                ok = false;
                failure = e.what();
                lines.push_back(json{{"check", "replay"}, {"detail", failure}, {"pass", false}});
            }
            if (!ok) all = false;
            if (as_json) {
                constructions.push_back(json{{"name", name}, {"lines", lines}, {"pass", ok}});
            } else {
                std::cout << name << ": replay" << (ok ? " ok" : " FAIL [" + failure + "]")
                          << "\n";
            }
        }

        if (as_json) {
            json j{{"verify", "fixtures"},
                   {"scenarios", scenarios},
                   {"chains", chains},
                   {"constructions", constructions},
                   {"pass", all}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << (all ? "fixtures: ok" : "fixtures: FAIL") << "\n";
        }
        code = all ? 0 : 1;
    });

    // ---- replay -----------------------------------------------------------------
    auto* replay_cmd = app.add_subcommand("replay", "replay one construction document");
    replay_cmd->fallthrough();
    std::string replay_path;
    replay_cmd->add_option("file", replay_path, "construction document (JSON)")
        ->required();
    replay_cmd->callback([&] {
        ConstructionDoc doc = load_construction(replay_path);
        code = do_replay_report(replay(doc), as_json, std::cout);
    });

    // ---- catalog ------------------------------------------------------------------
    auto* catalog = app.add_subcommand("catalog",
                                       "write the (d,k) enumeration as JSON lines");
    catalog->fallthrough();
    long long cat_d = 0, cat_k = 0;
    std::string cat_out;
    catalog->add_option("--d", cat_d, "invariant d")->required();
    catalog->add_option("--k", cat_k, "number of expansion steps")->required();
    catalog->add_option("--out", cat_out, "output path, or - for standard output")
        ->required();
    catalog->callback([&] {
        std::vector<Chain> chains = enumerate_tchains(Int(cat_d), Int(cat_k));
        if (cat_out == "-") {
            for (const Chain& c : chains) std::cout << catalog_record(c, Int(cat_k)).dump() << "\n";
            return;
        }
        std::ofstream out(cat_out);
        if (!out) throw std::invalid_argument("cannot open '" + cat_out + "' for writing");
        for (const Chain& c : chains) out << catalog_record(c, Int(cat_k)).dump() << "\n";
        if (as_json) {
            json j{{"count", (long long)chains.size()}, {"path", cat_out}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "wrote " << chains.size() << " records to " << cat_out << "\n";
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return code;
}

} // namespace tsing
