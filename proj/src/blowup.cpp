#include "tsing/blowup.hpp"

#include "tsing/invariants.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace tsing {

using json = nlohmann::ordered_json;

namespace {

std::pair<std::string, std::string> key(const std::string& a, const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

bool is_auto_label(const std::string& label) {
    static const std::regex pattern("E[0-9]+");
    return std::regex_match(label, pattern);
}

} // namespace

BlowupConfig BlowupConfig::init(Int ks2, const std::vector<CurveDecl>& curves,
                                const std::vector<PairDecl>& pairings) {
    BlowupConfig cfg;
    cfg.ks2_ = std::move(ks2);
    for (const CurveDecl& decl : curves) {
        if (decl.label.empty())
            throw std::invalid_argument("curve with empty label");
        if (is_auto_label(decl.label))
            throw std::invalid_argument("label '" + decl.label +
                                        "' is reserved for exceptional curves");
        if (cfg.decls_.count(decl.label))
            throw std::invalid_argument("duplicate curve label '" + decl.label + "'");
        if (decl.nodes < 0)
            throw std::invalid_argument("negative node count on '" + decl.label + "'");
        // rational curve with that many simple nodes
        if (decl.self + decl.k_dot != -2 + 2 * decl.nodes)
            throw std::invalid_argument("curve '" + decl.label +
                                        "' violates adjunction: self + k_dot != -2 + 2*nodes");
        cfg.decls_[decl.label] = decl;
        Curve c;
        c.base = decl.label;
        c.nodes = decl.nodes;
        cfg.curves_[decl.label] = std::move(c);
        cfg.order_.push_back(decl.label);
    }
    for (const PairDecl& pd : pairings) {
        if (!cfg.decls_.count(pd.a) || !cfg.decls_.count(pd.b))
            throw std::invalid_argument("intersection references unknown curve '" + pd.a +
                                        "'/'" + pd.b + "'");
        if (pd.a == pd.b)
            throw std::invalid_argument("self-pairing listed for '" + pd.a + "'");
        if (pd.mult < 1)
            throw std::invalid_argument("intersection multiplicity must be >= 1");
        auto k = key(pd.a, pd.b);
        if (cfg.declared_pairs_.count(k))
            throw std::invalid_argument("duplicate intersection for '" + pd.a + "','" + pd.b +
                                        "'");
        cfg.declared_pairs_[k] = pd.mult;
    }
    return cfg;
}

const BlowupConfig::Curve& BlowupConfig::at(const std::string& label) const {
    auto it = curves_.find(label);
    if (it == curves_.end())
        throw std::invalid_argument("unknown curve '" + label + "'");
    return it->second;
}

Int BlowupConfig::base_pairing(const std::string& a, const std::string& b) const {
    auto it = declared_pairs_.find(key(a, b));
    return it == declared_pairs_.end() ? Int(0) : it->second;
}

Int BlowupConfig::pairing(const std::string& a, const std::string& b) const {
    const Curve& ca = at(a);
    const Curve& cb = at(b);
    if (a == b) return self(a);
    Int total = 0;
    if (!ca.base.empty() && !cb.base.empty()) total = base_pairing(ca.base, cb.base);
    size_t common = std::min(ca.ecoef.size(), cb.ecoef.size());
    for (size_t i = 0; i < common; ++i) total -= ca.ecoef[i] * cb.ecoef[i];
    return total;
}

Int BlowupConfig::self(const std::string& label) const {
    const Curve& c = at(label);
    Int total = 0;
    if (!c.base.empty()) total = decls_.at(c.base).self;
    for (const Int& coef : c.ecoef) total -= coef * coef;
    return total;
}

Int BlowupConfig::k_degree(const std::string& label) const {
    const Curve& c = at(label);
    Int total = 0;
    if (!c.base.empty()) total = decls_.at(c.base).k_dot;
    for (const Int& coef : c.ecoef) total -= coef;
    return total;
}

Int BlowupConfig::nodes(const std::string& label) const { return at(label).nodes; }

bool BlowupConfig::has_curve(const std::string& label) const {
    return curves_.count(label) != 0;
}

void BlowupConfig::blow_up(const BlowupStep& step) {
    size_t want = step.op == BlowupStep::Op::Intersection ? 2 : 1;
    if (step.args.size() != want)
        throw std::invalid_argument("step expects " + std::to_string(want) + " argument(s)");
    for (const std::string& label : step.args) at(label); // must exist
    // validate the geometric precondition before touching any state
    if (step.op == BlowupStep::Op::Intersection) {
        if (step.args[0] == step.args[1])
            throw std::invalid_argument("intersection step needs two distinct curves");
        if (pairing(step.args[0], step.args[1]) < 1)
            throw std::domain_error("curves '" + step.args[0] + "' and '" + step.args[1] +
                                    "' do not meet; nothing to blow up");
    }
    if (step.op == BlowupStep::Op::Node && at(step.args[0]).nodes < 1)
        throw std::domain_error("curve '" + step.args[0] + "' has no node to blow up");

    m_ += 1;
    size_t slot = size_t(m_) - 1;
    auto bump = [&](const std::string& label, int mult) {
        Curve& c = curves_[label];
        if (c.ecoef.size() < slot + 1) c.ecoef.resize(slot + 1, Int(0));
        c.ecoef[slot] -= mult;
    };

    switch (step.op) {
    case BlowupStep::Op::Free:
        bump(step.args[0], 1);
        break;
    case BlowupStep::Op::Intersection:
        bump(step.args[0], 1);
        bump(step.args[1], 1);
        break;
    case BlowupStep::Op::Node:
        curves_[step.args[0]].nodes -= 1;
        bump(step.args[0], 2);
        break;
    }

    Curve exc;
    exc.ecoef.resize(slot + 1, Int(0));
    exc.ecoef[slot] = 1;
    std::string label = "E" + m_.str();
    curves_[label] = std::move(exc);
    order_.push_back(label);
}

Int BlowupConfig::pullback_pairing(size_t i, const std::vector<std::string>& labels) const {
    if (i < 1 || Int(i) > m_)
        throw std::invalid_argument("pullback index " + std::to_string(i) + " out of range");
    Int total = 0;
    for (const std::string& label : labels) {
        const Curve& c = at(label);
        if (c.ecoef.size() >= i) total -= c.ecoef[i - 1];
    }
    return total;
}

Chain BlowupConfig::extract_chain(const std::vector<std::string>& order) const {
    if (order.empty()) throw std::invalid_argument("empty chain order");
    for (const std::string& label : order) at(label);
    for (size_t i = 0; i < order.size(); ++i) {
        if (nodes(order[i]) != 0)
            throw std::domain_error("curve '" + order[i] + "' still carries a node");
        Int s = self(order[i]);
        if (s > -2)
            throw std::domain_error("curve '" + order[i] + "' has self-intersection " +
                                    s.str() + " > -2");
        for (size_t j = i + 1; j < order.size(); ++j) {
            Int p = pairing(order[i], order[j]);
            Int expected = (j == i + 1) ? 1 : 0;
            if (p != expected)
                throw std::domain_error("curves '" + order[i] + "' and '" + order[j] +
                                        "' meet " + p.str() + " times, expected " +
                                        expected.str());
        }
    }
    Chain chain;
    chain.reserve(order.size());
    for (const std::string& label : order) chain.push_back(-self(label));
    return chain;
}

// ---- document parsing ----------------------------------------------------

namespace {

BlowupStep::Op parse_op(const std::string& op) {
    if (op == "free") return BlowupStep::Op::Free;
    if (op == "intersection") return BlowupStep::Op::Intersection;
    if (op == "node") return BlowupStep::Op::Node;
    throw std::invalid_argument("unknown step op '" + op + "'");
}

Int get_int(const json& j, const std::string& field) {
    if (!j.contains(field)) throw std::invalid_argument("missing field '" + field + "'");
    if (!j[field].is_number_integer())
        throw std::invalid_argument("field '" + field + "' must be an integer");
    return Int(j[field].get<long long>());
}

Chain chain_from_json(const json& arr) {
    if (!arr.is_array() || arr.empty())
        throw std::invalid_argument("chain must be a nonempty array");
    Chain out;
    for (const auto& v : arr) {
        if (!v.is_number_integer())
            throw std::invalid_argument("chain entries must be integers");
        out.push_back(Int(v.get<long long>()));
    }
    return out;
}

Rat rat_from_string(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(text));
        return Rat(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational '" + text + "'");
    }
}

} // namespace

ConstructionDoc parse_construction(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("bad construction JSON: ") + e.what());
    }
    ConstructionDoc doc;
    doc.name = j.value("name", "");
    doc.ks2 = get_int(j, "ks2");
    if (!j.contains("curves") || !j["curves"].is_array())
        throw std::invalid_argument("missing 'curves' array");
    for (const auto& c : j["curves"]) {
        CurveDecl decl;
        decl.label = c.value("label", "");
        decl.self = get_int(c, "self");
        decl.k_dot = get_int(c, "k_dot");
        decl.nodes = get_int(c, "nodes");
        doc.curves.push_back(std::move(decl));
    }
    for (const auto& p : j.value("intersections", json::array())) {
        PairDecl pd;
        pd.a = p.value("a", "");
        pd.b = p.value("b", "");
        pd.mult = get_int(p, "mult");
        doc.intersections.push_back(std::move(pd));
    }
    if (!j.contains("pi_c") || !j["pi_c"].is_array())
        throw std::invalid_argument("missing 'pi_c' array");
    for (const auto& label : j["pi_c"]) doc.pi_c.push_back(label.get<std::string>());
    for (const auto& s : j.value("steps", json::array())) {
        BlowupStep step;
        step.op = parse_op(s.value("op", ""));
        for (const auto& a : s.value("args", json::array()))
            step.args.push_back(a.get<std::string>());
        doc.steps.push_back(std::move(step));
    }
    if (!j.contains("chain_order") || !j["chain_order"].is_array())
        throw std::invalid_argument("missing 'chain_order' array");
    for (const auto& label : j["chain_order"])
        doc.chain_order.push_back(label.get<std::string>());
    if (j.contains("designated_f") && !j["designated_f"].is_null())
        doc.designated_f = j["designated_f"].get<std::string>();
    doc.notes = j.value("notes", "");

    if (j.contains("expect")) {
        const json& e = j["expect"];
        if (e.contains("m")) doc.expect_m = get_int(e, "m");
        if (e.contains("chain")) doc.expect_chain = chain_from_json(e["chain"]);
        if (e.contains("d")) {
            doc.expect_class = TParams{get_int(e, "d"), get_int(e, "n"), get_int(e, "a")};
        }
        if (e.contains("kw2")) doc.expect_kw2 = get_int(e, "kw2");
        if (e.contains("lambda")) doc.expect_lambda = get_int(e, "lambda");
        if (e.contains("pairing_total")) doc.expect_pairing_total = get_int(e, "pairing_total");
        if (e.contains("designated_degree"))
            doc.expect_designated_degree =
                rat_from_string(e["designated_degree"].get<std::string>());
    }
    return doc;
}

ConstructionDoc load_construction(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open construction document " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    ConstructionDoc doc = parse_construction(buffer.str());
    if (doc.name.empty()) doc.name = path;
    return doc;
}

// ---- replay ---------------------------------------------------------------

namespace {

ReplayLine line_eq_any(const std::string& check, const std::string& got,
                       const std::string& want) {
    return {check, got + (got == want ? " as expected" : " but expected " + want),
            got == want};
}

} // namespace

ReplayReport replay(const ConstructionDoc& doc) {
    ReplayReport rep;
    rep.name = doc.name;

    BlowupConfig cfg = BlowupConfig::init(doc.ks2, doc.curves, doc.intersections);
    for (const std::string& label : doc.pi_c) rep.lambda += cfg.k_degree(label);
    for (const BlowupStep& step : doc.steps) cfg.blow_up(step);
    rep.m = cfg.m();
    rep.chain = cfg.extract_chain(doc.chain_order);
    rep.cls = classify(rep.chain);

    auto push = [&rep](ReplayLine line) {
        if (!line.pass) rep.pass = false;
        rep.lines.push_back(std::move(line));
    };

    if (doc.expect_m)
        push(line_eq_any("blow-up-count", rep.m.str(), doc.expect_m->str()));
    if (doc.expect_chain)
        push(line_eq_any("chain", format_chain(rep.chain), format_chain(*doc.expect_chain)));
    push({"chain-is-T",
          rep.cls.is_t() ? "recognized with d=" + rep.cls.params.d.str() : "not a T-chain",
          rep.cls.is_t()});
    if (doc.expect_lambda)
        push(line_eq_any("lambda", rep.lambda.str(), doc.expect_lambda->str()));
    if (!rep.cls.is_t()) return rep; // nothing else is well defined

    if (doc.expect_class) {
        bool ok = rep.cls.params == *doc.expect_class;
        push({"class",
              "d=" + rep.cls.params.d.str() + " n=" + rep.cls.params.n.str() +
                  " a=" + rep.cls.params.a.str(),
              ok});
    }

    Int r = rep.chain.size();
    const Int& d = rep.cls.params.d;
    rep.kw2 = kw2_from(cfg.ks2(), rep.m, r, d);
    if (doc.expect_kw2)
        push(line_eq_any("kw2", rep.kw2.str(), doc.expect_kw2->str()));

    // independent route to kw2: subtract the discrepancy correction from kx2
    std::vector<Rat> mu = discrepancies(rep.chain);
    Rat direct = Rat(cfg.kx2());
    for (size_t i = 0; i < doc.chain_order.size(); ++i)
        direct -= mu[i] * Rat(cfg.k_degree(doc.chain_order[i]));
    push({"kw2-direct", format_rat(direct) + " vs " + rep.kw2.str(),
          direct == Rat(rep.kw2)});

    Int total = 0;
    bool floor_ok = true;
    std::string floor_detail;
    for (size_t i = 1; Int(i) <= rep.m; ++i) {
        Int dot = cfg.pullback_pairing(i, doc.chain_order);
        total += dot;
        if (dot < 1) {
            floor_ok = false;
            floor_detail = "pullback " + std::to_string(i) + " meets the chain " + dot.str() +
                           " times";
        }
    }
    Int predicted = exceptional_pairing_total(r, d, rep.lambda);
    push({"pairing-total", total.str() + " vs r-d+2-lambda = " + predicted.str(),
          total == predicted});
    push({"pairing-floor", floor_ok ? "every pullback meets the chain" : floor_detail,
          floor_ok});
    push({"incidence-floor", "m+1 = " + Int(rep.m + 1).str() + " vs total " + total.str(),
          rep.m + 1 <= total});
    if (doc.expect_pairing_total)
        push(line_eq_any("pairing-total-expected", total.str(),
                         doc.expect_pairing_total->str()));

    if (doc.designated_f) {
        const std::string& f = *doc.designated_f;
        bool minus_one = cfg.self(f) == -1 && cfg.k_degree(f) == -1;
        push({"designated-is-minus-one",
              f + ": self=" + cfg.self(f).str() + " k=" + cfg.k_degree(f).str(), minus_one});
        IncidenceProfile profile;
        profile.kx_degree = cfg.k_degree(f);
        for (size_t i = 0; i < doc.chain_order.size(); ++i) {
            Int mult = cfg.pairing(f, doc.chain_order[i]);
            if (mult > 0) profile.meets.push_back({i + 1, mult});
        }
        Rat degree = contracted_degree(rep.chain, profile);
        rep.designated_degree = degree;
        push({"designated-degree", format_rat(degree), degree > 0});
        if (doc.expect_designated_degree)
            push(line_eq_any("designated-degree-expected", format_rat(degree),
                             format_rat(*doc.expect_designated_degree)));
    }

    return rep;
}

std::string default_fixture_dir() {
    if (const char* env = std::getenv("TSING_FIXTURES"); env && *env) return env;
#ifdef TSING_DEFAULT_FIXTURES
    return TSING_DEFAULT_FIXTURES;
#else
    return "fixtures";
#endif
}

} // namespace tsing
