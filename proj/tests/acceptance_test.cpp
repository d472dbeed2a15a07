// Acceptance gate: eight end-to-end checks, one printed line each.
// Exit status is the number of failing checks (0 = all green).

#include "tsing/blowup.hpp"
#include "tsing/bounds.hpp"
#include "tsing/chain.hpp"
#include "tsing/discrepancy.hpp"
#include "tsing/invariants.hpp"
#include "tsing/tchain.hpp"

#include <boost/integer/common_factor.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace tsing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

long long ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
}

// ---- criterion 1: Fibonacci ceiling over the enumeration -------------------

Outcome criterion_fibonacci() {
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    for (int d = 1; d <= 4; ++d) {
        for (int k = 0; k <= 12; ++k) {
            FibonacciReport rep = verify_fibonacci_bound(d, k);
            if (!rep.bound_ok)
                out.fail("d=" + std::to_string(d) + " k=" + std::to_string(k) +
                         ": max n " + rep.max_n.str() + " exceeds F=" + rep.fib.str());
            if (d == 1 && !rep.equality)
                out.fail("d=1 k=" + std::to_string(k) + ": ceiling not attained");
            if (d == 1 && !rep.form_ok)
                out.fail("d=1 k=" + std::to_string(k) +
                         ": a maximizer is not [3..3,5,3..3,2] up to reversal");
        }
    }
    long long elapsed = ms_since(start);
    if (elapsed >= 5000) out.fail("took " + std::to_string(elapsed) + " ms (limit 5000)");
    if (out.pass)
        out.detail = "max n <= F_k for d<=4, k<=12; equality and maximizer form at d=1 (" +
                     std::to_string(elapsed) + " ms)";
    return out;
}

// ---- criterion 2: round trips ----------------------------------------------

Outcome criterion_round_trips() {
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    long long expansions = 0;
    for (long long m = 2; m <= 2000; ++m) {
        for (long long q = 1; q < m; ++q) {
            if (boost::integer::gcd(m, q) != 1) continue;
            CyclicQuotient cq{m, q};
            CyclicQuotient back = hj_eval(hj_expand(cq));
            ++expansions;
            if (!(back == cq)) {
                out.fail("hj round trip broke at " + std::to_string(m) + "/" +
                         std::to_string(q));
                break;
            }
        }
        if (!out.pass) break;
    }
    long long elapsed = ms_since(start);
    if (elapsed >= 5000) out.fail("took " + std::to_string(elapsed) + " ms (limit 5000)");

    long long classified = 0;
    for (long long d = 1; d <= 5 && out.pass; ++d) {
        for (long long n = 2; n <= 50 && out.pass; ++n) {
            for (long long a = 1; a < n; ++a) {
                if (boost::integer::gcd(n, a) != 1) continue;
                TParams p{d, n, a};
                ++classified;
                if (!(classify(chain_of(p)) == ChainClass::t_chain(p))) {
                    out.fail("classify(chain_of) broke at d=" + std::to_string(d) +
                             " n=" + std::to_string(n) + " a=" + std::to_string(a));
                    break;
                }
            }
        }
    }
    if (out.pass)
        out.detail = std::to_string(expansions) + " expansions round-trip in " +
                     std::to_string(elapsed) + " ms; " + std::to_string(classified) +
                     " parameter triples invert";
    return out;
}

// ---- criteria 3 and 4: identities over the enumeration ---------------------

Outcome criterion_end_discrepancies() {
    Outcome out;
    long long chains = 0;
    for (int d = 1; d <= 4 && out.pass; ++d) {
        for (int k = 0; k <= 10 && out.pass; ++k) {
            for (const Chain& c : enumerate_tchains(d, k)) {
                ChainClass cls = classify(c);
                const Int& n = cls.params.n;
                const Int& a = cls.params.a;
                std::vector<Rat> mu = discrepancies(c);
                ++chains;
                if (mu.front() != Rat(a - n, n) || mu.back() != Rat(-a, n)) {
                    out.fail("end formula broke on " + format_chain(c));
                    break;
                }
                IncidenceProfile ends;
                if (c.size() == 1)
                    ends.meets = {{1, 2}};
                else
                    ends.meets = {{1, 1}, {c.size(), 1}};
                if (contracted_degree(c, ends) != 0) {
                    out.fail("both-ends contraction nonzero on " + format_chain(c));
                    break;
                }
            }
        }
    }
    if (out.pass)
        out.detail = "ends carry -1+a/n and -1+(n-a)/n on " + std::to_string(chains) +
                     " chains; both-ends (-1)-curves contract to degree 0";
    return out;
}

Outcome criterion_structural_identity() {
    Outcome out;
    long long applicable = 0, chains = 0;
    for (int d = 1; d <= 4 && out.pass; ++d) {
        for (int k = 0; k <= 10 && out.pass; ++k) {
            for (const Chain& c : enumerate_tchains(d, k)) {
                ++chains;
                StructuralReport rep = structural_identity_check(c);
                if (!rep.applicable) continue;
                ++applicable;
                if (!rep.pass) {
                    out.fail("identity broke on " + format_chain(c) + ": lhs " +
                             rep.lhs.str() + " vs rhs " + rep.rhs.str());
                    break;
                }
            }
        }
    }
    if (applicable == 0) out.fail("no chain of matching shape was enumerated");
    if (out.pass)
        out.detail = "sum of middle excesses = r-s-d+2 on " + std::to_string(applicable) +
                     " of " + std::to_string(chains) + " enumerated chains";
    return out;
}

// ---- criterion 5: classification fixtures ----------------------------------

Outcome criterion_classification() {
    Outcome out;
    std::map<std::string, Int> stated_r{
        {"k0-A", 5},      {"order-121", 5}, {"k1-A", 3},     {"k2-A", 2},
        {"k2-B-d4", 5},   {"k2-B-d6", 7},   {"k2-B-d8", 9},  {"k2-B-d10", 11},
        {"k2-C", 5},      {"k2-D", 5},      {"notnef-septic", 9},
        {"order-10000", 11}};
    std::map<std::string, Int> stated_d{
        {"k0-A", 1},      {"order-121", 1}, {"k1-A", 1},     {"k2-A", 1},
        {"k2-B-d4", 4},   {"k2-B-d6", 6},   {"k2-B-d8", 8},  {"k2-B-d10", 10},
        {"k2-C", 1},      {"k2-D", 1},      {"notnef-septic", 1},
        {"order-10000", 1}};
    // template families: r = 2s+1, d = 1 at the stated parameters
    for (int i = 1; i <= 4; ++i) {
        int s0 = 2 * i, s1 = 2 * i + 1;
        stated_r["k0-C-k" + std::to_string(i)] = 2 * s0 + 1;
        stated_d["k0-C-k" + std::to_string(i)] = 1;
        stated_r["k1-B-k" + std::to_string(i)] = 2 * s1 + 1;
        stated_d["k1-B-k" + std::to_string(i)] = 1;
    }

    size_t named = 0;
    for (const NamedChain& row : classification_chains()) {
        ++named;
        ChainClass cls = classify(row.chain);
        if (!cls.is_t()) {
            out.fail(row.name + ": not recognized as a T-chain");
            continue;
        }
        auto it_r = stated_r.find(row.name);
        auto it_d = stated_d.find(row.name);
        if (it_r == stated_r.end() || it_d == stated_d.end()) {
            out.fail(row.name + ": no stated (r,d) on file");
            continue;
        }
        if (Int(row.chain.size()) != it_r->second || cls.params.d != it_d->second)
            out.fail(row.name + ": got (r,d)=(" + std::to_string(row.chain.size()) + "," +
                     cls.params.d.str() + ")");
    }
    if (named != stated_r.size()) out.fail("fixture list and stated (r,d) table diverge");

    size_t scenarios = 0, tight = 0;
    for (const ScenarioRecord& rec : classification_fixtures()) {
        ++scenarios;
        ChainClass cls = classify(rec.chain);
        Int r = rec.chain.size();
        if (kw2_from(rec.ks2, rec.m, r, cls.params.d) != rec.kw2)
            out.fail(rec.name + ": kw2 bookkeeping broken");
        if (rec.ks_nef && rec.tight) {
            ++tight;
            if (r - cls.params.d != bound_nef(*rec.kappa, rec.kw2, rec.ks2))
                out.fail(rec.name + ": claimed equality is not tight");
        }
    }
    if (out.pass)
        out.detail = std::to_string(named) + " quoted chains carry their stated (r,d); kw2 "
                     "reproduced on " +
                     std::to_string(scenarios) + " scenarios; " + std::to_string(tight) +
                     " equality cases tight";
    return out;
}

// ---- criterion 6: construction replay ---------------------------------------

Outcome criterion_replay() {
    Outcome out;
    const std::array<const char*, 5> required{"kappa1A.json", "kappa0A.json", "kappa2A.json",
                                              "kappa2C.json", "kappa2D.json"};
    namespace fs = std::filesystem;
    fs::path dir = default_fixture_dir();
    for (const char* file : required) {
        fs::path path = dir / file;
        if (!fs::exists(path)) {
            out.fail(std::string(file) + " missing");
            continue;
        }
        ConstructionDoc doc = load_construction(path.string());
        ReplayReport rep = replay(doc);
        for (const ReplayLine& line : rep.lines)
            if (!line.pass)
                out.fail(rep.name + ": " + line.check + " (" + line.detail + ")");
        if (!doc.expect_m || rep.m != *doc.expect_m)
            out.fail(rep.name + ": blow-up count not reproduced");
        if (!doc.expect_chain || rep.chain != *doc.expect_chain)
            out.fail(rep.name + ": chain not reproduced");
    }
    ConstructionDoc k1a = load_construction((dir / "kappa1A.json").string());
    ReplayReport rep = replay(k1a);
    if (!rep.designated_degree || *rep.designated_degree != Rat(1, 5) ||
        !(*rep.designated_degree > 0))
        out.fail("designated (-1)-curve degree is not 1/5 > 0");
    if (out.pass)
        out.detail = "5 documents reproduce m and chain; pairing totals and incidence "
                     "floors exact; designated curve degree 1/5 > 0";
    return out;
}

// ---- criterion 7: bound-ledger coherence ------------------------------------

Outcome criterion_bound_ledger() {
    Outcome out;
    size_t nef = 0;
    for (const ScenarioRecord& rec : classification_fixtures()) {
        ChainClass cls = classify(rec.chain);
        Int rd = Int(rec.chain.size()) - cls.params.d;
        Int delta = delta_of(rec.diagram);
        if (rd > bound_unconditional(rec.kw2 - rec.ks2, delta, rec.lambda))
            out.fail(rec.name + ": r-d exceeds the unconditional bound");
        if (!rec.ks_nef) continue;
        ++nef;
        Int lo = bound_no_long(*rec.kappa, rec.kw2, rec.ks2);
        Int mid = bound_type_i(*rec.kappa, rec.kw2, rec.ks2);
        Int hi = bound_nef(*rec.kappa, rec.kw2, rec.ks2);
        if (!(lo <= mid && mid <= hi))
            out.fail(rec.name + ": ordering broke (" + lo.str() + "," + mid.str() + "," +
                     hi.str() + ")");
    }

    // the plane fixture: 16 blow-ups along a degree-7 curve image
    bool septic_seen = false;
    for (const ScenarioRecord& rec : classification_fixtures()) {
        if (rec.ks_nef) continue;
        septic_seen = true;
        ChainClass cls = classify(rec.chain);
        Int r = rec.chain.size();
        Int rd = r - cls.params.d;
        Int delta_k2 = r - cls.params.d + 1 - rec.m; // kw2 - ks2 from (m, r, d)
        if (delta_k2 != rec.kw2 - rec.ks2)
            out.fail(rec.name + ": delta K^2 bookkeeping broken");
        if (r != 9 || r != 2 * rec.kw2 + 5)
            out.fail(rec.name + ": r = 2 kw2 + 5 arithmetic not reproduced");
        if (rd != bound_not_nef(delta_k2, rec.lambda, rec.diagram.type))
            out.fail(rec.name + ": not tight against the not-nef bound");
    }
    if (!septic_seen) out.fail("no non-nef fixture on file");
    if (out.pass)
        out.detail = "orderings and unconditional bound hold on " + std::to_string(nef) +
                     " nef fixtures; plane fixture tight";
    return out;
}

// ---- criterion 8: negative controls (through the CLI) ------------------------

struct CliResult {
    int code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const char* cli = std::getenv("TSING_CLI");
    if (!cli) return {};
    std::string command = env_prefix + "\"" + cli + "\" " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return {};
    CliResult result;
    std::array<char, 4096> buffer{};
    size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), got);
    int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

Outcome criterion_negative_controls() {
    Outcome out;
    if (!std::getenv("TSING_CLI")) {
        out.fail("TSING_CLI not set; cannot drive the executable");
        return out;
    }

    if (!(classify({2, 4}) == ChainClass::not_t())) out.fail("[2,4] classified as T");
    CliResult recognize = run_cli("recognize \"[2,4]\"");
    if (recognize.code != 0 || recognize.output.find("not a T-chain") == std::string::npos)
        out.fail("recognize [2,4] did not report not-T (exit " +
                 std::to_string(recognize.code) + ")");

    // scenario breaking the type II floor r-d >= 2s: [2,5] has r-d = 1 < 2
    CliResult violation = run_cli(
        "bound --kappa 0 --ks2 0 --kw2 1 --m 1 --lambda 0 --diagram II --s 1 --gamma -5 "
        "--chain \"[2,5]\"");
    if (violation.code != 1)
        out.fail("type II floor violation exited " + std::to_string(violation.code) +
                 ", expected 1");
    if (violation.output.find("type-ii-lower") == std::string::npos)
        out.fail("violation report does not name the failing estimate");

    // a healthy scenario audit exits 0
    CliResult healthy = run_cli(
        "bound --kappa 1 --ks2 0 --kw2 1 --m 2 --lambda 1 --diagram I --tight "
        "--chain \"[3,5,2]\"");
    if (healthy.code != 0)
        out.fail("healthy scenario exited " + std::to_string(healthy.code));

    // corrupting a fixture flips `verify fixtures` to exit 1
    namespace fs = std::filesystem;
    fs::path corrupt_dir = fs::temp_directory_path() / "tsing-corrupt-fixtures";
    fs::create_directories(corrupt_dir);
    {
        std::ifstream in(fs::path(default_fixture_dir()) / "kappa2A.json");
        std::stringstream buffer;
        buffer << in.rdbuf();
        std::string text = buffer.str();
        auto pos = text.find("[2, 5]");
        if (pos == std::string::npos) {
            out.fail("cannot corrupt kappa2A.json: expected chain literal not found");
        } else {
            text.replace(pos, 6, "[2, 4]");
            std::ofstream outfile(corrupt_dir / "kappa2A.json");
            outfile << text;
        }
    }
    CliResult baseline = run_cli("verify fixtures");
    if (baseline.code != 0)
        out.fail("baseline verify fixtures exited " + std::to_string(baseline.code));
    CliResult corrupted =
        run_cli("verify fixtures", "TSING_FIXTURES=\"" + corrupt_dir.string() + "\" ");
    if (corrupted.code != 1)
        out.fail("corrupted fixtures exited " + std::to_string(corrupted.code) +
                 ", expected 1");

    // structured output is byte-deterministic
    CliResult first = run_cli("--json verify fixtures");
    CliResult second = run_cli("--json verify fixtures");
    if (first.output.empty() || first.output != second.output)
        out.fail("verify fixtures --json is not byte-identical across runs");

    if (out.pass)
        out.detail = "[2,4] rejected; type II floor violation exits 1; corrupted fixture "
                     "flips verify to exit 1; JSON output deterministic";
    return out;
}

} // namespace

int main() {
    struct Row {
        const char* label;
        Outcome (*check)();
    };
    const std::array<Row, 8> rows{{
        {"criterion 1 (fibonacci ceiling)", criterion_fibonacci},
        {"criterion 2 (round trips)", criterion_round_trips},
        {"criterion 3 (end discrepancies)", criterion_end_discrepancies},
        {"criterion 4 (structural identity)", criterion_structural_identity},
        {"criterion 5 (classification fixtures)", criterion_classification},
        {"criterion 6 (construction replay)", criterion_replay},
        {"criterion 7 (bound ledger)", criterion_bound_ledger},
        {"criterion 8 (negative controls)", criterion_negative_controls},
    }};

    int failures = 0;
    for (const Row& row : rows) {
        Outcome outcome;
        try {
            outcome = row.check();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        if (!outcome.pass) ++failures;
        std::cout << row.label << ": " << (outcome.pass ? "PASS" : "FAIL") << " — "
                  << outcome.detail << "\n";
    }
    return failures;
}
