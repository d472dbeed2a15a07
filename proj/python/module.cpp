#include "tsing/blowup.hpp"
#include "tsing/bounds.hpp"
#include "tsing/chain.hpp"
#include "tsing/discrepancy.hpp"
#include "tsing/invariants.hpp"
#include "tsing/tchain.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;

namespace pybind11 {
namespace detail {

// tsing::Int <-> arbitrary-precision Python int, bridged through decimal
// strings so no magnitude is ever truncated.
template <>
struct type_caster<tsing::Int> {
    PYBIND11_TYPE_CASTER(tsing::Int, const_name("int"));

    bool load(handle src, bool) {
        if (!PyLong_Check(src.ptr())) return false;
        value = tsing::Int(std::string(py::str(src)));
        return true;
    }

    static handle cast(const tsing::Int& src, return_value_policy, handle) {
        return PyLong_FromString(src.str().c_str(), nullptr, 10);
    }
};

// tsing::Rat <-> fractions.Fraction (or any numerator/denominator carrier).
template <>
struct type_caster<tsing::Rat> {
    PYBIND11_TYPE_CASTER(tsing::Rat, const_name("Fraction"));

    bool load(handle src, bool) {
        if (!py::hasattr(src, "numerator") || !py::hasattr(src, "denominator")) return false;
        try {
            tsing::Int num{std::string(py::str(src.attr("numerator")))};
            tsing::Int den{std::string(py::str(src.attr("denominator")))};
            value = tsing::Rat(num, den);
            return true;
        } catch (const std::exception&) {
            return false;
        }
    }

    static handle cast(const tsing::Rat& src, return_value_policy, handle) {
        object fraction = module_::import("fractions").attr("Fraction");
        return fraction(tsing::format_rat(src)).release();
    }
};

} // namespace detail
} // namespace pybind11

namespace {

using namespace tsing;

Kappa to_kappa(int kappa) {
    if (kappa < 0 || kappa > 2)
        throw std::invalid_argument("kappa must be 0, 1 or 2");
    return static_cast<Kappa>(kappa);
}

DiagramKind::Type to_diagram_type(const std::string& name) {
    if (name == "none") return DiagramKind::Type::NoLong;
    if (name == "I") return DiagramKind::Type::TypeI;
    if (name == "II") return DiagramKind::Type::TypeII;
    throw std::invalid_argument("unknown diagram '" + name + "', expected none|I|II");
}

py::dict class_dict(const ChainClass& cls) {
    py::dict out;
    switch (cls.kind) {
    case ChainClass::Kind::TChain:
        out["kind"] = "T";
        out["d"] = cls.params.d;
        out["n"] = cls.params.n;
        out["a"] = cls.params.a;
        break;
    case ChainClass::Kind::DuVal:
        out["kind"] = "du-val";
        out["rank"] = cls.duval_rank;
        break;
    case ChainClass::Kind::NotT:
        out["kind"] = "not-T";
        break;
    }
    return out;
}

py::dict replay_dict(const ReplayReport& rep) {
    py::dict out;
    out["name"] = rep.name;
    out["m"] = rep.m;
    out["lambda"] = rep.lambda;
    out["chain"] = rep.chain;
    out["is_t"] = rep.cls.is_t();
    if (rep.cls.is_t()) {
        out["class"] = class_dict(rep.cls);
        out["kw2"] = rep.kw2;
    }
    if (rep.designated_degree) out["designated_degree"] = *rep.designated_degree;
    py::list lines;
    for (const ReplayLine& line : rep.lines)
        lines.append(py::make_tuple(line.check, line.detail, line.pass));
    out["lines"] = lines;
    out["pass"] = rep.pass;
    return out;
}

} // namespace

PYBIND11_MODULE(tsing, m) {
    m.doc() = "exact arithmetic for T-chains on stable surfaces: continued "
              "fractions, recognition, enumeration, discrepancies, length "
              "bounds and blow-up replay";

    m.def(
        "hj_expand",
        [](const Int& order, const Int& weight) { return hj_expand({order, weight}); },
        py::arg("order"), py::arg("weight"),
        "Continued-fraction expansion of order/weight as [b1,b2,...]");
    m.def(
        "hj_eval",
        [](const Chain& chain) {
            CyclicQuotient cq = hj_eval(chain);
            return py::make_tuple(cq.order, cq.weight);
        },
        py::arg("chain"), "Evaluate a chain back to (order, weight)");
    m.def(
        "inverse_weight",
        [](const Int& order, const Int& weight) {
            return inverse_weight({order, weight}).weight;
        },
        py::arg("order"), py::arg("weight"),
        "Weight of the reversed chain: the inverse of weight modulo order");
    m.def(
        "classify", [](const Chain& chain) { return class_dict(classify(chain)); },
        py::arg("chain"),
        "Recognize a chain as {'kind': 'T'|'du-val'|'not-T', ...}");
    m.def(
        "chain_of",
        [](const Int& d, const Int& n, const Int& a) { return chain_of({d, n, a}); },
        py::arg("d"), py::arg("n"), py::arg("a"),
        "The chain contracting to the T-singularity with invariants (d, n, a)");
    m.def("enumerate_tchains", &enumerate_tchains, py::arg("d"), py::arg("k"),
          "All T-chains reachable by k end-expansions from the d-block seed");
    m.def("dedupe_reversals", &dedupe_reversals, py::arg("chains"),
          "Drop the second member of every reversal pair");
    m.def("fibonacci", &fibonacci, py::arg("i"),
          "Shifted Fibonacci numbers: F(-2)=F(-1)=1, F(0)=2, F(1)=3, ...");
    m.def(
        "verify_fibonacci_bound",
        [](const Int& d, const Int& k) {
            FibonacciReport rep = verify_fibonacci_bound(d, k);
            py::dict out;
            out["d"] = rep.d;
            out["k"] = rep.k;
            out["fib"] = rep.fib;
            out["max_n"] = rep.max_n;
            out["bound_ok"] = rep.bound_ok;
            out["equality"] = rep.equality;
            out["form_ok"] = rep.form_ok;
            out["maximizers"] = rep.maximizers;
            out["pass"] = rep.pass();
            return out;
        },
        py::arg("d"), py::arg("k"),
        "Compare the maximal index of the (d,k) enumeration with F(k)");
    m.def("discrepancies", &discrepancies, py::arg("chain"),
          "Exact discrepancies of the chain's contraction, as Fractions");
    m.def(
        "contracted_degree",
        [](const Chain& chain, std::vector<std::pair<std::size_t, Int>> meets,
           const Int& kx) {
            IncidenceProfile profile{std::move(meets), kx};
            return contracted_degree(chain, profile);
        },
        py::arg("chain"), py::arg("meets"), py::arg("kx") = Int(-1),
        "Degree against the contracted canonical class of a curve meeting the "
        "chain at the given (1-based index, multiplicity) pairs");
    m.def("kw2_from", &kw2_from, py::arg("ks2"), py::arg("m"), py::arg("r"), py::arg("d"),
          "K_W^2 = ks2 - m + r - d + 1");
    m.def("chain_canonical_degree", &chain_canonical_degree, py::arg("chain"),
          "Sum of (b_i - 2) over a T-chain; equals r - d + 2");
    m.def("exceptional_pairing_total", &exceptional_pairing_total, py::arg("r"),
          py::arg("d"), py::arg("lam"),
          "Total intersection of the exceptional classes with the chain");
    m.def(
        "structural_identity_check",
        [](const Chain& chain) {
            StructuralReport rep = structural_identity_check(chain);
            py::dict out;
            out["applicable"] = rep.applicable;
            out["pass"] = rep.pass;
            out["s"] = rep.s;
            out["lhs"] = rep.lhs;
            out["rhs"] = rep.rhs;
            return out;
        },
        py::arg("chain"),
        "For chains [2^s, middle, s+2]: sum of middle excesses vs r-s-d+2");
    m.def("chi_relation", &chi_relation, py::arg("kw2"), py::arg("chi_top"), py::arg("d"),
          "(kw2 + chi_top + d - 1) / 12");
    m.def("log_bmy_check", &log_bmy_check, py::arg("d"), py::arg("n"), py::arg("chi"),
          py::arg("kw2"), "d - 1/(d n^2) <= 12 chi - (4/3) kw2, exactly");
    m.def("bound_unconditional", &bound_unconditional, py::arg("delta_k2"),
          py::arg("delta"), py::arg("lam"),
          "r - d <= 2 delta_k2 + delta - lam, with no nef assumption");
    m.def(
        "bound_nef",
        [](int kappa, const Int& kw2, const Int& ks2) {
            return bound_nef(to_kappa(kappa), kw2, ks2);
        },
        py::arg("kappa"), py::arg("kw2"), py::arg("ks2"),
        "Blanket bound on r - d for nef K_S, by Kodaira dimension");
    m.def(
        "bound_no_long",
        [](int kappa, const Int& kw2, const Int& ks2) {
            return bound_no_long(to_kappa(kappa), kw2, ks2);
        },
        py::arg("kappa"), py::arg("kw2"), py::arg("ks2"),
        "Refined bound when no long diagram is present");
    m.def(
        "bound_type_i",
        [](int kappa, const Int& kw2, const Int& ks2) {
            return bound_type_i(to_kappa(kappa), kw2, ks2);
        },
        py::arg("kappa"), py::arg("kw2"), py::arg("ks2"),
        "Refined bound for a type I long diagram");
    m.def(
        "bound_not_nef",
        [](const Int& delta_k2, const Int& lam, const std::string& diagram) {
            return bound_not_nef(delta_k2, lam, to_diagram_type(diagram));
        },
        py::arg("delta_k2"), py::arg("lam"), py::arg("diagram") = "none",
        "Bound on r - d without nef K_S; diagram is none|I|II");
    m.def(
        "replay_file",
        [](const std::string& path) { return replay_dict(replay(load_construction(path))); },
        py::arg("path"), "Replay a construction document and report every check");
    m.def("default_fixture_dir", &default_fixture_dir,
          "Directory with the shipped construction documents");
}
