#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "workbench/charnum.hpp"
#include "workbench/elliptic.hpp"
#include "workbench/grothendieck.hpp"
#include "workbench/jobs.hpp"
#include "workbench/stringy.hpp"
#include "workbench/weightss.hpp"

namespace py = pybind11;
using namespace wb;

namespace {

ManifoldAtom atom_from_spec(const std::string& spec) {
    auto take = [&](std::size_t& pos) {
        std::size_t next = spec.find(':', pos);
        std::string part = spec.substr(pos, next == std::string::npos ? next : next - pos);
        pos = next == std::string::npos ? spec.size() : next + 1;
        return std::stoi(part);
    };
    std::size_t colon = spec.find(':');
    if (colon == std::string::npos) throw input_error("atom spec needs parameters: " + spec);
    std::string head = spec.substr(0, colon);
    std::size_t pos = colon + 1;
    if (head == "rp") return ManifoldAtom::rp(take(pos));
    if (head == "sphere") return ManifoldAtom::sphere(take(pos));
    if (head == "dold") {
        int m = take(pos);
        return ManifoldAtom::dold(m, take(pos));
    }
    throw input_error("unknown atom spec: " + spec);
}

}  // namespace

PYBIND11_MODULE(_workbench, m) {
    m.doc() = "exact invariants of singular spaces";

    py::register_exception<input_error>(m, "InputError");
    py::register_exception<precondition_error>(m, "PreconditionError");
    py::register_exception<internal_error>(m, "InternalError");

    m.def(
        "run_job",
        [](const std::string& text, int order, const std::string& field) {
            RunOptions opt;
            opt.order = order;
            opt.order_set = true;
            opt.field = parse_field(field);
            opt.field_set = true;
            Report r = run_job_text(text, opt);
            return py::make_tuple(r.text, r.data.dump(2));
        },
        py::arg("document"), py::arg("order") = 3, py::arg("field") = "Q",
        "Run a JSON job document; returns (text report, JSON report).");

    m.def(
        "vpp",
        [](const std::vector<std::pair<std::vector<std::string>, long>>& terms) {
            AtomTable table;
            VirtualClass c;
            for (auto [mono, coeff] : terms) {
                std::sort(mono.begin(), mono.end());
                c.add(mono, BigInt(coeff));
            }
            return wb::vpp(table, c).str();
        },
        py::arg("terms"),
        "Virtual Poincare polynomial of a Z-combination of built-in atom products.");

    m.def(
        "stringy_p2_blowup",
        [](const std::string& discrepancy) {
            AtomTable table;
            ResolutionModel m;
            m.num_divisors = 1;
            m.discrepancies = {parse_rat(discrepancy)};
            m.strata[0] = VirtualClass::atom("P2") + VirtualClass::atom("P1") -
                          VirtualClass::atom("point");
            m.strata[1] = VirtualClass::atom("P1");
            return stringy_poincare(table, m).plain().str("q");
        },
        py::arg("discrepancy") = "1",
        "Stringy Poincare function of P^2 presented through its point blowup.");

    m.def(
        "toric_hc_dims",
        [](int n, long p) {
            SpectralSequence ss = pages(toric_filtered_complex(n, LinField{p}));
            return ss.total_cohomology;
        },
        py::arg("n"), py::arg("p") = 0,
        "Compactly-supported cohomology dims of the n-torus from the filtered complex.");

    m.def(
        "elliptic_blowup_agree",
        [](int order) {
            return bl_genus(projective_space_model(2), order) ==
                   bl_genus(blowup_p2_model(), order);
        },
        py::arg("order") = 3,
        "Does the singular elliptic genus of P^2 agree with the blowup route?");

    m.def("chi_y", [](int n) { return chi_y(projective_space_model(n)).str("y"); }, py::arg("n"),
          "chi_y genus of P^n.");

    m.def(
        "sw_number",
        [](const std::vector<std::string>& atoms, std::vector<int> partition) {
            if (atoms.empty()) throw input_error("need at least one atom");
            ManifoldAtom a = atom_from_spec(atoms[0]);
            for (std::size_t i = 1; i < atoms.size(); ++i)
                a = atom_product(a, atom_from_spec(atoms[i]));
            std::sort(partition.begin(), partition.end());
            return wb::sw_number(a, partition);
        },
        py::arg("atoms"), py::arg("partition"),
        "Stiefel-Whitney number of a product of atoms (rp:<n>, dold:<m>:<r>, sphere:<n>).");

    m.def("invariant_span_rank", &invariant_span_rank, py::arg("n"));
    m.def("span_equivalence", &span_equivalence, py::arg("n"));
    m.def("flop_relation_check", &flop_relation_check, py::arg("a"));

    m.def("ochanine_cp", [](int n) { return ochanine_cp(n).str(); }, py::arg("n"),
          "Ochanine genus of CP^n in Q[delta, epsilon].");
}
