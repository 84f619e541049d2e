#include "workbench/jobs.hpp"

#include <sstream>

#include "workbench/charnum.hpp"
#include "workbench/elliptic.hpp"
#include "workbench/grothendieck.hpp"
#include "workbench/stringy.hpp"
#include "workbench/weightss.hpp"

namespace wb {

using json = nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw input_error("job document: " + msg); }

const json& field_at(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j[key];
}

int int_at(const json& j, const char* key) {
    const json& v = field_at(j, key);
    if (!v.is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

std::string str_at(const json& j, const char* key) {
    const json& v = field_at(j, key);
    if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

Rat j_rat(const json& v) {
    if (v.is_number_integer()) return Rat(v.get<long>());
    if (v.is_string()) return parse_rat(v.get<std::string>());
    bad("exact numbers must be integers or strings \"p/q\"");
}

std::vector<Rat> j_rat_vec(const json& v) {
    if (!v.is_array()) bad("expected an array of exact numbers");
    std::vector<Rat> r;
    for (const auto& x : v) r.push_back(j_rat(x));
    return r;
}

Theory j_theory(const std::string& s) {
    if (s == "complex") return Theory::Complex;
    if (s == "real") return Theory::RealF2;
    bad("theory must be \"complex\" or \"real\"");
}

// [{"monomial": ["P1", "P1"], "coeff": -1}, ...]; coeff defaults to 1
VirtualClass j_class(const json& v) {
    if (!v.is_array()) bad("a class must be an array of terms");
    VirtualClass c;
    for (const auto& term : v) {
        if (!term.is_object()) bad("each class term must be an object");
        const json& mono = field_at(term, "monomial");
        if (!mono.is_array()) bad("term field 'monomial' must be an array of atom names");
        VirtualClass::Monomial m;
        for (const auto& name : mono) {
            if (!name.is_string()) bad("atom names must be strings");
            m.push_back(name.get<std::string>());
        }
        std::sort(m.begin(), m.end());
        BigInt coeff = 1;
        if (term.contains("coeff")) {
            Rat r = j_rat(term["coeff"]);
            if (!is_integer(r)) bad("class coefficients must be integers");
            coeff = numerator(r);
        }
        c.add(m, coeff);
    }
    return c;
}

void j_define_atoms(const json& doc, AtomTable& table) {
    if (!doc.contains("atoms")) return;
    const json& atoms = doc["atoms"];
    if (!atoms.is_array()) bad("field 'atoms' must be an array");
    for (const auto& a : atoms) {
        std::string name = str_at(a, "name");
        Theory th = j_theory(a.contains("theory") ? str_at(a, "theory") : "complex");
        if (a.value("opaque", false)) {
            table.define_opaque(name, th);
            continue;
        }
        const json& bj = field_at(a, "betti");
        if (!bj.is_array()) bad("atom field 'betti' must be an array");
        std::vector<long> betti;
        for (const auto& b : bj) {
            if (!b.is_number_integer()) bad("Betti numbers must be integers");
            betti.push_back(b.get<long>());
        }
        table.define(name, th, int_at(a, "dimension"), betti, a.value("smooth_compact", false),
                     a.value("poincare_duality", false));
    }
}

ResolutionModel j_resolution(const json& v, Theory th) {
    ResolutionModel m;
    m.theory = th;
    m.num_divisors = int_at(v, "num_divisors");
    if (v.contains("discrepancies")) m.discrepancies = j_rat_vec(v["discrepancies"]);
    m.strata_are_open = v.value("strata_are_open", false);
    const json& strata = field_at(v, "strata");
    if (!strata.is_object()) bad("field 'strata' must map subset bitmasks to classes");
    for (const auto& [key, cls] : strata.items()) {
        std::size_t pos = 0;
        unsigned long mask = 0;
        try {
            mask = std::stoul(key, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != key.size()) bad("stratum key '" + key + "' is not a subset bitmask");
        m.strata[static_cast<unsigned>(mask)] = j_class(cls);
    }
    return m;
}

Matrix j_matrix(const json& v, std::size_t rows, std::size_t cols, const char* what) {
    Matrix m(rows, cols);
    if (v.is_null()) return m;
    if (!v.is_array() || v.size() != rows)
        bad(std::string(what) + ": expected " + std::to_string(rows) + " rows");
    for (std::size_t i = 0; i < rows; ++i) {
        if (!v[i].is_array() || v[i].size() != cols)
            bad(std::string(what) + ": row " + std::to_string(i) + " must have " +
                std::to_string(cols) + " entries");
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = j_rat(v[i][j]);
    }
    return m;
}

FilteredComplex j_filtered_complex(const json& v, const LinField& field) {
    FilteredComplex fc;
    fc.field = field;
    const json& dims = field_at(v, "dims");
    if (!dims.is_array() || dims.empty()) bad("field 'dims' must be a nonempty array");
    for (const auto& d : dims) {
        if (!d.is_number_integer() || d.get<int>() < 0) bad("dims must be nonnegative integers");
        fc.dims.push_back(d.get<int>());
    }
    const json& levels = field_at(v, "levels");
    if (!levels.is_array() || levels.size() != fc.dims.size())
        bad("field 'levels' must have one entry per degree");
    for (std::size_t n = 0; n < fc.dims.size(); ++n) {
        if (!levels[n].is_array() || static_cast<int>(levels[n].size()) != fc.dims[n])
            bad("levels[" + std::to_string(n) + "] must list one level per basis vector");
        std::vector<int> lv;
        for (const auto& x : levels[n]) lv.push_back(x.get<int>());
        fc.level.push_back(lv);
    }
    const json& d = field_at(v, "d");
    if (!d.is_array() || d.size() + 1 != fc.dims.size())
        bad("field 'd' must have one matrix per consecutive degree pair");
    for (std::size_t n = 0; n + 1 < fc.dims.size(); ++n)
        fc.d.push_back(j_matrix(d[n], fc.dims[n + 1], fc.dims[n], "d"));
    return fc;
}

CohomologyModel j_cohomology(const json& v) {
    if (v.is_string()) {
        std::string name = v.get<std::string>();
        if (name == "blowup-P2") return blowup_p2_model();
        if (name.size() > 1 && name[0] == 'P') {
            try {
                return projective_space_model(std::stoi(name.substr(1)));
            } catch (const std::exception&) {
            }
        }
        bad("unknown model name '" + name + "' (use \"P<n>\", \"blowup-P2\", or an object)");
    }
    if (!v.is_object()) bad("a cohomology model must be a name or an object");
    CohomologyModel m;
    for (const auto& b : field_at(v, "basis")) m.basis.push_back(b.get<std::string>());
    for (const auto& d : field_at(v, "degree")) m.degree.push_back(d.get<int>());
    m.top = int_at(v, "top");
    for (const auto& p : field_at(v, "products")) {
        int i = int_at(p, "i"), j = int_at(p, "j");
        m.products[{i, j}] = j_rat_vec(field_at(p, "value"));
    }
    m.integration = j_rat_vec(field_at(v, "integration"));
    for (const auto& c : field_at(v, "chern")) m.chern.push_back(j_rat_vec(c));
    if (v.contains("divisors"))
        for (const auto& d : v["divisors"]) m.divisors.push_back(j_rat_vec(d));
    if (v.contains("discrepancies")) m.discrepancies = j_rat_vec(v["discrepancies"]);
    return m;
}

ManifoldAtom j_atom_spec(const std::string& spec) {
    std::istringstream in(spec);
    std::string head;
    std::getline(in, head, ':');
    auto next_int = [&]() {
        std::string part;
        if (!std::getline(in, part, ':')) bad("atom spec '" + spec + "' is missing a parameter");
        try {
            return std::stoi(part);
        } catch (const std::exception&) {
            bad("atom spec '" + spec + "' has a non-integer parameter");
        }
    };
    if (head == "rp") return ManifoldAtom::rp(next_int());
    if (head == "sphere") return ManifoldAtom::sphere(next_int());
    if (head == "dold") {
        int m = next_int();
        return ManifoldAtom::dold(m, next_int());
    }
    bad("unknown atom spec '" + spec + "' (use rp:<n>, dold:<m>:<r>, sphere:<n>)");
}

std::string join_ints(const std::vector<int>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

std::string gamma_str(const std::map<std::pair<int, int>, Rat>& g) {
    if (g.empty()) return "0";
    std::string out;
    for (const auto& [key, c] : g) {
        auto [a, b] = key;
        std::string term;
        if (c != 1 || (a == 0 && b == 0)) term = rat_str(c);
        auto factor = [&](const char* name, int e) {
            if (e == 0) return;
            if (!term.empty()) term += "*";
            term += name;
            if (e > 1) term += "^" + std::to_string(e);
        };
        factor("delta", a);
        factor("gamma", b);
        if (!out.empty()) out += " + ";
        out += term;
    }
    return out;
}

// ---------------------------------------------------------------------- vpp

Report run_vpp(const json& doc) {
    AtomTable table;
    j_define_atoms(doc, table);
    FracPoly p = vpp(table, j_class(field_at(doc, "class")));
    Report r;
    r.text = "kind: vpp\nvpp = " + p.str() + "\n";
    r.data = {{"kind", "vpp"}, {"vpp", p.str()}};
    return r;
}

// ------------------------------------------------------------------ real-vb

Report run_real_vb(const json& doc) {
    AtomTable table;
    j_define_atoms(doc, table);
    RealGlueDiagram diagram(table);
    const json& spaces = field_at(doc, "spaces");
    if (!spaces.is_array()) bad("field 'spaces' must be an array");
    for (const auto& s : spaces) {
        std::string name = str_at(s, "name");
        if (s.contains("glue")) {
            const json& g = s["glue"];
            RealGlueDiagram::Triple t;
            t.normalization = j_class(field_at(g, "normalization"));
            t.exceptional = j_class(field_at(g, "exceptional"));
            t.center = j_class(field_at(g, "center"));
            diagram.define_glue(name, t);
        } else {
            diagram.define_class(name, j_class(field_at(s, "class")));
        }
    }
    std::string target = str_at(doc, "target");
    FracPoly p = diagram.eval(target);

    std::vector<std::string> a;
    Rat top = 0;
    for (const auto& [e, c] : p.terms()) {
        if (!is_integer(e) || e < 0) throw internal_error("real virtual Betti exponent not in N");
        if (e > top) top = e;
    }
    for (Rat e = 0; e <= top; e += 1) a.push_back(rat_str(p.coeff(e)));
    std::string avec;
    for (std::size_t i = 0; i < a.size(); ++i) avec += (i ? ", " : "") + a[i];

    Report r;
    r.text = "kind: real-vb\nreal_vb(" + target + ") = " + p.str("t") + "\na = (" + avec + ")\n";
    r.data = {{"kind", "real-vb"}, {"target", target}, {"poly", p.str("t")}, {"a", a}};
    return r;
}

// ------------------------------------------------------------------ stringy

Report run_stringy(const json& doc) {
    AtomTable table;
    j_define_atoms(doc, table);
    Theory th = j_theory(doc.contains("theory") ? str_at(doc, "theory") : "complex");
    const char* var = th == Theory::Complex ? "q" : "t";
    ResolutionModel m = j_resolution(field_at(doc, "model"), th);
    auto eval = [&](const ResolutionModel& model) {
        return th == Theory::Complex ? stringy_poincare(table, model)
                                     : stringy_real(table, model);
    };
    SymbolicPoly p = eval(m);
    Report r;
    r.text = "kind: stringy\np_str = " + p.str(var) + "\n";
    r.data = {{"kind", "stringy"}, {"p_str", p.str(var)}};
    if (doc.contains("compare")) {
        SymbolicPoly p2 = eval(j_resolution(doc["compare"], th));
        bool same = p == p2;
        r.text += "p_str(compare) = " + p2.str(var) + "\n";
        r.text += std::string("independent: ") + (same ? "true" : "false") + "\n";
        r.data["p_str_compare"] = p2.str(var);
        r.data["independent"] = same;
    }
    return r;
}

// ---------------------------------------------------------------- weight-ss

Report run_weight_ss(const json& doc, const RunOptions& opt) {
    SpectralSequence ss;
    bool filtered = true;
    if (doc.contains("toric")) {
        int n = field_at(doc, "toric").get<int>();
        std::string mode = doc.contains("mode") ? str_at(doc, "mode") : "filtered";
        if (mode == "snc") {
            ss = compute_e2(build_e1(toric_builder(n, opt.field)));
            filtered = false;
        } else if (mode == "filtered") {
            ss = pages(toric_filtered_complex(n, opt.field));
        } else {
            bad("mode must be \"snc\" or \"filtered\"");
        }
    } else if (doc.contains("complex")) {
        ss = pages(j_filtered_complex(doc["complex"], opt.field));
    } else {
        bad("weight-ss needs either 'toric' or 'complex'");
    }

    std::ostringstream out;
    json pages_json = json::object();
    out << "kind: weight-ss\n";
    out << "field: " << (opt.field.is_fp() ? "F" + std::to_string(opt.field.p) : "Q") << "\n";
    for (const auto& [r, page] : ss.pages) {
        out << "E_" << r << ":\n";
        json pj = json::object();
        for (const auto& [ij, d] : page) {
            out << "  (" << ij.first << ", " << ij.second << "): " << d << "\n";
            pj["(" + std::to_string(ij.first) + "," + std::to_string(ij.second) + ")"] = d;
        }
        pages_json["E_" + std::to_string(r)] = pj;
    }

    int top = 0;
    const auto& last = ss.pages.at(ss.last_page);
    for (const auto& [ij, d] : last)
        if (d > 0) top = std::max(top, ij.first + ij.second);
    std::vector<int> hc(top + 1, 0);
    for (const auto& [ij, d] : last) {
        int n = ij.first + ij.second;
        if (n >= 0 && n <= top) hc[n] += d;
    }

    Report rep;
    rep.data = {{"kind", "weight-ss"}, {"pages", pages_json}, {"h_c", hc}};
    if (filtered) {
        out << "stabilized: " << (ss.stabilized ? "true" : "false") << "\n";
        out << "total cohomology: " << join_ints(ss.total_cohomology, " ") << "\n";
        rep.data["stabilized"] = ss.stabilized;
        rep.data["total_cohomology"] = ss.total_cohomology;
    }
    out << "H_c dims: " << join_ints(hc, " ") << "\n";
    if (!opt.field.is_fp()) {
        FracPoly p = vpp_from_ss(ss);
        out << "vpp = " << p.str() << "\n";
        rep.data["vpp"] = p.str();
    }
    rep.text = out.str();
    return rep;
}

// ----------------------------------------------------------------- elliptic

Report run_elliptic(const json& doc, const RunOptions& opt) {
    CohomologyModel m = j_cohomology(field_at(doc, "model"));
    JacobiSeries g = bl_genus(m, opt.order);
    auto table = [](const JacobiSeries& s) {
        json t = json::object();
        for (const auto& [e, v] : s.terms()) t[rat_str(e)] = v.str("z");
        return t;
    };
    std::ostringstream out;
    out << "kind: elliptic\norder: " << opt.order << "\n" << g.str();
    Report r;
    r.data = {{"kind", "elliptic"}, {"order", opt.order}, {"coefficients", table(g)}};
    if (doc.contains("compare")) {
        JacobiSeries g2 = bl_genus(j_cohomology(doc["compare"]), opt.order);
        bool same = g == g2;
        out << "compare:\n" << g2.str();
        out << "agree: " << (same ? "true" : "false") << "\n";
        r.data["coefficients_compare"] = table(g2);
        r.data["agree"] = same;
    }
    r.text = out.str();
    return r;
}

// ------------------------------------------------------------------ charnum

Report run_charnum(const json& doc) {
    std::ostringstream out;
    out << "kind: charnum\n";
    Report r;
    r.data = {{"kind", "charnum"}};
    bool any = false;

    if (doc.contains("numbers")) {
        json nums = json::array();
        for (const auto& q : doc["numbers"]) {
            const json& specs = field_at(q, "atoms");
            if (!specs.is_array() || specs.empty()) bad("each number needs a nonempty 'atoms'");
            ManifoldAtom m = j_atom_spec(specs[0].get<std::string>());
            std::string label = specs[0].get<std::string>();
            for (std::size_t i = 1; i < specs.size(); ++i) {
                m = atom_product(m, j_atom_spec(specs[i].get<std::string>()));
                label += " x " + specs[i].get<std::string>();
            }
            SWMonomial part;
            for (const auto& p : field_at(q, "partition")) part.push_back(p.get<int>());
            std::sort(part.begin(), part.end());
            int value = sw_number(m, part);
            out << "w[" << join_ints(part, ",") << "](" << label << ") = " << value << "\n";
            nums.push_back({{"atoms", label}, {"partition", part}, {"value", value}});
        }
        r.data["numbers"] = nums;
        any = true;
    }
    if (doc.contains("ranks")) {
        json ranks = json::object();
        for (const auto& nj : doc["ranks"]) {
            int n = nj.get<int>();
            int rank = invariant_span_rank(n);
            bool eq = span_equivalence(n);
            out << "rank(" << n << ") = " << rank << "\n";
            out << "span_equivalence(" << n << ") = " << (eq ? "true" : "false") << "\n";
            ranks[std::to_string(n)] = {{"rank", rank}, {"span_equivalence", eq}};
        }
        r.data["ranks"] = ranks;
        any = true;
    }
    if (doc.contains("flop")) {
        json flop = json::object();
        for (const auto& aj : doc["flop"]) {
            int a = aj.get<int>();
            bool ok = flop_relation_check(a);
            out << "flop(" << a << ") = " << (ok ? "true" : "false") << "\n";
            flop[std::to_string(a)] = ok;
        }
        r.data["flop"] = flop;
        any = true;
    }
    if (doc.contains("ochanine")) {
        json och = json::object();
        for (const auto& nj : doc["ochanine"]) {
            int n = nj.get<int>();
            GenusElem phi = ochanine_cp(n);
            std::string g = gamma_str(gamma_basis(phi));
            bool member = in_image_ring(phi);
            out << "phi(CP^" << n << ") = " << g << "\n";
            out << "in_image(CP^" << n << ") = " << (member ? "true" : "false") << "\n";
            och[std::to_string(n)] = {{"phi", g}, {"in_image", member}};
        }
        r.data["ochanine"] = och;
        any = true;
    }
    if (!any) bad("charnum needs at least one of 'numbers', 'ranks', 'flop', 'ochanine'");
    r.text = out.str();
    return r;
}

}  // namespace

LinField parse_field(const std::string& spec) {
    if (spec == "Q") return LinField{0};
    if (spec == "F2") return LinField{2};
    if (spec.rfind("Fp:", 0) == 0) {
        long p = 0;
        try {
            p = std::stol(spec.substr(3));
        } catch (const std::exception&) {
            p = 0;
        }
        if (p < 2) throw input_error("field spec '" + spec + "': p must be at least 2");
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) throw input_error("field spec '" + spec + "': p is not prime");
        return LinField{p};
    }
    throw input_error("field spec must be Q, F2, or Fp:<p>");
}

Report run_job(const nlohmann::json& doc, const RunOptions& opt) {
    try {
        if (!doc.is_object()) bad("top level must be an object");
        if (!doc.contains("schema") || doc["schema"] != 1) bad("unsupported or missing schema");
        std::string kind = str_at(doc, "kind");

        RunOptions o = opt;
        if (!o.order_set && doc.contains("order")) o.order = int_at(doc, "order");
        if (!o.field_set && doc.contains("field")) o.field = parse_field(str_at(doc, "field"));
        if (o.order < 0) bad("order must be nonnegative");

        if (kind == "vpp") return run_vpp(doc);
        if (kind == "real-vb") return run_real_vb(doc);
        if (kind == "stringy") return run_stringy(doc);
        if (kind == "weight-ss") return run_weight_ss(doc, o);
        if (kind == "elliptic") return run_elliptic(doc, o);
        if (kind == "charnum") return run_charnum(doc);
        bad("unknown kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw input_error(std::string("job document: ") + e.what());
    }
}

Report run_job_text(const std::string& text, const RunOptions& opt) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw input_error(std::string("invalid JSON: ") + e.what());
    }
    return run_job(doc, opt);
}

}  // namespace wb
