#include "workbench/grothendieck.hpp"

#include <algorithm>
#include <sstream>

namespace wb {

static FracPoly projective_space_poly(int n) {
    FracPoly p;
    for (int i = 0; i <= n; ++i) p.add_term(Rat(i), Rat(1));
    return p;
}

AtomTable::AtomTable() {
    auto put = [this](const std::string& name, Theory th, int dim, FracPoly poly, bool sc) {
        Atom a;
        a.name = name;
        a.theory = th;
        a.builtin = true;
        a.poly = std::move(poly);
        a.dimension = dim;
        a.smooth_compact = sc;
        atoms_[name] = std::move(a);
    };
    put("point", Theory::Complex, 0, FracPoly(Rat(1)), true);
    put("A1", Theory::Complex, 1, FracPoly::monomial(Rat(1), 1), false);
    {
        FracPoly gm = FracPoly::monomial(Rat(1), 1);
        gm.add_term(Rat(0), Rat(-1));
        put("Gm", Theory::Complex, 1, gm, false);
    }
    for (int n = 1; n <= 8; ++n)
        put("P" + std::to_string(n), Theory::Complex, n, projective_space_poly(n), true);
    put("real_point", Theory::RealF2, 0, FracPoly(Rat(1)), true);
    {
        FracPoly s1(Rat(1));
        s1.add_term(Rat(1), Rat(1));
        put("S1", Theory::RealF2, 1, s1, true);
    }
}

const Atom& AtomTable::define(const std::string& name, Theory theory, int dimension,
                              const std::vector<long>& betti, bool smooth_compact,
                              bool poincare_duality) {
    if (atoms_.count(name)) throw input_error("atom redefined: " + name);
    if (dimension < 0) throw input_error("atom needs a dimension: " + name);
    for (long b : betti)
        if (b < 0) throw input_error("negative Betti number in atom " + name);
    if (poincare_duality) {
        size_t top = (theory == Theory::Complex) ? 2 * static_cast<size_t>(dimension)
                                                 : static_cast<size_t>(dimension);
        for (size_t i = 0; i <= top; ++i) {
            long bi = i < betti.size() ? betti[i] : 0;
            long bj = (top - i) < betti.size() ? betti[top - i] : 0;
            if (bi != bj)
                throw input_error("atom " + name + " violates Poincare duality: b_" +
                                  std::to_string(i) + " != b_" + std::to_string(top - i));
        }
    }
    Atom a;
    a.name = name;
    a.theory = theory;
    a.dimension = dimension;
    a.smooth_compact = smooth_compact;
    FracPoly p;
    for (size_t i = 0; i < betti.size(); ++i) {
        if (betti[i] == 0) continue;
        Rat e = (theory == Theory::Complex) ? Rat(BigInt(i), 2) : Rat(BigInt(i));
        p.add_term(e, Rat(betti[i]));
    }
    a.poly = std::move(p);
    return atoms_[name] = std::move(a);
}

const Atom& AtomTable::define_opaque(const std::string& name, Theory theory) {
    if (atoms_.count(name)) throw input_error("atom redefined: " + name);
    Atom a;
    a.name = name;
    a.theory = theory;
    a.opaque = true;
    return atoms_[name] = std::move(a);
}

const Atom& AtomTable::get(const std::string& name) const {
    auto it = atoms_.find(name);
    if (it == atoms_.end()) throw input_error("unknown atom: " + name);
    return it->second;
}

void VirtualClass::add(const Monomial& m, const BigInt& coeff) {
    if (coeff == 0) return;
    Monomial key = m;
    std::sort(key.begin(), key.end());
    auto [it, fresh] = terms_.emplace(std::move(key), coeff);
    if (!fresh) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

VirtualClass operator*(const VirtualClass& a, const VirtualClass& b) {
    VirtualClass r;
    for (const auto& [m1, c1] : a.terms_) {
        for (const auto& [m2, c2] : b.terms_) {
            VirtualClass::Monomial m = m1;
            m.insert(m.end(), m2.begin(), m2.end());
            r.add(m, c1 * c2);
        }
    }
    return r;
}

VirtualClass VirtualClass::scaled(const BigInt& s) const {
    VirtualClass r;
    if (s == 0) return r;
    for (const auto& [m, c] : terms_) r.terms_[m] = c * s;
    return r;
}

std::string VirtualClass::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        BigInt cc = c;
        if (first) {
            if (cc < 0) {
                os << "-";
                cc = -cc;
            }
        } else {
            os << (cc < 0 ? " - " : " + ");
            if (cc < 0) cc = -cc;
        }
        first = false;
        if (cc != 1 || m.empty()) os << cc.str();
        if (!m.empty()) {
            if (cc != 1) os << "*";
            for (size_t i = 0; i < m.size(); ++i) {
                if (i) os << "*";
                os << "[" << m[i] << "]";
            }
        }
        if (m.empty() && cc == 1) {
        }
    }
    return os.str();
}

FracPoly vpp(const AtomTable& table, const VirtualClass& c) {
    FracPoly out;
    for (const auto& [m, coeff] : c.terms()) {
        FracPoly prod(Rat(1));
        for (const auto& name : m) {
            const Atom& a = table.get(name);
            if (a.opaque)
                throw precondition_error("vpp of opaque atom " + name +
                                         " is not defined; keep it symbolic");
            prod *= *a.poly;
        }
        out += prod * Rat(coeff);
    }
    return out;
}

SymbolicPoly SymbolicPoly::from_class(const AtomTable& table, const VirtualClass& c) {
    SymbolicPoly out;
    for (const auto& [m, coeff] : c.terms()) {
        FracPoly known(Rat(1));
        Monomial opaque;
        for (const auto& name : m) {
            const Atom& a = table.get(name);
            if (a.opaque)
                opaque.push_back(name);
            else
                known *= *a.poly;
        }
        std::sort(opaque.begin(), opaque.end());
        out.add(opaque, RatFunc(known * Rat(coeff)));
    }
    return out;
}

void SymbolicPoly::add(const Monomial& m, const RatFunc& f) {
    if (f.is_zero()) return;
    auto [it, fresh] = terms_.emplace(m, f);
    if (!fresh) {
        it->second += f;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SymbolicPoly SymbolicPoly::scaled(const RatFunc& s) const {
    SymbolicPoly r;
    for (const auto& [m, f] : terms_) r.add(m, f * s);
    return r;
}

std::string SymbolicPoly::str(const std::string& var) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, f] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (!m.empty()) {
            for (size_t i = 0; i < m.size(); ++i) {
                if (i) os << "*";
                os << "[" << m[i] << "]";
            }
            os << "*";
        }
        os << "(" << f.str(var) << ")";
    }
    return os.str();
}

void RealGlueDiagram::define_class(const std::string& name, const VirtualClass& c) {
    if (classes_.count(name) || glues_.count(name))
        throw input_error("space redefined: " + name);
    classes_[name] = c;
}

void RealGlueDiagram::define_glue(const std::string& name, const Triple& t) {
    if (classes_.count(name) || glues_.count(name))
        throw input_error("space redefined: " + name);
    glues_[name] = t;
}

FracPoly RealGlueDiagram::eval(const std::string& name) const {
    std::set<std::string> active;
    return eval_rec(name, active);
}

FracPoly RealGlueDiagram::eval_rec(const std::string& name, std::set<std::string>& active) const {
    if (active.count(name)) throw precondition_error("cyclic glue diagram at " + name);
    if (auto it = glues_.find(name); it != glues_.end()) {
        active.insert(name);
        FracPoly r = eval_class(it->second.normalization, active) -
                     eval_class(it->second.exceptional, active) +
                     eval_class(it->second.center, active);
        active.erase(name);
        return r;
    }
    if (auto it = classes_.find(name); it != classes_.end()) {
        active.insert(name);
        FracPoly r = eval_class(it->second, active);
        active.erase(name);
        return r;
    }
    // fall through to atoms
    const Atom& a = table_->get(name);
    if (a.theory != Theory::RealF2)
        throw precondition_error("atom " + name + " is not a real F2 atom");
    if (a.opaque) throw precondition_error("opaque atom in real diagram: " + name);
    return *a.poly;
}

FracPoly RealGlueDiagram::eval_class(const VirtualClass& c, std::set<std::string>& active) const {
    FracPoly out;
    for (const auto& [m, coeff] : c.terms()) {
        FracPoly prod(Rat(1));
        for (const auto& name : m) prod *= eval_rec(name, active);
        out += prod * Rat(coeff);
    }
    return out;
}

}  // namespace wb
