#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "workbench/ratfunc.hpp"

namespace wb {

enum class Theory { Complex, RealF2 };

// A named variety/space piece with a known (or opaque) virtual Poincare
// polynomial. Complex atoms live in q with half-integer grading (coefficient
// of q^(i/2) is b_i); real atoms live in t.
struct Atom {
    std::string name;
    Theory theory = Theory::Complex;
    bool builtin = false;
    bool opaque = false;  // symbolic: no polynomial, carried formally
    std::optional<FracPoly> poly;
    int dimension = -1;
    bool smooth_compact = false;
};

class AtomTable {
  public:
    AtomTable();  // installs builtins

    // User atom from a Betti table b_0..b_k. For complex atoms the polynomial
    // is sum b_i q^(i/2); poincare_duality asks for a palindromicity check.
    const Atom& define(const std::string& name, Theory theory, int dimension,
                       const std::vector<long>& betti, bool smooth_compact,
                       bool poincare_duality);
    const Atom& define_opaque(const std::string& name, Theory theory);
    const Atom& get(const std::string& name) const;
    bool has(const std::string& name) const { return atoms_.count(name) > 0; }

  private:
    std::map<std::string, Atom> atoms_;
};

// Formal Z-linear combination of monomials in atoms; a monomial is an
// unordered product of atom names (a product space).
class VirtualClass {
  public:
    using Monomial = std::vector<std::string>;  // sorted

    VirtualClass() = default;
    static VirtualClass atom(const std::string& name) {
        VirtualClass c;
        c.terms_[{name}] = 1;
        return c;
    }
    static VirtualClass zero() { return {}; }

    const std::map<Monomial, BigInt>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Monomial& m, const BigInt& coeff);

    friend VirtualClass operator+(VirtualClass a, const VirtualClass& b) {
        for (const auto& [m, c] : b.terms_) a.add(m, c);
        return a;
    }
    friend VirtualClass operator-(const VirtualClass& a, const VirtualClass& b) {
        VirtualClass r = a;
        for (const auto& [m, c] : b.terms_) r.add(m, -c);
        return r;
    }
    friend VirtualClass operator*(const VirtualClass& a, const VirtualClass& b);
    VirtualClass scaled(const BigInt& s) const;
    friend bool operator==(const VirtualClass& a, const VirtualClass& b) {
        return a.terms_ == b.terms_;
    }

    std::string str() const;

  private:
    std::map<Monomial, BigInt> terms_;
};

// vpp of a class whose atoms all carry polynomials. Unknown atom -> error;
// opaque atom -> error (use SymbolicPoly for those).
FracPoly vpp(const AtomTable& table, const VirtualClass& c);

// x - y; vpp(complement) = vpp(x) - vpp(y).
inline VirtualClass complement(const VirtualClass& x, const VirtualClass& y) { return x - y; }

// Formal polynomial in opaque atoms with RatFunc coefficients; the value
// domain for stringy functions over partly symbolic models.
class SymbolicPoly {
  public:
    using Monomial = std::vector<std::string>;

    SymbolicPoly() = default;
    explicit SymbolicPoly(const RatFunc& f) {
        if (!f.is_zero()) terms_[{}] = f;
    }

    static SymbolicPoly from_class(const AtomTable& table, const VirtualClass& c);

    const std::map<Monomial, RatFunc>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_plain() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    RatFunc plain() const {
        if (terms_.empty()) return RatFunc();
        if (!is_plain()) throw precondition_error("symbolic atoms present; no plain value");
        return terms_.begin()->second;
    }

    void add(const Monomial& m, const RatFunc& f);
    friend SymbolicPoly operator+(SymbolicPoly a, const SymbolicPoly& b) {
        for (const auto& [m, f] : b.terms_) a.add(m, f);
        return a;
    }
    friend SymbolicPoly operator-(const SymbolicPoly& a, const SymbolicPoly& b) {
        SymbolicPoly r = a;
        for (const auto& [m, f] : b.terms_) r.add(m, -f);
        return r;
    }
    SymbolicPoly scaled(const RatFunc& s) const;
    friend bool operator==(const SymbolicPoly& a, const SymbolicPoly& b) {
        return a.terms_ == b.terms_;
    }

    std::string str(const std::string& var = "q") const;

  private:
    std::map<Monomial, RatFunc> terms_;
};

// Proper-modification presentation of real spaces: [X] = [Xt] - [E] + [Z].
// Spaces are named; each is either a class over real atoms / previously
// defined spaces, or a glue triple. Evaluation is recursive with cycle
// detection.
class RealGlueDiagram {
  public:
    struct Triple {
        VirtualClass normalization;  // [Xt]
        VirtualClass exceptional;    // [E]
        VirtualClass center;         // [Z]
    };

    explicit RealGlueDiagram(const AtomTable& table) : table_(&table) {}

    void define_class(const std::string& name, const VirtualClass& c);
    void define_glue(const std::string& name, const Triple& t);

    // F2 virtual Betti polynomial in t of a named space.
    FracPoly eval(const std::string& name) const;

  private:
    FracPoly eval_rec(const std::string& name, std::set<std::string>& active) const;
    FracPoly eval_class(const VirtualClass& c, std::set<std::string>& active) const;

    const AtomTable* table_;
    std::map<std::string, VirtualClass> classes_;
    std::map<std::string, Triple> glues_;
};

}  // namespace wb
