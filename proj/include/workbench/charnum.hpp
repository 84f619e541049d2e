#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "workbench/rat.hpp"

namespace wb {

// F2 cohomology monomial: one exponent per ring generator.
using F2Monomial = std::vector<int>;
// F2 polynomial: set of monomials (addition is symmetric difference).
using F2Poly = std::set<F2Monomial>;

// Closed manifold presented by its F2 cohomology ring -- a truncated
// polynomial ring F2[g_1,...]/(g_i^{cap_i + 1}) -- and its total
// Stiefel-Whitney class in that ring. The fundamental class pairs against the
// unique monomial with every exponent at its cap.
struct ManifoldAtom {
    std::string name;
    int dim = 0;
    std::vector<int> gen_degree;
    std::vector<int> gen_cap;
    F2Poly w;  // total Stiefel-Whitney class, constant term 1

    static ManifoldAtom rp(int n);          // RP^n
    static ManifoldAtom dold(int m, int r); // Dold manifold P(m, r)
    static ManifoldAtom sphere(int n);      // w = 1

    void validate() const;
    F2Poly mul(const F2Poly& a, const F2Poly& b) const;
    F2Poly w_part(int j) const;  // degree-j component w_j
    int top_coefficient(const F2Poly& p) const;
};

ManifoldAtom atom_product(const ManifoldAtom& a, const ManifoldAtom& b);

// Monomial in the universal Stiefel-Whitney symbols: sorted subscripts with
// repetition, e.g. {1, 1, 2} = w_1^2 w_2.
using SWMonomial = std::vector<int>;
struct SWPolynomial {
    std::set<SWMonomial> monos;
    void toggle(const SWMonomial& m) {
        auto [it, fresh] = monos.emplace(m);
        if (!fresh) monos.erase(it);
    }
    SWPolynomial operator+(const SWPolynomial& o) const {
        SWPolynomial r = *this;
        for (const auto& m : o.monos) r.toggle(m);
        return r;
    }
    SWPolynomial square() const;  // mod 2: duplicate each factor
    friend bool operator==(const SWPolynomial& a, const SWPolynomial& b) {
        return a.monos == b.monos;
    }
    std::string str() const;
};

// Steenrod square via Wu's formula on the symbols and the Cartan rule.
SWPolynomial steenrod_sq(int i, const SWPolynomial& p);
// Universal Wu class v_i(w_1, w_2, ...) solving Sq(v) = w degree by degree.
SWPolynomial wu_class(int i);

// Stiefel-Whitney number: evaluate the monomial in the presented ring and
// pair with the fundamental class. The monomial degree must equal dim.
int sw_number(const ManifoldAtom& m, const SWMonomial& partition);
int sw_number(const ManifoldAtom& m, const SWPolynomial& p);

// Products of built-in atoms realizing every partition of n into parts that
// are not of the form 2^j - 1 (a spanning set of unoriented bordism MO_n).
std::vector<ManifoldAtom> spanning_set(int n);

// Rank over F2 of the functionals {w_1^i w_{n-i}} on the spanning set.
int invariant_span_rank(int n);
// Same span as {w_1^{n-2i} v_i^2}?
bool span_equivalence(int n);
// Do all invariant numbers agree on (RP^{2^a})^2 and (RP^2)^{2^a}?
bool flop_relation_check(int a);

// ---------------------------------------------------------------------------
// Ochanine elliptic genus, valued in Q[delta, epsilon].
// ---------------------------------------------------------------------------

struct GenusElem {
    std::map<std::pair<int, int>, Rat> c;  // (a, b) -> coeff of delta^a epsilon^b

    static GenusElem constant(const Rat& r) {
        GenusElem g;
        if (r != 0) g.c[{0, 0}] = r;
        return g;
    }
    static GenusElem delta() {
        GenusElem g;
        g.c[{1, 0}] = 1;
        return g;
    }
    static GenusElem epsilon() {
        GenusElem g;
        g.c[{0, 1}] = 1;
        return g;
    }
    void add(int a, int b, const Rat& r) {
        if (r == 0) return;
        auto [it, fresh] = c.emplace(std::make_pair(a, b), r);
        if (!fresh) {
            it->second += r;
            if (it->second == 0) c.erase(it);
        }
    }
    friend GenusElem operator+(const GenusElem& x, const GenusElem& y) {
        GenusElem r = x;
        for (const auto& [k, v] : y.c) r.add(k.first, k.second, v);
        return r;
    }
    friend GenusElem operator-(const GenusElem& x, const GenusElem& y) {
        GenusElem r = x;
        for (const auto& [k, v] : y.c) r.add(k.first, k.second, -v);
        return r;
    }
    friend GenusElem operator*(const GenusElem& x, const GenusElem& y) {
        GenusElem r;
        for (const auto& [k1, v1] : x.c)
            for (const auto& [k2, v2] : y.c)
                r.add(k1.first + k2.first, k1.second + k2.second, v1 * v2);
        return r;
    }
    GenusElem scaled(const Rat& s) const {
        GenusElem r;
        for (const auto& [k, v] : c) r.add(k.first, k.second, v * s);
        return r;
    }
    bool is_zero() const { return c.empty(); }
    friend bool operator==(const GenusElem& x, const GenusElem& y) { return x.c == y.c; }
    std::string str() const;
};

// phi(CP^n) from the logarithm g with g'(t) = (1 - 2 delta t^2 + eps t^4)^{-1/2}.
GenusElem ochanine_cp(int n);
// The same genus through the multiplicative sequence in Pontryagin classes,
// p(CP^n) = (1 + h^2)^{n+1}; an independent route that must agree.
GenusElem ochanine_cp_pontryagin(int n);

// Rewrite in the (delta, gamma) basis via epsilon = delta^2 - 4 gamma.
std::map<std::pair<int, int>, Rat> gamma_basis(const GenusElem& g);
// Membership in Z[delta, 2 gamma, 2 gamma^2, 2 gamma^4, ...]: the coefficient
// of delta^a gamma^b must be an integer divisible by 2^popcount(b).
bool in_image_ring(const GenusElem& g);

}  // namespace wb
