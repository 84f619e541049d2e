#pragma once

#include <map>
#include <string>
#include <vector>

#include "workbench/rat.hpp"

namespace wb {

// Polynomial with rational exponents (a "Puiseux polynomial"): finitely many
// terms coeff * var^exp with exp an exact rational. Negative exponents are
// allowed; the Laurent case is used for the zeta-coefficients of Jacobi series.
class FracPoly {
  public:
    FracPoly() = default;
    explicit FracPoly(const Rat& c) {
        if (c != 0) terms_[Rat(0)] = c;
    }
    static FracPoly monomial(const Rat& exp, const Rat& coeff) {
        FracPoly p;
        if (coeff != 0) p.terms_[exp] = coeff;
        return p;
    }
    static FracPoly var(const Rat& exp = 1) { return monomial(exp, 1); }

    const std::map<Rat, Rat>& terms() const { return terms_; }
    std::size_t num_terms() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
    }
    Rat constant_term() const {
        auto it = terms_.find(Rat(0));
        return it == terms_.end() ? Rat(0) : it->second;
    }
    Rat coeff(const Rat& exp) const {
        auto it = terms_.find(exp);
        return it == terms_.end() ? Rat(0) : it->second;
    }
    Rat min_exp() const {
        if (terms_.empty()) throw internal_error("min_exp of zero polynomial");
        return terms_.begin()->first;
    }
    Rat max_exp() const {
        if (terms_.empty()) throw internal_error("max_exp of zero polynomial");
        return terms_.rbegin()->first;
    }
    Rat leading_coeff() const {
        if (terms_.empty()) return Rat(0);
        return terms_.rbegin()->second;
    }

    void add_term(const Rat& exp, const Rat& coeff) {
        if (coeff == 0) return;
        auto [it, fresh] = terms_.emplace(exp, coeff);
        if (!fresh) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    FracPoly& operator+=(const FracPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    FracPoly& operator-=(const FracPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend FracPoly operator+(FracPoly a, const FracPoly& b) { return a += b; }
    friend FracPoly operator-(FracPoly a, const FracPoly& b) { return a -= b; }
    friend FracPoly operator-(const FracPoly& a) {
        FracPoly r;
        for (const auto& [e, c] : a.terms_) r.terms_[e] = -c;
        return r;
    }
    friend FracPoly operator*(const FracPoly& a, const FracPoly& b) {
        FracPoly r;
        for (const auto& [e1, c1] : a.terms_)
            for (const auto& [e2, c2] : b.terms_) r.add_term(e1 + e2, c1 * c2);
        return r;
    }
    FracPoly& operator*=(const FracPoly& o) { return *this = *this * o; }
    friend FracPoly operator*(const FracPoly& a, const Rat& s) {
        FracPoly r;
        if (s == 0) return r;
        for (const auto& [e, c] : a.terms_) r.terms_[e] = c * s;
        return r;
    }
    friend bool operator==(const FracPoly& a, const FracPoly& b) { return a.terms_ == b.terms_; }

    // Shift all exponents by s.
    FracPoly shifted(const Rat& s) const {
        FracPoly r;
        for (const auto& [e, c] : terms_) r.terms_[e + s] = c;
        return r;
    }

    // Substitute var -> var^s (s != 0).
    FracPoly stretched(const Rat& s) const {
        FracPoly r;
        for (const auto& [e, c] : terms_) r.terms_[e * s] = c;
        return r;
    }

    // Exact evaluation; errors when an exponent requires an inexact root.
    Rat eval(const Rat& x) const {
        Rat sum = 0;
        for (const auto& [e, c] : terms_) {
            auto p = rat_pow(x, e);
            if (!p)
                throw precondition_error("no exact rational value for " + rat_str(x) + "^" +
                                         rat_str(e));
            sum += c * *p;
        }
        return sum;
    }

    // lcm of exponent denominators (1 for the zero polynomial).
    BigInt exponent_lcm() const {
        BigInt l = 1;
        for (const auto& [e, c] : terms_) l = lcm(l, denominator(e));
        return l;
    }

    // Coefficient vector c[0..deg] after t = var^(1/N); requires nonnegative
    // exponents and N a multiple of every exponent denominator.
    std::vector<Rat> lattice_coeffs(const BigInt& N) const;
    static FracPoly from_lattice(const std::vector<Rat>& c, const BigInt& N);

    std::string str(const std::string& var = "q") const;

  private:
    std::map<Rat, Rat> terms_;
};

// Monic gcd of two integer-lattice polynomials given as coefficient vectors.
std::vector<Rat> poly_gcd(std::vector<Rat> a, std::vector<Rat> b);
std::vector<Rat> poly_divexact(const std::vector<Rat>& a, const std::vector<Rat>& b);

}  // namespace wb
