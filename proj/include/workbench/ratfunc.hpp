#pragma once

#include "workbench/fracpoly.hpp"

namespace wb {

// Normalized rational function in one symbol with rational exponents.
// Canonical form: substitute t = var^(1/N) for N = lcm of exponent
// denominators, pull out a monomial so numerator and denominator have nonzero
// constant terms, reduce by the polynomial gcd, make the denominator monic,
// then reinstate the monomial on the numerator side. Equal rational functions
// get identical representations, so independence checks are string equality.
class RatFunc {
  public:
    RatFunc() : num_(Rat(0)), den_(Rat(1)) {}
    explicit RatFunc(const Rat& c) : num_(c), den_(Rat(1)) {}
    RatFunc(const FracPoly& n, const FracPoly& d) { normalize(n, d); }
    explicit RatFunc(const FracPoly& n) { normalize(n, FracPoly(Rat(1))); }

    const FracPoly& num() const { return num_; }
    const FracPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_ == FracPoly(Rat(1)); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw precondition_error("division by zero rational function");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    RatFunc inv() const { return RatFunc(FracPoly(Rat(1))) / *this; }

    // Exact evaluation at a rational point (denominator must not vanish).
    Rat eval(const Rat& x) const {
        Rat d = den_.eval(x);
        if (d == 0) throw precondition_error("rational function pole at " + rat_str(x));
        return num_.eval(x) / d;
    }

    std::string str(const std::string& var = "q") const {
        if (is_polynomial()) return num_.str(var);
        std::string n = num_.str(var);
        if (num_.num_terms() > 1) n = "(" + n + ")";
        return n + "/(" + den_.str(var) + ")";
    }

  private:
    void normalize(const FracPoly& n, const FracPoly& d);

    FracPoly num_, den_;
};

}  // namespace wb
