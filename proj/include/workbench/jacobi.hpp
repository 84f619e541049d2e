#pragma once

#include <map>

#include "workbench/ratfunc.hpp"

namespace wb {

// Truncated q-expansion whose coefficients are rational functions of zeta
// (Laurent polynomials in practice). Terms with q-exponent above the cap are
// dropped, so arithmetic is closed at a fixed truncation order.
class JacobiSeries {
  public:
    JacobiSeries() = default;
    explicit JacobiSeries(const Rat& cap) : cap_(cap) {}
    static JacobiSeries constant(const RatFunc& v, const Rat& cap) {
        JacobiSeries s(cap);
        s.add_term(0, v);
        return s;
    }

    const Rat& cap() const { return cap_; }
    const std::map<Rat, RatFunc>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    void add_term(const Rat& e, const RatFunc& v) {
        if (e > cap_ || v.is_zero()) return;
        auto [it, fresh] = c_.emplace(e, v);
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    RatFunc coeff(const Rat& e) const {
        auto it = c_.find(e);
        return it == c_.end() ? RatFunc() : it->second;
    }
    Rat min_exp() const {
        if (c_.empty()) throw internal_error("min_exp of zero series");
        return c_.begin()->first;
    }

    friend JacobiSeries operator+(const JacobiSeries& a, const JacobiSeries& b) {
        JacobiSeries r(std::min(a.cap_, b.cap_));
        for (const auto& [e, v] : a.c_) r.add_term(e, v);
        for (const auto& [e, v] : b.c_) r.add_term(e, v);
        return r;
    }
    friend JacobiSeries operator-(const JacobiSeries& a, const JacobiSeries& b) {
        JacobiSeries r(std::min(a.cap_, b.cap_));
        for (const auto& [e, v] : a.c_) r.add_term(e, v);
        for (const auto& [e, v] : b.c_) r.add_term(e, -v);
        return r;
    }
    friend JacobiSeries operator*(const JacobiSeries& a, const JacobiSeries& b) {
        JacobiSeries r(std::min(a.cap_, b.cap_));
        for (const auto& [e1, v1] : a.c_)
            for (const auto& [e2, v2] : b.c_) r.add_term(e1 + e2, v1 * v2);
        return r;
    }
    friend JacobiSeries operator*(const JacobiSeries& a, const RatFunc& s) {
        JacobiSeries r(a.cap_);
        for (const auto& [e, v] : a.c_) r.add_term(e, v * s);
        return r;
    }
    JacobiSeries& operator+=(const JacobiSeries& o) { return *this = *this + o; }
    JacobiSeries& operator-=(const JacobiSeries& o) { return *this = *this - o; }
    JacobiSeries& operator*=(const JacobiSeries& o) { return *this = *this * o; }
    friend bool operator==(const JacobiSeries& a, const JacobiSeries& b) { return a.c_ == b.c_; }

    // Inverse of a series with invertible constant term and no lower terms.
    JacobiSeries invert() const {
        if (c_.empty() || min_exp() != 0)
            throw precondition_error("series not invertible at this truncation");
        RatFunc a0 = c_.begin()->second;
        JacobiSeries n = *this;
        n.c_.erase(n.c_.begin());
        n = n * a0.inv();  // series = a0 (1 + n)
        JacobiSeries acc = constant(RatFunc(Rat(1)), cap_), term = acc;
        while (true) {
            JacobiSeries next(cap_);
            for (const auto& [e1, v1] : term.c_)
                for (const auto& [e2, v2] : n.c_) next.add_term(e1 + e2, -(v1 * v2));
            if (next.is_zero()) break;
            acc += next;
            term = next;
        }
        return acc * a0.inv();
    }

    // coefficient table in increasing q-exponent
    std::string str() const {
        std::string out;
        for (const auto& [e, v] : c_)
            out += "q^" + rat_str(e) + ": " + v.str("z") + "\n";
        if (out.empty()) out = "0\n";
        return out;
    }

  private:
    Rat cap_{3};
    std::map<Rat, RatFunc> c_;
};

// q-expansion of the Jacobi theta function in the triple-product convention
//   theta = -i q^{1/8} (z^{1/2} - z^{-1/2}) prod_{n>=1} (1-q^n)(1-q^n z)(1-q^n z^{-1})
// with z the multiplicative variable e^{2 pi i z}. The stored series s
// satisfies theta = -i * s; sprime is z d/dz applied coefficientwise, so the
// z-direction derivative is theta' = 2 pi * sprime.
struct ThetaSeries {
    int order = 0;
    JacobiSeries s;
    JacobiSeries sprime;
};

ThetaSeries theta_expand(int order);

// Reduced two-variable theta factor: with w = e^x z^c,
//   that(x, c) = (w^{1/2} - w^{-1/2}) prod_{n=1}^{Q} (1 - q^n w)(1 - q^n / w),
// i.e. theta(x/(2 pi i) + c z) stripped of the prefactor -i q^{1/8} prod(1-q^n),
// which cancels in every ratio the genus formula uses. Returned as coefficients
// of x^0..x^xdeg, each a q-series truncated at order Q.
std::vector<JacobiSeries> theta_hat(const Rat& c, int xdeg, int Q);

// z d/dz on a Laurent polynomial presented as a RatFunc with monomial denominator.
RatFunc zeta_log_derivative(const RatFunc& v);

}  // namespace wb
