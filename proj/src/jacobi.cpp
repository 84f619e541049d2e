#include "workbench/jacobi.hpp"

namespace wb {

RatFunc zeta_log_derivative(const RatFunc& v) {
    if (v.is_zero()) return v;
    if (!v.den().is_constant() && v.den().num_terms() != 1)
        throw precondition_error("z d/dz needs a Laurent polynomial");
    FracPoly laurent = v.num();
    if (!v.den().is_constant()) laurent = laurent.shifted(-v.den().min_exp());
    FracPoly out;
    for (const auto& [e, c] : laurent.terms()) out.add_term(e, c * e);
    return RatFunc(out);
}

ThetaSeries theta_expand(int order) {
    if (order < 0) throw input_error("negative truncation order");
    Rat cap = Rat(order);
    auto zeta = [](const Rat& e) { return RatFunc(FracPoly::monomial(e, 1)); };

    JacobiSeries s = JacobiSeries::constant(zeta(Rat(1, 2)) - zeta(Rat(-1, 2)), cap);
    for (int n = 1; n <= order; ++n) {
        for (const Rat& e : {Rat(0), Rat(1), Rat(-1)}) {
            JacobiSeries f = JacobiSeries::constant(RatFunc(Rat(1)), cap);
            f.add_term(n, -zeta(e));
            s *= f;
        }
    }

    ThetaSeries t;
    t.order = order;
    // reinstate the q^{1/8} lattice offset on the stored expansions
    t.s = JacobiSeries(cap + Rat(1, 8));
    t.sprime = JacobiSeries(cap + Rat(1, 8));
    for (const auto& [e, v] : s.terms()) {
        t.s.add_term(e + Rat(1, 8), v);
        t.sprime.add_term(e + Rat(1, 8), zeta_log_derivative(v));
    }
    return t;
}

std::vector<JacobiSeries> theta_hat(const Rat& c, int xdeg, int Q) {
    if (xdeg < 0 || Q < 0) throw input_error("negative truncation order");
    Rat cap = Rat(Q);
    auto zeta = [](const Rat& e) { return RatFunc(FracPoly::monomial(e, 1)); };
    auto xs_mul = [&](const std::vector<JacobiSeries>& a, const std::vector<JacobiSeries>& b) {
        std::vector<JacobiSeries> r(xdeg + 1, JacobiSeries(cap));
        for (int i = 0; i < static_cast<int>(a.size()); ++i)
            for (int j = 0; i + j <= xdeg && j < static_cast<int>(b.size()); ++j)
                r[i + j] += a[i] * b[j];
        return r;
    };

    // w^{1/2} - w^{-1/2} with w = e^x z^c
    std::vector<JacobiSeries> out(xdeg + 1, JacobiSeries(cap));
    Rat fact = 1, half_pow = 1;
    for (int k = 0; k <= xdeg; ++k) {
        if (k > 0) {
            fact *= k;
            half_pow /= 2;
        }
        Rat coef = half_pow / fact;  // (1/2)^k / k!
        RatFunc v = zeta(c / 2) * RatFunc(coef) -
                    zeta(-c / 2) * RatFunc((k % 2 == 0) ? coef : -coef);
        out[k] = JacobiSeries::constant(v, cap);
    }

    for (int n = 1; n <= Q; ++n) {
        for (int sign : {1, -1}) {
            // 1 - q^n w^{sign}: expand e^{sign x} z^{sign c}
            std::vector<JacobiSeries> f(xdeg + 1, JacobiSeries(cap));
            f[0] = JacobiSeries::constant(RatFunc(Rat(1)), cap);
            Rat kfact = 1;
            for (int k = 0; k <= xdeg; ++k) {
                if (k > 0) kfact *= k;
                Rat coef = Rat((k % 2 == 0 || sign == 1) ? 1 : -1) / kfact;
                JacobiSeries term(cap);
                term.add_term(n, zeta(Rat(sign) * c) * RatFunc(-coef));
                f[k] += term;
            }
            out = xs_mul(out, f);
        }
    }
    return out;
}

}  // namespace wb
