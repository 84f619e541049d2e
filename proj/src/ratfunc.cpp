#include "workbench/ratfunc.hpp"

namespace wb {

void RatFunc::normalize(const FracPoly& n, const FracPoly& d) {
    if (d.is_zero()) throw precondition_error("zero denominator");
    if (n.is_zero()) {
        num_ = FracPoly();
        den_ = FracPoly(Rat(1));
        return;
    }
    // shift so both sides have min exponent 0, remember the net monomial
    Rat alpha = n.min_exp();
    Rat beta = d.min_exp();
    FracPoly n0 = n.shifted(-alpha);
    FracPoly d0 = d.shifted(-beta);
    Rat shift = alpha - beta;

    BigInt N = lcm(n0.exponent_lcm(), d0.exponent_lcm());
    std::vector<Rat> nc = n0.lattice_coeffs(N);
    std::vector<Rat> dc = d0.lattice_coeffs(N);
    std::vector<Rat> g = poly_gcd(nc, dc);
    if (g.size() > 1) {
        nc = poly_divexact(nc, g);
        dc = poly_divexact(dc, g);
    }
    // monic denominator; fold the scalar into the numerator
    Rat lead = dc.back();
    for (auto& x : dc) x /= lead;
    for (auto& x : nc) x /= lead;

    num_ = FracPoly::from_lattice(nc, N);
    den_ = FracPoly::from_lattice(dc, N);
    // reinstate the monomial on the appropriate side
    if (shift >= 0)
        num_ = num_.shifted(shift);
    else
        den_ = den_.shifted(-shift);
}

}  // namespace wb
