#include <complex>

#include "doctest.h"
#include "workbench/elliptic.hpp"

using namespace wb;

namespace {

RatFunc zeta_pow(const Rat& e) { return RatFunc(FracPoly::monomial(e, 1)); }

// substitute zeta -> 1/zeta
RatFunc zeta_flip(const RatFunc& r) {
    return RatFunc(r.num().stretched(Rat(-1)), r.den().stretched(Rat(-1)));
}

std::complex<double> eval_poly(const FracPoly& p, std::complex<double> z,
                               std::complex<double> two_pi_i) {
    // zeta^a evaluated as exp(2 pi i z a), branch-free
    std::complex<double> sum = 0;
    for (const auto& [e, c] : p.terms())
        sum += c.convert_to<double>() * std::exp(two_pi_i * z * e.convert_to<double>());
    return sum;
}

std::complex<double> theta_product_eval(const ThetaSeries& t, std::complex<double> z,
                                        std::complex<double> tau) {
    const std::complex<double> i(0, 1), two_pi_i = 2.0 * 3.141592653589793238462643 * i;
    std::complex<double> sum = 0;
    for (const auto& [e, v] : t.s.terms()) {
        std::complex<double> coeff =
            eval_poly(v.num(), z, two_pi_i) / eval_poly(v.den(), z, two_pi_i);
        sum += coeff * std::exp(two_pi_i * tau * e.convert_to<double>());
    }
    return -i * sum;
}

std::complex<double> theta_lattice_eval(std::complex<double> z, std::complex<double> tau) {
    const double pi = 3.141592653589793238462643;
    const std::complex<double> i(0, 1);
    std::complex<double> q = std::exp(2.0 * pi * i * tau), sum = 0;
    for (int n = 0; n < 12; ++n) {
        double half = n + 0.5;
        std::complex<double> term =
            std::pow(q, half * half / 2.0) * std::sin((2 * n + 1) * pi * z);
        sum += (n % 2 == 0) ? term : -term;
    }
    return 2.0 * sum;
}

}  // namespace

TEST_CASE("theta expansion invariants") {
    ThetaSeries t = theta_expand(6);
    SUBCASE("leading coefficient") {
        CHECK(t.s.coeff(Rat(1, 8)) == zeta_pow(Rat(1, 2)) - zeta_pow(Rat(-1, 2)));
    }
    SUBCASE("vanishes at zeta = 1") {
        for (const auto& [e, v] : t.s.terms()) CHECK(v.num().eval(1) == 0);
    }
    SUBCASE("odd under zeta -> 1/zeta") {
        for (const auto& [e, v] : t.s.terms()) CHECK(zeta_flip(v) == -v);
    }
    SUBCASE("z-derivative does not vanish at zeta = 1") {
        CHECK(t.sprime.coeff(Rat(1, 8)).num().eval(1) == 1);
    }
}

TEST_CASE("theta product form matches the lattice sum numerically") {
    ThetaSeries t = theta_expand(12);
    const std::complex<double> points[][2] = {
        {{0.3, 0.0}, {0.0, 0.7}},
        {{0.11, 0.0}, {0.0, 0.5}},
        {{0.2, 0.1}, {0.0, 0.8}},
    };
    for (const auto& pt : points) {
        std::complex<double> a = theta_product_eval(t, pt[0], pt[1]);
        std::complex<double> b = theta_lattice_eval(pt[0], pt[1]);
        CHECK(std::abs(a - b) <= 1e-10 * std::abs(b));
    }
}

TEST_CASE("chern root products") {
    auto p2 = projective_space_model(2);
    SUBCASE("total Chern class") {
        TruncSeries<Rat> f(1, 2);
        f.add_term({0}, 1);
        f.add_term({1}, 1);
        CHECK(chern_root_product(p2, f) == std::vector<Rat>{1, 3, 3});
    }
    SUBCASE("1 + y^2 gives the second power sum") {
        TruncSeries<Rat> f(1, 2);
        f.add_term({0}, 1);
        f.add_term({2}, 1);
        // p_2 = c_1^2 - 2 c_2 = (9 - 6) h^2
        CHECK(chern_root_product(p2, f) == std::vector<Rat>{1, 0, 3});
    }
    SUBCASE("exponential on the line") {
        TruncSeries<Rat> f(1, 1);
        f.add_term({0}, 1);
        f.add_term({1}, 1);
        CHECK(chern_root_product(projective_space_model(1), f) == std::vector<Rat>{1, 2});
    }
    SUBCASE("insufficient order") {
        TruncSeries<Rat> f(1, 1);
        f.add_term({0}, 1);
        CHECK_THROWS_AS(chern_root_product(p2, f), input_error);
    }
}

TEST_CASE("chi_y oracle") {
    FracPoly y = FracPoly::var();
    FracPoly one(Rat(1));
    CHECK(chi_y(projective_space_model(0)) == one);
    CHECK(chi_y(projective_space_model(1)) == one + y);
    CHECK(chi_y(projective_space_model(2)) == one + y + y * y);
    CHECK(chi_y(projective_space_model(3)) == one + y + y * y + y * y * y);
}

TEST_CASE("elliptic genus of a point") {
    JacobiSeries g = bl_genus(projective_space_model(0), 4);
    CHECK(g == JacobiSeries::constant(RatFunc(Rat(1)), Rat(4)));
}

TEST_CASE("q^0 coefficient specializes to chi_{-y}") {
    for (int n : {1, 2}) {
        auto m = projective_space_model(n);
        JacobiSeries g = bl_genus(m, 2);
        RatFunc q0 = g.coeff(0);
        // normalization: zeta^{d/2} q0 = chi polynomial with y read as zeta
        CHECK(q0 * zeta_pow(Rat(n, 2)) == RatFunc(chi_y(m)));
        // Serre-duality palindromicity: q0 is invariant under zeta -> 1/zeta
        CHECK(zeta_flip(q0) == q0);
    }
    // explicit value for the line: zeta^{1/2} + zeta^{-1/2}
    RatFunc q0 = bl_genus(projective_space_model(1), 1).coeff(0);
    CHECK(q0 == zeta_pow(Rat(1, 2)) + zeta_pow(Rat(-1, 2)));
}

TEST_CASE("crepant divisor factors are exactly 1") {
    CohomologyModel crepant = blowup_p2_model();
    crepant.discrepancies = {Rat(0)};
    CohomologyModel bare = crepant;
    bare.divisors.clear();
    bare.discrepancies.clear();
    for (int q = 0; q <= 3; ++q) CHECK(bl_genus(crepant, q) == bl_genus(bare, q));
}

TEST_CASE("blowup invariance of the singular elliptic genus") {
    auto direct = projective_space_model(2);
    auto blowup = blowup_p2_model();
    for (int q = 0; q <= 3; ++q) {
        JacobiSeries a = bl_genus(direct, q);
        JacobiSeries b = bl_genus(blowup, q);
        CHECK(a == b);
    }
    // perturbing the discrepancy must break the match
    CohomologyModel wrong = blowup_p2_model();
    wrong.discrepancies = {Rat(2)};
    CHECK(!(bl_genus(wrong, 3) == bl_genus(direct, 3)));
}

TEST_CASE("model validation and preconditions") {
    SUBCASE("log-terminality") {
        CohomologyModel m = blowup_p2_model();
        m.discrepancies = {Rat(-1)};
        CHECK_THROWS_AS(bl_genus(m, 2), precondition_error);
    }
    SUBCASE("grading violation") {
        CohomologyModel m = projective_space_model(2);
        m.products[{1, 1}] = {1, 0, 0};  // degree-4 product landing in degree 0
        CHECK_THROWS_AS(bl_genus(m, 2), input_error);
    }
    SUBCASE("broken unit") {
        CohomologyModel m = projective_space_model(1);
        m.products[{0, 1}] = {0, 0};
        CHECK_THROWS_AS(bl_genus(m, 2), input_error);
    }
    SUBCASE("chi_y refuses divisors") {
        CHECK_THROWS_AS(chi_y(blowup_p2_model()), precondition_error);
    }
}
