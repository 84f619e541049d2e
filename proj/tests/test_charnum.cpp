#include <map>
#include <random>

#include "doctest.h"
#include "workbench/charnum.hpp"

using namespace wb;

namespace {

SWPolynomial sw_mono(std::initializer_list<int> subs) {
    SWMonomial m(subs);
    std::sort(m.begin(), m.end());
    SWPolynomial p;
    p.toggle(m);
    return p;
}

SWPolynomial sw_mul(const SWPolynomial& a, const SWPolynomial& b) {
    SWPolynomial r;
    for (const auto& m1 : a.monos)
        for (const auto& m2 : b.monos) {
            SWMonomial m = m1;
            m.insert(m.end(), m2.begin(), m2.end());
            std::sort(m.begin(), m.end());
            r.toggle(m);
        }
    return r;
}

// mod-2 Newton polynomial s_k(w_1, ..., w_k): s_k = sum w_i s_{k-i} + k w_k
SWPolynomial s_number_poly(int k) {
    std::vector<SWPolynomial> s(k + 1);
    for (int d = 1; d <= k; ++d) {
        SWPolynomial acc;
        for (int i = 1; i < d; ++i) acc = acc + sw_mul(sw_mono({i}), s[d - i]);
        if (d % 2 == 1) acc = acc + sw_mono({d});
        s[d] = acc;
    }
    return s[k];
}

int binom_mod2(int top, int bot) {
    if (bot < 0 || bot > top) return 0;
    return (bot & ~top) == 0 ? 1 : 0;
}

// independent oracle for RP^m x RP^n: two-variable truncated F2 ring computed
// from scratch with w_k = sum_i C(m+1, i) C(n+1, k-i) a^i b^{k-i}
int rp_product_number_oracle(int m, int n, const SWMonomial& partition) {
    using Poly = std::map<std::pair<int, int>, int>;
    auto mul = [&](const Poly& x, const Poly& y) {
        Poly r;
        for (const auto& [k1, c1] : x)
            for (const auto& [k2, c2] : y) {
                int a = k1.first + k2.first, b = k1.second + k2.second;
                if (a > m || b > n) continue;
                r[{a, b}] = (r[{a, b}] + c1 * c2) % 2;
            }
        return r;
    };
    Poly acc = {{{0, 0}, 1}};
    for (int j : partition) {
        Poly wj;
        for (int i = 0; i <= j; ++i)
            if (binom_mod2(m + 1, i) && binom_mod2(n + 1, j - i) && i <= m && j - i <= n)
                wj[{i, j - i}] ^= 1;
        acc = mul(acc, wj);
    }
    auto it = acc.find({m, n});
    return it == acc.end() ? 0 : it->second;
}

}  // namespace

TEST_CASE("Stiefel-Whitney numbers of built-in atoms") {
    auto rp2 = ManifoldAtom::rp(2);
    CHECK(sw_number(rp2, {2}) == 1);
    CHECK(sw_number(rp2, {1, 1}) == 1);
    CHECK_THROWS_AS(sw_number(rp2, {1}), input_error);

    auto s4 = ManifoldAtom::sphere(4);
    CHECK(sw_number(s4, {4}) == 0);
    CHECK(sw_number(s4, {2, 2}) == 0);
    CHECK(sw_number(s4, {1, 1, 2}) == 0);

    // closed-form oracle for RP^n: w_{i_1}...w_{i_k} = prod C(n+1, i_j) mod 2
    std::mt19937 rng(99);
    for (int n : {3, 4, 5, 6, 8}) {
        auto rp = ManifoldAtom::rp(n);
        for (int trial = 0; trial < 20; ++trial) {
            SWMonomial part;
            int left = n;
            while (left > 0) {
                int j = 1 + static_cast<int>(rng() % left);
                part.push_back(j);
                left -= j;
            }
            std::sort(part.begin(), part.end());
            int expect = 1;
            for (int j : part) expect &= binom_mod2(n + 1, j);
            CHECK(sw_number(rp, part) == expect);
        }
    }
}

TEST_CASE("Whitney product on RP^m x RP^n against an independent oracle") {
    std::mt19937 rng(1234);
    for (auto [m, n] : {std::pair{2, 2}, {2, 4}, {4, 4}, {2, 6}, {3, 5}}) {
        auto prod = atom_product(ManifoldAtom::rp(m), ManifoldAtom::rp(n));
        for (int trial = 0; trial < 20; ++trial) {
            SWMonomial part;
            int left = m + n;
            while (left > 0) {
                int j = 1 + static_cast<int>(rng() % left);
                part.push_back(j);
                left -= j;
            }
            std::sort(part.begin(), part.end());
            CHECK(sw_number(prod, part) == rp_product_number_oracle(m, n, part));
        }
    }
}

TEST_CASE("Steenrod squares on the universal symbols") {
    CHECK(steenrod_sq(0, sw_mono({3})) == sw_mono({3}));
    CHECK(steenrod_sq(1, sw_mono({1})) == sw_mono({1, 1}));
    CHECK(steenrod_sq(1, sw_mono({2})) == sw_mono({1, 2}) + sw_mono({3}));
    CHECK(steenrod_sq(5, sw_mono({2})) == SWPolynomial{});
    CHECK(steenrod_sq(2, sw_mono({2})) == sw_mono({2, 2}));
    // Cartan on a product
    CHECK(steenrod_sq(1, sw_mono({1, 1})) == SWPolynomial{});  // 2 w_1 Sq^1 w_1 = 0
    CHECK(steenrod_sq(2, sw_mono({1, 1})) == sw_mono({1, 1, 1, 1}));
}

TEST_CASE("Wu classes") {
    CHECK(wu_class(1) == sw_mono({1}));
    CHECK(wu_class(2) == sw_mono({2}) + sw_mono({1, 1}));
    CHECK(wu_class(3) == sw_mono({1, 2}));
    SUBCASE("Sq(v) = w through degree 10") {
        for (int n = 1; n <= 10; ++n) {
            SWPolynomial total;
            for (int k = 0; k <= n; ++k) total = total + steenrod_sq(k, wu_class(n - k));
            CHECK(total == sw_mono({n}));
        }
    }
}

TEST_CASE("spanning sets of unoriented bordism") {
    CHECK(spanning_set(3).empty());   // no partition of 3 avoids 2^j - 1 parts
    CHECK(spanning_set(4).size() == 2);  // 4, 2+2
    CHECK(spanning_set(8).size() == 5);  // 8, 6+2, 4+4, 4+2+2, 2+2+2+2
    for (const auto& a : spanning_set(8)) CHECK(a.dim == 8);
    CHECK_THROWS_AS(spanning_set(9), input_error);  // part 9 has no atom on file
    // the dimension-5 generator is indecomposable: odd Newton s-number
    CHECK(sw_number(ManifoldAtom::dold(1, 2), s_number_poly(5)) == 1);
    CHECK(sw_number(ManifoldAtom::rp(2), s_number_poly(2)) == 1);
}

TEST_CASE("invariant span ranks") {
    CHECK(invariant_span_rank(3) == 0);
    CHECK(invariant_span_rank(5) == 0);
    CHECK(invariant_span_rank(7) == 0);
    CHECK(invariant_span_rank(2) == 1);  // bounded by dim MO_2 = 1
    CHECK(invariant_span_rank(4) == 2);
    CHECK(invariant_span_rank(6) == 2);
    CHECK(invariant_span_rank(8) == 3);
}

TEST_CASE("span equivalence of the two functional families") {
    for (int n = 2; n <= 8; ++n) CHECK(span_equivalence(n));
}

TEST_CASE("flop relation") {
    CHECK(flop_relation_check(1));  // degenerate, vacuous
    CHECK(flop_relation_check(2));  // RP^4 x RP^4 vs (RP^2)^4 in dimension 8
    // a non-invariant probe number is allowed to differ
    auto x = atom_product(ManifoldAtom::rp(4), ManifoldAtom::rp(4));
    auto y = atom_product(atom_product(ManifoldAtom::rp(2), ManifoldAtom::rp(2)),
                          atom_product(ManifoldAtom::rp(2), ManifoldAtom::rp(2)));
    CHECK(sw_number(x, {2, 2, 2, 2}) != sw_number(y, {2, 2, 2, 2}));
}

TEST_CASE("Ochanine genus via the logarithm") {
    GenusElem d = GenusElem::delta(), e = GenusElem::epsilon();
    CHECK(ochanine_cp(0) == GenusElem::constant(1));
    CHECK(ochanine_cp(2) == d);
    // phi(CP^4) = (3 delta^2 - epsilon)/2
    CHECK(ochanine_cp(4) == (d * d).scaled(Rat(3, 2)) - e.scaled(Rat(1, 2)));
    for (int n : {1, 3, 5, 7}) CHECK(ochanine_cp(n).is_zero());

    SUBCASE("gamma basis: phi(CP^4) = 2 gamma + delta^2") {
        auto gb = gamma_basis(ochanine_cp(4));
        std::map<std::pair<int, int>, Rat> expect{{{2, 0}, 1}, {{0, 1}, 2}};
        CHECK(gb == expect);
    }
    SUBCASE("gamma basis: phi(CP^6) = delta^3 + 6 delta gamma") {
        auto gb = gamma_basis(ochanine_cp(6));
        std::map<std::pair<int, int>, Rat> expect{{{3, 0}, 1}, {{1, 1}, 6}};
        CHECK(gb == expect);
    }
    SUBCASE("gamma basis: phi(CP^8) = delta^4 + 12 delta^2 gamma + 6 gamma^2") {
        auto gb = gamma_basis(ochanine_cp(8));
        std::map<std::pair<int, int>, Rat> expect{{{4, 0}, 1}, {{2, 1}, 12}, {{0, 2}, 6}};
        CHECK(gb == expect);
    }
}

TEST_CASE("logarithm route equals the Pontryagin-class route") {
    for (int n = 0; n <= 8; ++n) CHECK(ochanine_cp(n) == ochanine_cp_pontryagin(n));
}

TEST_CASE("image of the Ochanine genus") {
    GenusElem p2 = ochanine_cp(2), p4 = ochanine_cp(4), p8 = ochanine_cp(8);
    GenusElem two_gamma = p4 - p2 * p2;
    SUBCASE("2 gamma and 2 gamma^2 are integer combinations of the phi's") {
        std::map<std::pair<int, int>, Rat> expect_2g{{{0, 1}, 2}};
        CHECK(gamma_basis(two_gamma) == expect_2g);
        GenusElem p2sq = p2 * p2;
        GenusElem two_gamma_sq =
            (p8 - p2sq * p2sq - (p2sq * two_gamma).scaled(6)) - two_gamma * two_gamma;
        std::map<std::pair<int, int>, Rat> expect_2g2{{{0, 2}, 2}};
        CHECK(gamma_basis(two_gamma_sq) == expect_2g2);
    }
    SUBCASE("membership tests") {
        for (int n = 0; n <= 8; n += 2) CHECK(in_image_ring(ochanine_cp(n)));
        CHECK(in_image_ring(GenusElem::delta()));
        CHECK(in_image_ring(two_gamma));
        // gamma itself is outside Z[delta, 2 gamma, 2 gamma^2, ...]
        GenusElem gamma = two_gamma.scaled(Rat(1, 2));
        CHECK(!in_image_ring(gamma));
        // half-integers are outside
        CHECK(!in_image_ring(GenusElem::constant(Rat(1, 2))));
    }
}
