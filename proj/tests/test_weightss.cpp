#include <random>

#include "doctest.h"
#include "workbench/grothendieck.hpp"
#include "workbench/weightss.hpp"

using namespace wb;

namespace {

// X = P^1, D = {0, infinity}, U = G_m.
SNCData gm_snc() {
    SNCData s;
    s.m = 2;
    s.betti = {{1, 0, 1}, {2}, {}};
    Matrix d(2, 1);
    d.at(0, 0) = 1;
    d.at(1, 0) = 1;
    s.d1[{0, 0}] = d;
    return s;
}

}  // namespace

TEST_CASE("E1 from SNC data") {
    SUBCASE("G_m example") {
        auto ss = build_e1(gm_snc());
        CHECK(ss.dim(1, 0, 0) == 1);
        CHECK(ss.dim(1, 1, 0) == 2);
        CHECK(ss.dim(1, 0, 2) == 1);
        CHECK(ss.dim(1, 0, 1) == 0);
    }
    SUBCASE("no divisors: single column") {
        SNCData s;
        s.m = 0;
        s.betti = {{1, 0, 1, 0, 1}};  // P^2
        auto ss = build_e1(s);
        for (int j : {0, 2, 4}) CHECK(ss.dim(1, 0, j) == 1);
    }
    SUBCASE("shape mismatch rejected") {
        SNCData s = gm_snc();
        s.d1[{0, 0}] = Matrix(3, 1);
        CHECK_THROWS_AS(build_e1(s), input_error);
    }
    SUBCASE("d1 . d1 != 0 rejected") {
        SNCData s;
        s.m = 2;
        s.betti = {{1}, {1}, {1}};
        Matrix one(1, 1);
        one.at(0, 0) = 1;
        s.d1[{0, 0}] = one;
        s.d1[{1, 0}] = one;
        CHECK_THROWS_AS(build_e1(s), input_error);
    }
}

TEST_CASE("E2 of the G_m spectral sequence") {
    auto ss = compute_e2(build_e1(gm_snc()));
    CHECK(ss.dim(2, 0, 0) == 0);
    CHECK(ss.dim(2, 1, 0) == 1);
    CHECK(ss.dim(2, 0, 2) == 1);
    CHECK(weight_graded(ss, 1) == std::vector<int>{1});
    CHECK(weight_graded(ss, 2) == std::vector<int>{1});
    CHECK(weight_graded(ss, 0).empty());
    CHECK(vpp_from_ss(ss) == FracPoly::var() - FracPoly(Rat(1)));
}

TEST_CASE("zero differential gives E2 = E1") {
    SNCData s;
    s.m = 1;
    s.betti = {{2, 1}, {1, 1}};
    auto ss = compute_e2(build_e1(s));
    CHECK(ss.page(2) == ss.page(1));
}

TEST_CASE("weight purity of smooth compact input") {
    SNCData s;
    s.m = 0;
    s.betti = {{1, 0, 1, 0, 1}};
    auto ss = compute_e2(build_e1(s));
    for (int n : {0, 2, 4}) CHECK(weight_graded(ss, n) == std::vector<int>{1});
    CHECK(vpp_from_ss(ss) == vpp(AtomTable{}, VirtualClass::atom("P2")));
}

TEST_CASE("toric builder") {
    AtomTable table;
    SUBCASE("n=1 reproduces the P^1 data") {
        auto s = toric_builder(1);
        CHECK(s.betti[0] == std::vector<int>{1, 0, 1});
        CHECK(s.betti[1] == std::vector<int>{2});
        auto ss = compute_e2(build_e1(s));
        CHECK(ss.dim(2, 1, 0) == 1);
        CHECK(ss.dim(2, 0, 2) == 1);
    }
    SUBCASE("n=2: E1 bottom row and H_c dims") {
        auto s = toric_builder(2);
        CHECK(s.betti[0][0] == 1);
        CHECK(s.betti[1][0] == 4);
        CHECK(s.betti[2][0] == 4);
        auto ss = compute_e2(build_e1(s));
        // H^k_c(G_m^2) read along antidiagonals i+j=k
        std::vector<int> hc(5, 0);
        for (const auto& [spot, dim] : ss.page(2)) hc[spot.first + spot.second] += dim;
        CHECK(hc == std::vector<int>{0, 0, 1, 2, 1});
    }
    SUBCASE("n=3: H_c dims are binomial") {
        auto ss = compute_e2(build_e1(toric_builder(3)));
        std::vector<int> hc(7, 0);
        for (const auto& [spot, dim] : ss.page(2)) hc[spot.first + spot.second] += dim;
        CHECK(hc == std::vector<int>{0, 0, 0, 1, 3, 3, 1});
    }
    SUBCASE("vpp_from_ss matches the motivic class of G_m^n") {
        for (int n = 1; n <= 4; ++n) {
            auto ss = compute_e2(build_e1(toric_builder(n)));
            VirtualClass gm = VirtualClass::atom("point");
            for (int i = 0; i < n; ++i) gm = gm * VirtualClass::atom("Gm");
            CHECK(vpp_from_ss(ss) == vpp(table, gm));
        }
    }
    SUBCASE("range check") {
        CHECK_THROWS_AS(toric_builder(0), input_error);
        CHECK_THROWS_AS(toric_builder(7), input_error);
    }
}

TEST_CASE("toric filtered complex: honest higher pages") {
    for (int n = 1; n <= 3; ++n) {
        CAPTURE(n);
        auto fc = toric_filtered_complex(n);
        auto ss = pages(fc);
        CHECK(ss.stabilized);
        // degeneration at E2 over Q: page 2 already equals E_infinity
        CHECK(ss.page(2) == ss.page(ss.last_page));
        // E2 agrees with the SNC-mode computation
        auto snc = compute_e2(build_e1(toric_builder(n)));
        CHECK(ss.page(2) == snc.page(2));
        // total cohomology = H_c(G_m^n): binomial dims in degrees n..2n
        for (int k = 0; k <= 2 * n; ++k) {
            long expect = 0;
            if (k >= n) {
                expect = 1;
                int a = 2 * n - k;
                for (int i = 0; i < a; ++i) expect = expect * (n - i) / (i + 1);
            }
            CHECK(ss.total_cohomology[k] == expect);
        }
    }
}

TEST_CASE("synthetic two-step complex: degeneration is a matter of the field") {
    FilteredComplex fc;
    fc.dims = {1, 2};
    fc.level = {{0}, {1, 2}};
    Matrix d(2, 1);
    d.at(0, 0) = 2;  // y-component
    d.at(1, 0) = 1;  // z-component
    fc.d = {d};

    SUBCASE("over Q: d2 vanishes, E2 = E_infinity") {
        auto ss = pages(fc);
        CHECK(ss.dim(2, 0, 0) == 0);
        CHECK(ss.dim(2, 1, 0) == 0);
        CHECK(ss.dim(2, 2, -1) == 1);
        CHECK(ss.page(2) == ss.page(ss.last_page));
        CHECK(ss.total_cohomology == std::vector<int>{0, 1});
    }
    SUBCASE("over F_2: nonzero d2, E2 != E3") {
        fc.field = LinField{2};
        auto ss = pages(fc);
        // d1 = 0 mod 2, so E2 = E1 with dims 1, 1, 1
        CHECK(ss.dim(2, 0, 0) == 1);
        CHECK(ss.dim(2, 1, 0) == 1);
        CHECK(ss.dim(2, 2, -1) == 1);
        // d2 : (0,0) -> (2,-1) kills both ends
        CHECK(ss.dim(3, 0, 0) == 0);
        CHECK(ss.dim(3, 2, -1) == 0);
        CHECK(ss.dim(3, 1, 0) == 1);
        CHECK(ss.page(2) != ss.page(3));
        CHECK(ss.total_cohomology == std::vector<int>{0, 1});
        CHECK(weight_graded(ss, 1) == std::vector<int>{1});
    }
}

TEST_CASE("trivial filtration: E1 is already the cohomology") {
    FilteredComplex fc;
    fc.dims = {2, 2};
    fc.level = {{0, 0}, {0, 0}};
    Matrix d(2, 2);
    d.at(0, 0) = 1;
    d.at(0, 1) = 1;
    fc.d = {d};
    auto ss = pages(fc);
    CHECK(ss.dim(1, 0, 0) == 1);
    CHECK(ss.dim(1, 0, 1) == 1);
    CHECK(ss.page(1) == ss.page(ss.last_page));
}

TEST_CASE("non-filtered differential is rejected") {
    FilteredComplex fc;
    fc.dims = {1, 1};
    fc.level = {{1}, {0}};
    Matrix d(1, 1);
    d.at(0, 0) = 1;
    fc.d = {d};
    CHECK_THROWS_AS(pages(fc), precondition_error);
}

TEST_CASE("random filtered complexes agree with direct cohomology") {
    // build a filtered complex with known cohomology: a sum of elementary
    // pairs and singletons, conjugated by a random filtered basis change.
    std::mt19937 rng(404);
    std::uniform_int_distribution<int> dim_pick(1, 4), lvl(0, 2), coin(0, 1), entry(-2, 2);

    auto filtered_change = [&](const std::vector<int>& levels) {
        std::size_t n = levels.size();
        Matrix t = Matrix::identity(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (levels[r] > levels[c]) t.at(r, c) = entry(rng);
        return t;
    };
    auto inverse = [&](const LinField& f, const Matrix& t) {
        Matrix inv(t.rows, t.cols);
        for (std::size_t j = 0; j < t.cols; ++j) {
            std::vector<Rat> e(t.rows, Rat(0));
            e[j] = 1;
            auto x = solve(f, t, e);
            REQUIRE(x);
            for (std::size_t i = 0; i < t.rows; ++i) inv.at(i, j) = (*x)[i];
        }
        return inv;
    };

    for (int trial = 0; trial < 25; ++trial) {
        LinField f{trial % 3 == 0 ? 0L : (trial % 3 == 1 ? 2L : 3L)};
        int N = 3;
        std::vector<int> dims(N + 1);
        std::vector<std::vector<int>> level(N + 1);
        for (int n = 0; n <= N; ++n) {
            dims[n] = dim_pick(rng);
            for (int b = 0; b < dims[n]; ++b) level[n].push_back(lvl(rng));
        }
        // pair off generators; a paired target cannot become a later source
        std::vector<Matrix> d;
        std::vector<int> expected(N + 1);
        std::vector<std::vector<bool>> targeted(N + 1);
        for (int n = 0; n <= N; ++n) targeted[n].assign(dims[n], false);
        for (int n = 0; n < N; ++n) {
            Matrix m(dims[n + 1], dims[n]);
            int tgt = 0;
            for (int b = 0; b < dims[n]; ++b) {
                if (targeted[n][b] || coin(rng)) continue;
                while (tgt < dims[n + 1] && targeted[n + 1][tgt]) ++tgt;
                if (tgt == dims[n + 1]) break;
                level[n + 1][tgt] = std::max(level[n + 1][tgt], level[n][b]);
                m.at(tgt, b) = 1;
                targeted[n + 1][tgt] = true;
            }
            d.push_back(m);
        }
        for (int n = 0; n <= N; ++n) {
            int paired = 0;
            for (int b = 0; b < dims[n]; ++b)
                if (targeted[n][b]) ++paired;  // killed as a target
            if (n < N)
                for (int b = 0; b < dims[n]; ++b)
                    for (int r = 0; r < dims[n + 1]; ++r)
                        if (d[n].at(r, b) != 0) ++paired;  // killed as a source
            expected[n] = dims[n] - paired;
        }
        // conjugate by filtered changes of basis (unit determinant, so the
        // same matrices remain invertible mod p)
        std::vector<Matrix> t(N + 1), tinv(N + 1);
        for (int n = 0; n <= N; ++n) {
            t[n] = filtered_change(level[n]);
            tinv[n] = inverse(f, t[n]);
        }
        FilteredComplex fc;
        fc.field = f;
        fc.dims = dims;
        fc.level = level;
        for (int n = 0; n < N; ++n) fc.d.push_back(mat_mul(f, t[n + 1], mat_mul(f, d[n], tinv[n])));

        auto ss = pages(fc);  // internal invariants re-check every page
        CHECK(ss.total_cohomology == expected);
        for (int n = 0; n <= N; ++n) {
            int sum = 0;
            for (auto dim : weight_graded(ss, n)) sum += dim;
            CHECK(sum == expected[n]);
        }
    }
}

TEST_CASE("vpp_from_ss refuses finite characteristic") {
    auto s = gm_snc();
    s.field = LinField{2};
    auto ss = compute_e2(build_e1(s));
    CHECK_THROWS_AS(vpp_from_ss(ss), precondition_error);
}
