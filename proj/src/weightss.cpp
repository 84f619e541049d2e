#include "workbench/weightss.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace wb {

namespace {

Matrix zero_matrix(int rows, int cols) {
    return Matrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
}

Matrix snc_d1(const SNCData& s, int i, int j) {
    auto it = s.d1.find({i, j});
    if (it != s.d1.end()) return it->second;
    return zero_matrix(s.b(i + 1, j), s.b(i, j));
}

}  // namespace

int FilteredComplex::depth() const {
    int p = 0;
    for (const auto& lv : level)
        for (int l : lv) p = std::max(p, l);
    return p;
}

void FilteredComplex::validate() const {
    if (dims.size() != level.size() || d.size() + 1 != dims.size())
        throw precondition_error("filtered complex: inconsistent degree counts");
    for (std::size_t n = 0; n < dims.size(); ++n) {
        if (static_cast<int>(level[n].size()) != dims[n])
            throw precondition_error("filtered complex: level table shape mismatch");
        for (int l : level[n])
            if (l < 0) throw precondition_error("filtered complex: negative filtration level");
    }
    for (std::size_t n = 0; n < d.size(); ++n) {
        if (static_cast<int>(d[n].rows) != dims[n + 1] || static_cast<int>(d[n].cols) != dims[n])
            throw precondition_error("filtered complex: differential shape mismatch");
        // d must map F^p into F^p: column b may only hit rows of level >= level(b)
        for (std::size_t b = 0; b < d[n].cols; ++b)
            for (std::size_t r = 0; r < d[n].rows; ++r)
                if (field.reduce(d[n].at(r, b)) != 0 && level[n + 1][r] < level[n][b])
                    throw precondition_error(
                        "filtered complex: differential does not preserve the filtration");
    }
    for (std::size_t n = 0; n + 1 < d.size(); ++n) {
        Matrix sq = mat_mul(field, d[n + 1], d[n]);
        for (const auto& x : sq.a)
            if (field.reduce(x) != 0) throw precondition_error("filtered complex: d^2 != 0");
    }
}

SpectralSequence build_e1(const SNCData& s) {
    if (s.m < 0 || static_cast<int>(s.betti.size()) != s.m + 1)
        throw input_error("SNC data: need Betti tables for X^(0)..X^(m)");
    for (const auto& row : s.betti)
        for (int b : row)
            if (b < 0) throw input_error("SNC data: negative Betti number");
    for (const auto& [key, mat] : s.d1) {
        auto [i, j] = key;
        if (static_cast<int>(mat.rows) != s.b(i + 1, j) || static_cast<int>(mat.cols) != s.b(i, j))
            throw input_error("SNC data: d1 matrix shape mismatch at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
    }
    // d1 . d1 = 0
    for (int i = 0; i + 2 <= s.m; ++i)
        for (int j = 0; j < static_cast<int>(s.betti[i].size()); ++j) {
            Matrix sq = mat_mul(s.field, snc_d1(s, i + 1, j), snc_d1(s, i, j));
            for (const auto& x : sq.a)
                if (s.field.reduce(x) != 0) throw input_error("SNC data: d1 . d1 != 0");
        }

    SpectralSequence ss;
    ss.field = s.field;
    ss.last_page = 1;
    for (int i = 0; i <= s.m; ++i)
        for (int j = 0; j < static_cast<int>(s.betti[i].size()); ++j)
            if (s.betti[i][j] > 0) ss.pages[1][{i, j}] = s.betti[i][j];
    for (int i = 0; i < s.m; ++i)
        for (int j = 0; j < static_cast<int>(s.betti[i].size()); ++j)
            if (s.b(i, j) > 0 || s.b(i + 1, j) > 0) ss.d1[{i, j}] = snc_d1(s, i, j);
    return ss;
}

SpectralSequence compute_e2(SpectralSequence ss) {
    if (ss.pages.find(1) == ss.pages.end()) throw precondition_error("E1 not built");
    auto get_d1 = [&](int i, int j) {
        auto it = ss.d1.find({i, j});
        if (it != ss.d1.end()) return it->second;
        return zero_matrix(ss.dim(1, i + 1, j), ss.dim(1, i, j));
    };
    std::map<std::pair<int, int>, int> e2;
    for (const auto& [spot, dim1] : ss.page(1)) {
        auto [i, j] = spot;
        int ker = dim1 - static_cast<int>(rank(ss.field, get_d1(i, j)));
        int im = static_cast<int>(rank(ss.field, get_d1(i - 1, j)));
        int d2 = ker - im;
        if (d2 < 0) throw internal_error("negative E2 dimension");
        if (d2 > 0) e2[spot] = d2;
    }
    ss.pages[2] = std::move(e2);
    ss.last_page = 2;
    return ss;
}

namespace {

// Basis of Z_r^{p,q} = F^p C^n  intersect  d^{-1}(F^{p+r} C^{n+1}),
// as columns in ambient C^n coordinates. Large r means "d v = 0".
Matrix z_space(const FilteredComplex& fc, int n, int p, int r) {
    if (n < 0 || n >= fc.degrees()) return Matrix(0, 0);
    int dim_n = fc.dims[n];
    std::vector<std::size_t> fp_cols;
    for (int b = 0; b < dim_n; ++b)
        if (fc.level[n][b] >= p) fp_cols.push_back(b);
    if (fp_cols.empty()) return Matrix(static_cast<std::size_t>(dim_n), 0);

    // rows of C^{n+1} outside F^{p+r}
    std::vector<std::size_t> out_rows;
    if (n + 1 < fc.degrees())
        for (int b = 0; b < fc.dims[n + 1]; ++b)
            if (fc.level[n + 1][b] < p + r) out_rows.push_back(b);

    Matrix a(out_rows.size(), fp_cols.size());
    for (std::size_t ri = 0; ri < out_rows.size(); ++ri)
        for (std::size_t ci = 0; ci < fp_cols.size(); ++ci)
            a.at(ri, ci) = fc.d[n].at(out_rows[ri], fp_cols[ci]);
    Matrix k = kernel_basis(fc.field, a);

    Matrix z(static_cast<std::size_t>(dim_n), k.cols);
    for (std::size_t ci = 0; ci < fp_cols.size(); ++ci)
        for (std::size_t j = 0; j < k.cols; ++j) z.at(fp_cols[ci], j) = k.at(ci, j);
    return z;
}

Matrix apply_d(const FilteredComplex& fc, int n, const Matrix& v) {
    if (n < 0) return Matrix(static_cast<std::size_t>(fc.dims[0]), v.cols);
    if (n + 1 >= fc.degrees()) return Matrix(0, v.cols);
    Matrix out(static_cast<std::size_t>(fc.dims[n + 1]), v.cols);
    for (std::size_t j = 0; j < v.cols; ++j) {
        auto dv = mat_vec(fc.field, fc.d[n], v.col(j));
        for (std::size_t i = 0; i < dv.size(); ++i) out.at(i, j) = dv[i];
    }
    return out;
}

struct Spot {
    Matrix z;     // basis of Z_r
    Matrix den;   // spanning set of the divided-out subspace
    Matrix rep;   // complement representatives: quotient basis
};

}  // namespace

SpectralSequence pages(const FilteredComplex& fc) {
    fc.validate();
    const LinField& f = fc.field;
    int N = fc.degrees() - 1;  // top cochain degree
    int P = fc.depth();
    int R = P + 2;  // d_r = 0 for r > P, so E_{P+1} = E_inf; page R re-checks

    SpectralSequence ss;
    ss.field = f;

    // total cohomology of the underlying complex (the convergence target)
    ss.total_cohomology.assign(N + 1, 0);
    for (int n = 0; n <= N; ++n) {
        int ker = (n < N) ? fc.dims[n] - static_cast<int>(rank(f, fc.d[n])) : fc.dims[n];
        int im = (n > 0) ? static_cast<int>(rank(f, fc.d[n - 1])) : 0;
        ss.total_cohomology[n] = ker - im;
    }

    for (int r = 1; r <= R; ++r) {
        std::map<std::pair<int, int>, Spot> spots;
        for (int n = 0; n <= N; ++n)
            for (int p = 0; p <= P; ++p) {
                int q = n - p;
                Spot sp;
                sp.z = z_space(fc, n, p, r);
                Matrix d_part = apply_d(fc, n - 1, z_space(fc, n - 1, p - r + 1, r - 1));
                sp.den = hstack(z_space(fc, n, p + 1, r - 1), d_part);
                if (sp.den.rows == 0 && sp.den.cols == 0)
                    sp.den = Matrix(sp.z.rows, 0);
                sp.rep = complement_in(f, sp.den, sp.z);
                int dim = static_cast<int>(sp.rep.cols);
                int by_rank = static_cast<int>(sp.z.cols) -
                              static_cast<int>(rank(f, sp.den));
                if (dim != by_rank) throw internal_error("quotient dimension mismatch");
                if (dim > 0) ss.pages[r][{p, q}] = dim;
                spots[{p, q}] = std::move(sp);
            }

        // materialize d_r and check d_r . d_r = 0 and ker/im consistency
        if (r >= 1 && r < R) {
            std::map<std::pair<int, int>, Matrix> dr;
            for (const auto& [spot, sp] : spots) {
                auto [p, q] = spot;
                int n = p + q;
                auto tgt = spots.find({p + r, q - r + 1});
                std::size_t tdim = (tgt == spots.end()) ? 0 : tgt->second.rep.cols;
                Matrix m(tdim, sp.rep.cols);
                if (tdim > 0 && sp.rep.cols > 0) {
                    const Spot& t = tgt->second;
                    Matrix basis = hstack(t.den, t.rep);
                    Matrix img = apply_d(fc, n, sp.rep);
                    for (std::size_t j = 0; j < sp.rep.cols; ++j) {
                        auto x = solve(f, basis, img.col(j));
                        if (!x) throw internal_error("d_r image escapes the target page");
                        for (std::size_t i = 0; i < tdim; ++i) m.at(i, j) = (*x)[t.den.cols + i];
                    }
                }
                dr[spot] = std::move(m);
            }
            for (const auto& [spot, m] : dr) {
                auto [p, q] = spot;
                auto nxt = dr.find({p + r, q - r + 1});
                if (nxt != dr.end() && m.cols > 0 && nxt->second.rows > 0 &&
                    !mat_mul(f, nxt->second, m).is_zero())
                    throw internal_error("d_r . d_r != 0");
            }
            // dim E_{r+1} = dim ker d_r - rank(incoming d_r), checked next pass
            for (const auto& [spot, m] : dr) {
                auto [p, q] = spot;
                int here = ss.dim(r, p, q);
                if (here == 0) continue;
                int ker = here - static_cast<int>(rank(f, m));
                int im = 0;
                auto in = dr.find({p - r, q + r - 1});
                if (in != dr.end()) im = static_cast<int>(rank(f, in->second));
                Spot nsp;
                nsp.z = z_space(fc, p + q, p, r + 1);
                Matrix d_part = apply_d(fc, p + q - 1, z_space(fc, p + q - 1, p - r, r));
                nsp.den = hstack(z_space(fc, p + q, p + 1, r), d_part);
                if (nsp.den.rows == 0 && nsp.den.cols == 0) nsp.den = Matrix(nsp.z.rows, 0);
                int next_dim = static_cast<int>(nsp.z.cols) -
                               static_cast<int>(rank(f, nsp.den));
                if (next_dim != ker - im)
                    throw internal_error("page recursion disagrees with ker/im of d_r");
            }
        }
    }

    if (ss.pages[R] != ss.pages[R - 1]) throw internal_error("tower failed to stabilize");
    ss.last_page = R;
    ss.stabilized = true;

    // E_inf graded dimensions must sum to the total cohomology
    for (int n = 0; n <= N; ++n) {
        int sum = 0;
        for (int p = 0; p <= P; ++p) sum += ss.dim(R, p, n - p);
        if (sum != ss.total_cohomology[n])
            throw internal_error("E_inf does not converge to the total cohomology");
    }
    return ss;
}

std::vector<int> weight_graded(const SpectralSequence& ss, int n) {
    std::vector<int> out;
    const auto& pg = ss.page(ss.last_page);
    for (const auto& [spot, dim] : pg)
        if (spot.first + spot.second == n) out.push_back(dim);
    return out;
}

FracPoly vpp_from_ss(const SpectralSequence& ss) {
    if (ss.field.is_fp())
        throw precondition_error("virtual Poincare polynomial needs rational coefficients");
    int r = ss.pages.count(2) ? 2 : ss.last_page;
    FracPoly out;
    for (const auto& [spot, dim] : ss.page(r)) {
        auto [i, j] = spot;
        int sign = ((i + j) % 2 == 0) ? 1 : -1;
        out.add_term(Rat(j, 2), Rat(sign * dim));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Toric builder: U = G_m^n inside X = (P^1)^n with the 2n coordinate divisors
// {z_f = 0}, {z_f = infinity}. An i-fold intersection piece is indexed by the
// set S of fixed factors plus a choice eps of endpoint for each; it is a copy
// of (P^1)^{n-i}. Cohomology basis: square-free monomials h_T, T disjoint
// from S; restriction to a deeper piece kills h_g and carries the Cech sign.
// ---------------------------------------------------------------------------

namespace {

struct ToricBasis {
    // key (S, eps, T) -> index within (i = |S|, j = 2|T|)
    std::map<std::tuple<unsigned, unsigned, unsigned>, int> index;
    std::vector<std::vector<int>> count;  // count[i][t]
};

ToricBasis toric_basis(int n) {
    ToricBasis tb;
    tb.count.assign(n + 1, std::vector<int>(n + 1, 0));
    for (unsigned S = 0; S < (1u << n); ++S) {
        int i = std::popcount(S);
        unsigned comp = ((1u << n) - 1) & ~S;
        // subsets eps of S, subsets T of comp, in increasing integer order
        std::vector<unsigned> eps_list, t_list;
        for (unsigned x = 0;; x = (x - S) & S) {
            eps_list.push_back(x);
            if (x == S) break;
        }
        for (unsigned x = 0;; x = (x - comp) & comp) {
            t_list.push_back(x);
            if (x == comp) break;
        }
        for (unsigned eps : eps_list)
            for (unsigned T : t_list) {
                int t = std::popcount(T);
                tb.index[{S, eps, T}] = tb.count[i][t]++;
            }
    }
    return tb;
}

}  // namespace

SNCData toric_builder(int n, const LinField& field) {
    if (n < 1 || n > 6) throw input_error("toric builder supports 1 <= n <= 6");
    ToricBasis tb = toric_basis(n);

    SNCData s;
    s.field = field;
    s.m = 2 * n;  // divisor components; intersections vanish beyond depth n
    s.betti.assign(s.m + 1, {});
    for (int i = 0; i <= s.m; ++i) {
        int jmax = (i <= n) ? 2 * (n - i) : -1;
        s.betti[i].assign(std::max(0, jmax + 1), 0);
        if (i > n) continue;
        for (int t = 0; 2 * t <= jmax; ++t) s.betti[i][2 * t] = tb.count[i][t];
    }

    for (const auto& [key, col] : tb.index) {
        auto [S, eps, T] = key;
        int i = std::popcount(S);
        int t = std::popcount(T);
        if (i >= n) continue;
        for (int g = 0; g < n; ++g) {
            if (S & (1u << g)) continue;
            if (T & (1u << g)) continue;  // h_g restricts to zero
            int sign = std::popcount(S & ((1u << g) - 1)) % 2 ? -1 : 1;
            for (unsigned delta = 0; delta <= 1; ++delta) {
                unsigned S2 = S | (1u << g);
                unsigned eps2 = eps | (delta << g);
                int row = tb.index.at({S2, eps2, T});
                auto& m = s.d1[{i, 2 * t}];
                if (m.rows == 0)
                    m = zero_matrix(s.b(i + 1, 2 * t), s.b(i, 2 * t));
                m.at(row, col) = field.reduce(m.at(row, col) + sign);
            }
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// The same geometry as a filtered complex: cells of a piece (S, eps) are
// per-factor choices from the CW structure of P^1 (two 0-cells, one 1-cell,
// one 2-cell); the total differential is Cech restriction plus (-1)^i times
// the cellular coboundary with Koszul signs, filtered by the column i = |S|.
// ---------------------------------------------------------------------------

namespace {

enum Cell : int { P0 = 0, P1 = 1, EDGE = 2, FACE = 3 };
inline int cell_deg(int c) { return c == EDGE ? 1 : (c == FACE ? 2 : 0); }

struct CellKey {
    unsigned S, eps;
    std::vector<int> cells;  // one entry per factor not in S, ascending factor
    auto operator<=>(const CellKey&) const = default;
};

}  // namespace

FilteredComplex toric_filtered_complex(int n, const LinField& field) {
    if (n < 1 || n > 4) throw input_error("toric filtered complex supports 1 <= n <= 4");

    // enumerate every basis cell with its (i, j) and total degree
    std::vector<std::map<CellKey, int>> index(2 * n + 1);  // by total degree
    std::vector<std::vector<int>> levels(2 * n + 1);
    std::vector<std::vector<CellKey>> keys(2 * n + 1);
    for (unsigned S = 0; S < (1u << n); ++S) {
        int i = std::popcount(S);
        int nf = n - i;
        std::vector<unsigned> eps_list;
        for (unsigned x = 0;; x = (x - S) & S) {
            eps_list.push_back(x);
            if (x == S) break;
        }
        std::vector<std::vector<int>> cell_choices;
        std::vector<int> cur(nf, P0);
        for (;;) {
            cell_choices.push_back(cur);
            int k = nf - 1;
            while (k >= 0 && cur[k] == FACE) cur[k--] = P0;
            if (k < 0) break;
            ++cur[k];
        }
        if (nf == 0) cell_choices = {{}};
        for (unsigned eps : eps_list)
            for (const auto& cells : cell_choices) {
                int j = 0;
                for (int c : cells) j += cell_deg(c);
                CellKey key{S, eps, cells};
                index[i + j][key] = 0;  // placeholder; renumbered below
            }
    }
    for (int deg = 0; deg <= 2 * n; ++deg) {
        int idx = 0;
        for (auto& [key, v] : index[deg]) {
            v = idx++;
            keys[deg].push_back(key);
            levels[deg].push_back(std::popcount(key.S));
        }
    }

    FilteredComplex fc;
    fc.field = field;
    for (int deg = 0; deg <= 2 * n; ++deg) fc.dims.push_back(static_cast<int>(keys[deg].size()));
    fc.level = levels;

    for (int deg = 0; deg < 2 * n; ++deg) {
        Matrix d(static_cast<std::size_t>(fc.dims[deg + 1]), static_cast<std::size_t>(fc.dims[deg]));
        for (std::size_t col = 0; col < keys[deg].size(); ++col) {
            const CellKey& k = keys[deg][col];
            int i = std::popcount(k.S);
            std::vector<int> free_factors;
            for (int g = 0; g < n; ++g)
                if (!(k.S & (1u << g))) free_factors.push_back(g);

            // Cech restriction: fix a free factor sitting at a 0-cell
            for (std::size_t fi = 0; fi < free_factors.size(); ++fi) {
                int g = free_factors[fi];
                int c = k.cells[fi];
                if (c != P0 && c != P1) continue;
                CellKey tgt;
                tgt.S = k.S | (1u << g);
                tgt.eps = k.eps | ((c == P1 ? 1u : 0u) << g);
                tgt.cells = k.cells;
                tgt.cells.erase(tgt.cells.begin() + static_cast<long>(fi));
                int sign = std::popcount(k.S & ((1u << g) - 1)) % 2 ? -1 : 1;
                int row = index[deg + 1].at(tgt);
                d.at(row, col) = field.reduce(d.at(row, col) + sign);
            }

            // cellular coboundary with Koszul signs, scaled by (-1)^i
            int koszul = 0;
            for (std::size_t fi = 0; fi < free_factors.size(); ++fi) {
                int c = k.cells[fi];
                if (c == P0 || c == P1) {
                    CellKey tgt = k;
                    tgt.cells[fi] = EDGE;
                    int sign = (c == P0 ? -1 : 1) * (koszul % 2 ? -1 : 1) * (i % 2 ? -1 : 1);
                    int row = index[deg + 1].at(tgt);
                    d.at(row, col) = field.reduce(d.at(row, col) + sign);
                }
                koszul += cell_deg(c);
            }
        }
        fc.d.push_back(std::move(d));
    }
    return fc;
}

}  // namespace wb
