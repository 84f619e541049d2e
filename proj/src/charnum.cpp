#include "workbench/charnum.hpp"

#include <algorithm>
#include <bit>

#include "workbench/linalg.hpp"

namespace wb {

// ---------------------------------------------------------------------------
// manifold atoms
// ---------------------------------------------------------------------------

void ManifoldAtom::validate() const {
    if (gen_degree.size() != gen_cap.size()) throw input_error("atom: generator table mismatch");
    int top = 0;
    for (std::size_t g = 0; g < gen_degree.size(); ++g) {
        if (gen_degree[g] <= 0 || gen_cap[g] < 0) throw input_error("atom: bad generator data");
        top += gen_degree[g] * gen_cap[g];
    }
    if (top != dim) throw input_error("atom: top degree does not equal the dimension");
    if (w.find(F2Monomial(gen_degree.size(), 0)) == w.end())
        throw input_error("atom: total class must have constant term 1");
}

F2Poly ManifoldAtom::mul(const F2Poly& a, const F2Poly& b) const {
    F2Poly r;
    for (const auto& m1 : a)
        for (const auto& m2 : b) {
            F2Monomial m(m1.size());
            bool alive = true;
            for (std::size_t g = 0; g < m.size() && alive; ++g) {
                m[g] = m1[g] + m2[g];
                if (m[g] > gen_cap[g]) alive = false;  // truncated ring relation
            }
            if (!alive) continue;
            auto [it, fresh] = r.emplace(std::move(m));
            if (!fresh) r.erase(it);
        }
    return r;
}

F2Poly ManifoldAtom::w_part(int j) const {
    F2Poly r;
    for (const auto& m : w) {
        int deg = 0;
        for (std::size_t g = 0; g < m.size(); ++g) deg += m[g] * gen_degree[g];
        if (deg == j) r.insert(m);
    }
    return r;
}

int ManifoldAtom::top_coefficient(const F2Poly& p) const {
    return p.count(gen_cap) ? 1 : 0;
}

ManifoldAtom ManifoldAtom::rp(int n) {
    if (n < 1) throw input_error("RP^n needs n >= 1");
    ManifoldAtom m;
    m.name = "RP" + std::to_string(n);
    m.dim = n;
    m.gen_degree = {1};
    m.gen_cap = {n};
    // w = (1 + a)^{n+1} in F2[a]/(a^{n+1})
    for (int k = 0; k <= n; ++k) {
        BigInt binom = 1;
        for (int t = 0; t < k; ++t) binom = binom * (n + 1 - t) / (t + 1);
        if (binom % 2 != 0) m.w.insert({k});
    }
    return m;
}

ManifoldAtom ManifoldAtom::dold(int mm, int r) {
    if (mm < 0 || r < 0) throw input_error("Dold P(m,r) needs m, r >= 0");
    ManifoldAtom a;
    a.name = "P(" + std::to_string(mm) + "," + std::to_string(r) + ")";
    a.dim = mm + 2 * r;
    a.gen_degree = {1, 2};
    a.gen_cap = {mm, r};
    // w = (1 + c)^m (1 + c + d)^{r+1} in F2[c,d]/(c^{m+1}, d^{r+1})
    F2Poly one = {{0, 0}};
    F2Poly f1 = {{0, 0}, {1, 0}};          // 1 + c
    F2Poly f2 = {{0, 0}, {1, 0}, {0, 1}};  // 1 + c + d
    F2Poly w = one;
    for (int t = 0; t < mm; ++t) w = a.mul(w, f1);
    for (int t = 0; t <= r; ++t) w = a.mul(w, f2);
    a.w = w;
    return a;
}

ManifoldAtom ManifoldAtom::sphere(int n) {
    ManifoldAtom m;
    m.name = "S" + std::to_string(n);
    m.dim = n;
    m.gen_degree = {n};
    m.gen_cap = {1};
    m.w = {{0}};
    return m;
}

ManifoldAtom atom_product(const ManifoldAtom& a, const ManifoldAtom& b) {
    ManifoldAtom p;
    p.name = a.name + "x" + b.name;
    p.dim = a.dim + b.dim;
    p.gen_degree = a.gen_degree;
    p.gen_degree.insert(p.gen_degree.end(), b.gen_degree.begin(), b.gen_degree.end());
    p.gen_cap = a.gen_cap;
    p.gen_cap.insert(p.gen_cap.end(), b.gen_cap.begin(), b.gen_cap.end());
    // Whitney: w(a x b) = w(a) tensor w(b)
    for (const auto& m1 : a.w)
        for (const auto& m2 : b.w) {
            F2Monomial m = m1;
            m.insert(m.end(), m2.begin(), m2.end());
            p.w.insert(m);
        }
    return p;
}

// ---------------------------------------------------------------------------
// universal Stiefel-Whitney symbols and Steenrod squares
// ---------------------------------------------------------------------------

SWPolynomial SWPolynomial::square() const {
    SWPolynomial r;
    for (const auto& m : monos) {
        SWMonomial sq;
        for (int j : m) {
            sq.push_back(j);
            sq.push_back(j);
        }
        std::sort(sq.begin(), sq.end());
        r.toggle(sq);
    }
    return r;
}

std::string SWPolynomial::str() const {
    if (monos.empty()) return "0";
    std::string out;
    for (const auto& m : monos) {
        if (!out.empty()) out += " + ";
        if (m.empty()) out += "1";
        for (std::size_t k = 0; k < m.size(); ++k)
            out += (k ? " " : "") + std::string("w") + std::to_string(m[k]);
    }
    return out;
}

namespace {

bool binom_odd(long top, long bot) {
    if (bot < 0 || bot > top) return false;
    return (bot & ~top) == 0;  // Lucas: C(top, bot) is odd iff bot's bits sit inside top's
}

// Sq^i on a single symbol w_j (Wu's formula with its boundary cases).
SWPolynomial sq_symbol(int i, int j) {
    SWPolynomial r;
    if (i == 0) {
        r.toggle({j});
        return r;
    }
    if (i > j) return r;  // zero: Sq^i vanishes above the degree
    if (i == j) {
        r.toggle({j, j});
        return r;
    }
    for (int t = 0; t <= i; ++t) {
        if (!binom_odd(j - i + t - 1, t)) continue;
        SWMonomial m;
        if (i - t > 0) m.push_back(i - t);
        m.push_back(j + t);
        std::sort(m.begin(), m.end());
        r.toggle(m);
    }
    return r;
}

SWPolynomial sq_monomial(int i, const SWMonomial& m) {
    if (i < 0) return SWPolynomial{};
    if (m.empty()) {
        SWPolynomial r;
        if (i == 0) r.toggle({});
        return r;
    }
    int head = m.front();
    SWMonomial rest(m.begin() + 1, m.end());
    SWPolynomial out;
    for (int k = 0; k <= i; ++k) {
        SWPolynomial a = sq_symbol(k, head);
        if (a.monos.empty()) continue;
        SWPolynomial b = sq_monomial(i - k, rest);
        for (const auto& ma : a.monos)
            for (const auto& mb : b.monos) {
                SWMonomial prod = ma;
                prod.insert(prod.end(), mb.begin(), mb.end());
                std::sort(prod.begin(), prod.end());
                out.toggle(prod);
            }
    }
    return out;
}

}  // namespace

SWPolynomial steenrod_sq(int i, const SWPolynomial& p) {
    if (i < 0) throw input_error("negative Steenrod square");
    SWPolynomial out;
    for (const auto& m : p.monos) out = out + sq_monomial(i, m);
    return out;
}

SWPolynomial wu_class(int i) {
    if (i < 0) throw input_error("negative Wu class index");
    std::vector<SWPolynomial> v(i + 1);
    v[0].toggle({});  // v_0 = 1
    for (int d = 1; d <= i; ++d) {
        SWPolynomial vd;
        vd.toggle({d});  // w_d
        for (int k = 1; k < d; ++k) vd = vd + steenrod_sq(k, v[d - k]);
        v[d] = vd;
    }
    return v[i];
}

// ---------------------------------------------------------------------------
// Stiefel-Whitney numbers and invariant spans
// ---------------------------------------------------------------------------

int sw_number(const ManifoldAtom& m, const SWMonomial& partition) {
    m.validate();
    int deg = 0;
    for (int j : partition) {
        if (j < 0) throw input_error("negative Stiefel-Whitney subscript");
        deg += j;
    }
    if (deg != m.dim)
        throw input_error("monomial degree " + std::to_string(deg) +
                          " does not match the dimension " + std::to_string(m.dim));
    F2Poly acc = {F2Monomial(m.gen_degree.size(), 0)};
    for (int j : partition) acc = m.mul(acc, m.w_part(j));
    return m.top_coefficient(acc);
}

int sw_number(const ManifoldAtom& m, const SWPolynomial& p) {
    int out = 0;
    for (const auto& mono : p.monos) out ^= sw_number(m, mono);
    return out;
}

namespace {

ManifoldAtom atom_for_part(int part) {
    switch (part) {
        case 2: return ManifoldAtom::rp(2);
        case 4: return ManifoldAtom::rp(4);
        case 5: return ManifoldAtom::dold(1, 2);
        case 6: return ManifoldAtom::rp(6);
        case 8: return ManifoldAtom::rp(8);
        default: throw internal_error("no atom for part " + std::to_string(part));
    }
}

bool is_forbidden_part(int p) {  // parts of the form 2^j - 1 carry no generator
    return ((p + 1) & p) == 0;
}

void partitions_into(int n, int max_part, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 2; --p) {
        if (is_forbidden_part(p)) continue;
        cur.push_back(p);
        partitions_into(n - p, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<ManifoldAtom> spanning_set(int n) {
    if (n < 1) throw input_error("spanning set needs n >= 1");
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions_into(n, n, cur, parts);
    std::set<int> missing;
    for (const auto& pt : parts)
        for (int p : pt)
            if (p > 8) missing.insert(p);
    if (!missing.empty()) {
        std::string msg = "no generator atoms for partition parts:";
        for (int p : missing) msg += " " + std::to_string(p);
        throw input_error(msg);
    }
    std::vector<ManifoldAtom> out;
    for (const auto& pt : parts) {
        ManifoldAtom a = atom_for_part(pt[0]);
        for (std::size_t k = 1; k < pt.size(); ++k) a = atom_product(a, atom_for_part(pt[k]));
        out.push_back(std::move(a));
    }
    return out;
}

namespace {

Matrix functional_matrix(const std::vector<SWPolynomial>& rows,
                         const std::vector<ManifoldAtom>& span) {
    Matrix m(rows.size(), span.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < span.size(); ++j)
            m.at(i, j) = sw_number(span[j], rows[i]);
    return m;
}

std::vector<SWPolynomial> w1_wn_rows(int n) {
    std::vector<SWPolynomial> rows;
    for (int i = 0; i <= n; ++i) {
        SWMonomial mono(i, 1);        // w_1^i
        if (n - i > 0) mono.push_back(n - i);
        std::sort(mono.begin(), mono.end());
        SWPolynomial p;
        p.toggle(mono);
        rows.push_back(p);
    }
    return rows;
}

}  // namespace

int invariant_span_rank(int n) {
    auto span = spanning_set(n);
    if (span.empty()) return 0;
    return static_cast<int>(rank(LinField{2}, functional_matrix(w1_wn_rows(n), span)));
}

bool span_equivalence(int n) {
    auto span = spanning_set(n);
    if (span.empty()) return true;
    std::vector<SWPolynomial> a = w1_wn_rows(n), b;
    for (int i = 0; 2 * i <= n; ++i) {
        SWPolynomial vi2 = wu_class(i).square();
        SWPolynomial row;
        for (const auto& m : vi2.monos) {
            SWMonomial mono(n - 2 * i, 1);  // w_1^{n-2i}
            mono.insert(mono.end(), m.begin(), m.end());
            std::sort(mono.begin(), mono.end());
            row.toggle(mono);
        }
        b.push_back(row);
    }
    LinField f{2};
    Matrix ma = functional_matrix(a, span), mb = functional_matrix(b, span);
    std::size_t ra = rank(f, ma), rb = rank(f, mb);
    Matrix both(ma.rows + mb.rows, ma.cols);
    for (std::size_t i = 0; i < ma.rows; ++i)
        for (std::size_t j = 0; j < ma.cols; ++j) both.at(i, j) = ma.at(i, j);
    for (std::size_t i = 0; i < mb.rows; ++i)
        for (std::size_t j = 0; j < mb.cols; ++j) both.at(ma.rows + i, j) = mb.at(i, j);
    return ra == rb && rb == rank(f, both);
}

bool flop_relation_check(int a) {
    if (a < 2) return true;  // degenerate: the relation is only claimed for a >= 2
    int n = 1 << (a + 1);
    ManifoldAtom x = atom_product(ManifoldAtom::rp(1 << a), ManifoldAtom::rp(1 << a));
    ManifoldAtom y = ManifoldAtom::rp(2);
    for (int t = 1; t < (1 << a); ++t) y = atom_product(y, ManifoldAtom::rp(2));
    for (const auto& row : w1_wn_rows(n))
        if (sw_number(x, row) != sw_number(y, row)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Ochanine genus
// ---------------------------------------------------------------------------

namespace {

using GenusSeries = std::vector<GenusElem>;  // coefficient of t^k at index k

GenusSeries series_mul(const GenusSeries& a, const GenusSeries& b, int cap) {
    GenusSeries r(cap + 1);
    for (int i = 0; i < static_cast<int>(a.size()) && i <= cap; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= cap && j < static_cast<int>(b.size()); ++j)
            r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
}

// g'(t) = (1 - 2 delta t^2 + epsilon t^4)^{-1/2} through t^cap
GenusSeries g_prime(int cap) {
    GenusSeries u(cap + 1);  // u = -2 delta t^2 + epsilon t^4
    if (cap >= 2) u[2] = GenusElem::delta().scaled(-2);
    if (cap >= 4) u[4] = GenusElem::epsilon();
    GenusSeries acc(cap + 1), pw(cap + 1);
    acc[0] = GenusElem::constant(1);
    pw[0] = GenusElem::constant(1);
    Rat binom = 1;  // C(-1/2, k)
    for (int k = 1; 2 * k <= cap; ++k) {
        pw = series_mul(pw, u, cap);
        binom = binom * (Rat(-1, 2) - (k - 1)) / k;
        for (int t = 0; t <= cap; ++t) acc[t] = acc[t] + pw[t].scaled(binom);
    }
    return acc;
}

}  // namespace

GenusElem ochanine_cp(int n) {
    if (n < 0) throw input_error("negative projective dimension");
    // phi(CP^n) = (n+1) [t^{n+1}] g = [t^n] g'
    return g_prime(n)[n];
}

GenusElem ochanine_cp_pontryagin(int n) {
    if (n < 0) throw input_error("negative projective dimension");
    int cap = n + 1;
    GenusSeries gp = g_prime(cap);
    GenusSeries g(cap + 1);
    for (int k = 1; k <= cap; ++k) g[k] = gp[k - 1].scaled(Rat(1, k));

    // compositional inverse f of g (both start t + higher odd terms)
    GenusSeries f(cap + 1);
    f[1] = GenusElem::constant(1);
    for (int m = 2; m <= cap; ++m) {
        // evaluate g(f) by Horner and cancel the t^m error
        GenusSeries comp(cap + 1);
        for (int k = cap; k >= 1; --k) {
            comp = series_mul(comp, f, cap);
            comp[0] = comp[0] + g[k];
        }
        comp = series_mul(comp, f, cap);
        f[m] = f[m] - comp[m];
    }

    // Q(t) = t / f(t), then phi(CP^n) = [t^n] Q^{n+1}
    GenusSeries shifted(cap + 1);
    for (int k = 0; k < cap; ++k) shifted[k] = f[k + 1];
    GenusSeries inv(cap + 1), pw(cap + 1), nil = shifted;
    nil[0] = GenusElem();
    inv[0] = GenusElem::constant(1);
    pw[0] = GenusElem::constant(1);
    for (int t = 1; t <= cap; ++t) {
        pw = series_mul(pw, nil, cap);
        Rat sign = (t % 2 == 0) ? 1 : -1;
        for (int k = 0; k <= cap; ++k) inv[k] = inv[k] + pw[k].scaled(sign);
    }
    GenusSeries qpow(cap + 1);
    qpow[0] = GenusElem::constant(1);
    for (int t = 0; t <= n; ++t) qpow = series_mul(qpow, inv, cap);
    return qpow[n];
}

std::map<std::pair<int, int>, Rat> gamma_basis(const GenusElem& g) {
    // epsilon = delta^2 - 4 gamma
    std::map<std::pair<int, int>, Rat> out;
    auto add = [&](int a, int b, const Rat& v) {
        if (v == 0) return;
        auto [it, fresh] = out.emplace(std::make_pair(a, b), v);
        if (!fresh) {
            it->second += v;
            if (it->second == 0) out.erase(it);
        }
    };
    for (const auto& [key, v] : g.c) {
        auto [a, b] = key;
        // (delta^2 - 4 gamma)^b expanded binomially
        Rat binom = 1;
        for (int k = 0; k <= b; ++k) {
            if (k > 0) binom = binom * (b - k + 1) / k;
            Rat term = binom * v;
            for (int t = 0; t < k; ++t) term *= -4;
            add(a + 2 * (b - k), k, term);
        }
    }
    return out;
}

bool in_image_ring(const GenusElem& g) {
    for (const auto& [key, v] : gamma_basis(g)) {
        if (!is_integer(v)) return false;
        BigInt num = numerator(v);
        int need = std::popcount(static_cast<unsigned>(key.second));
        for (int t = 0; t < need; ++t) {
            if (num % 2 != 0) return false;
            num /= 2;
        }
    }
    return true;
}

std::string GenusElem::str() const {
    if (c.empty()) return "0";
    std::string out;
    for (const auto& [k, v] : c) {
        std::string term;
        if (v != 1 || (k.first == 0 && k.second == 0)) term = rat_str(v);
        auto factor = [&](const char* name, int e) {
            if (e == 0) return;
            if (!term.empty()) term += "*";
            term += name;
            if (e > 1) term += "^" + std::to_string(e);
        };
        factor("delta", k.first);
        factor("epsilon", k.second);
        if (!out.empty()) out += " + ";
        out += term;
    }
    return out;
}

}  // namespace wb
