#include "workbench/elliptic.hpp"

namespace wb {

namespace {

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rat> {
    static Rat from_rat(const Rat& r, const Rat&) { return r; }
    static Rat scale(const Rat& s, const Rat& r) { return s * r; }
    static Rat inverse(const Rat& s) {
        if (s == 0) throw precondition_error("division by zero scalar");
        return 1 / s;
    }
    static bool is_zero(const Rat& s) { return s == 0; }
};

template <>
struct ScalarOps<RatFunc> {
    static RatFunc from_rat(const Rat& r, const RatFunc&) { return RatFunc(r); }
    static RatFunc scale(const RatFunc& s, const Rat& r) { return s * RatFunc(r); }
    static RatFunc inverse(const RatFunc& s) {
        if (s.is_zero()) throw precondition_error("division by zero rational function");
        return s.inv();
    }
    static bool is_zero(const RatFunc& s) { return s.is_zero(); }
};

template <>
struct ScalarOps<JacobiSeries> {
    static JacobiSeries from_rat(const Rat& r, const JacobiSeries& proto) {
        return JacobiSeries::constant(RatFunc(r), proto.cap());
    }
    static JacobiSeries scale(const JacobiSeries& s, const Rat& r) { return s * RatFunc(r); }
    static JacobiSeries inverse(const JacobiSeries& s) { return s.invert(); }
    static bool is_zero(const JacobiSeries& s) { return s.is_zero(); }
};

std::vector<Rat> ring_mul_rat(const CohomologyModel& m, const std::vector<Rat>& u,
                              const std::vector<Rat>& v) {
    std::vector<Rat> r(m.basis.size(), Rat(0));
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] == 0) continue;
            auto pr = m.product(static_cast<int>(i), static_cast<int>(j));
            for (std::size_t b = 0; b < r.size(); ++b) r[b] += u[i] * v[j] * pr[b];
        }
    }
    return r;
}

// power sums p_1..p_d of the Chern roots via Newton's identities
std::vector<std::vector<Rat>> power_sums(const CohomologyModel& m) {
    int d = m.dim();
    std::size_t nb = m.basis.size();
    auto e = [&](int k) -> std::vector<Rat> {
        if (k >= 1 && k <= static_cast<int>(m.chern.size())) return m.chern[k - 1];
        return std::vector<Rat>(nb, Rat(0));
    };
    std::vector<std::vector<Rat>> p(d + 1, std::vector<Rat>(nb, Rat(0)));
    for (int k = 1; k <= d; ++k) {
        std::vector<Rat> acc(nb, Rat(0));
        for (int i = 1; i < k; ++i) {
            auto t = ring_mul_rat(m, e(i), p[k - i]);
            Rat sign = (i % 2 == 1) ? 1 : -1;
            for (std::size_t b = 0; b < nb; ++b) acc[b] += sign * t[b];
        }
        Rat sign = (k % 2 == 1) ? 1 : -1;
        for (std::size_t b = 0; b < nb; ++b) acc[b] += sign * Rat(k) * e(k)[b];
        p[k] = std::move(acc);
    }
    return p;
}

template <class S>
std::vector<S> ring_mul(const CohomologyModel& m, const std::vector<S>& u,
                        const std::vector<S>& v, const S& proto) {
    using Ops = ScalarOps<S>;
    std::vector<S> r(m.basis.size(), Ops::from_rat(0, proto));
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (Ops::is_zero(u[i])) continue;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (Ops::is_zero(v[j])) continue;
            S uv = u[i] * v[j];
            auto pr = m.product(static_cast<int>(i), static_cast<int>(j));
            for (std::size_t b = 0; b < r.size(); ++b)
                if (pr[b] != 0) r[b] = r[b] + Ops::scale(uv, pr[b]);
        }
    }
    return r;
}

// inverse of u = u0 * 1 + nilpotent in the model ring with S coefficients
template <class S>
std::vector<S> ring_inverse(const CohomologyModel& m, const std::vector<S>& u, const S& proto) {
    using Ops = ScalarOps<S>;
    S u0inv = Ops::inverse(u[0]);
    std::vector<S> n(u.size(), Ops::from_rat(0, proto));
    for (std::size_t b = 1; b < u.size(); ++b) n[b] = Ops::scale(u[b] * u0inv, Rat(-1));
    std::vector<S> acc(u.size(), Ops::from_rat(0, proto)), term = acc;
    acc[0] = Ops::from_rat(1, proto);
    term[0] = Ops::from_rat(1, proto);
    for (int t = 1; t <= m.dim(); ++t) {
        term = ring_mul(m, term, n, proto);
        for (std::size_t b = 0; b < u.size(); ++b) acc[b] = acc[b] + term[b];
    }
    for (std::size_t b = 0; b < u.size(); ++b) acc[b] = acc[b] * u0inv;
    return acc;
}

// polynomials in a nilpotent variable x with S coefficients, degree <= deg
template <class S>
std::vector<S> xpoly_mul(const std::vector<S>& a, const std::vector<S>& b, int deg, const S& proto) {
    using Ops = ScalarOps<S>;
    std::vector<S> r(deg + 1, Ops::from_rat(0, proto));
    for (int i = 0; i < static_cast<int>(a.size()) && i <= deg; ++i)
        for (int j = 0; i + j <= deg && j < static_cast<int>(b.size()); ++j)
            r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

template <class S>
std::vector<S> xpoly_inverse(const std::vector<S>& a, int deg, const S& proto) {
    using Ops = ScalarOps<S>;
    S a0inv = Ops::inverse(a[0]);
    std::vector<S> n(deg + 1, Ops::from_rat(0, proto));
    for (int k = 1; k <= deg && k < static_cast<int>(a.size()); ++k)
        n[k] = Ops::scale(a[k] * a0inv, Rat(-1));
    std::vector<S> acc(deg + 1, Ops::from_rat(0, proto)), term = acc;
    acc[0] = Ops::from_rat(1, proto);
    term[0] = Ops::from_rat(1, proto);
    for (int t = 1; t <= deg; ++t) {
        term = xpoly_mul(term, n, deg, proto);
        for (int k = 0; k <= deg; ++k) acc[k] = acc[k] + term[k];
    }
    for (int k = 0; k <= deg; ++k) acc[k] = acc[k] * a0inv;
    return acc;
}

// Pi over the d Chern roots of f(y_l), f given as x-polynomial coefficients.
template <class S>
std::vector<S> root_product(const CohomologyModel& m, const std::vector<S>& f, const S& proto) {
    using Ops = ScalarOps<S>;
    int d = m.dim();
    if (static_cast<int>(f.size()) < d + 1)
        throw input_error("series order below the model dimension");
    std::size_t nb = m.basis.size();

    S f0inv = Ops::inverse(f[0]);
    // log(f / f0) as an x-polynomial
    std::vector<S> n(d + 1, Ops::from_rat(0, proto));
    for (int k = 1; k <= d; ++k) n[k] = f[k] * f0inv;
    std::vector<S> logf(d + 1, Ops::from_rat(0, proto));
    std::vector<S> pw(d + 1, Ops::from_rat(0, proto));
    pw[0] = Ops::from_rat(1, proto);
    for (int t = 1; t <= d; ++t) {
        pw = xpoly_mul(pw, n, d, proto);
        Rat coef = Rat((t % 2 == 1) ? 1 : -1, t);
        for (int k = 0; k <= d; ++k) logf[k] = logf[k] + Ops::scale(pw[k], coef);
    }

    auto p = power_sums(m);
    std::vector<S> L(nb, Ops::from_rat(0, proto));
    for (int k = 1; k <= d; ++k)
        for (std::size_t b = 0; b < nb; ++b)
            if (p[k][b] != 0) L[b] = L[b] + Ops::scale(logf[k], p[k][b]);

    // exp of the nilpotent ring element L
    std::vector<S> acc(nb, Ops::from_rat(0, proto)), term = acc;
    acc[0] = Ops::from_rat(1, proto);
    term[0] = Ops::from_rat(1, proto);
    Rat fact = 1;
    for (int t = 1; t <= d; ++t) {
        term = ring_mul(m, term, L, proto);
        fact *= t;
        for (std::size_t b = 0; b < nb; ++b) acc[b] = acc[b] + Ops::scale(term[b], 1 / fact);
    }

    S f0d = Ops::from_rat(1, proto);
    for (int t = 0; t < d; ++t) f0d = f0d * f[0];
    for (std::size_t b = 0; b < nb; ++b) acc[b] = acc[b] * f0d;
    return acc;
}

}  // namespace

void CohomologyModel::validate() const {
    std::size_t nb = basis.size();
    if (nb == 0 || degree.size() != nb) throw input_error("cohomology model: bad basis");
    if (degree[0] != 0) throw input_error("cohomology model: basis[0] must be the unit");
    if (top < 0 || top % 2 != 0) throw input_error("cohomology model: top degree must be even");
    for (int dg : degree)
        if (dg < 0 || dg % 2 != 0 || dg > top)
            throw input_error("cohomology model: degrees must be even and within the top degree");
    for (const auto& [key, vec] : products) {
        auto [i, j] = key;
        if (i > j || i < 0 || j >= static_cast<int>(nb) || vec.size() != nb)
            throw input_error("cohomology model: malformed structure constant entry");
        for (std::size_t b = 0; b < nb; ++b)
            if (vec[b] != 0 && degree[b] != degree[i] + degree[j])
                throw input_error("cohomology model: product violates the grading");
    }
    auto unit_vec = [&](int j) {
        std::vector<Rat> v(nb, Rat(0));
        v[j] = 1;
        return v;
    };
    for (int j = 0; j < static_cast<int>(nb); ++j)
        if (product(0, j) != unit_vec(j))
            throw input_error("cohomology model: basis[0] does not act as the unit");
    for (int i = 0; i < static_cast<int>(nb); ++i)
        for (int j = i; j < static_cast<int>(nb); ++j)
            for (int k = j; k < static_cast<int>(nb); ++k) {
                auto left = ring_mul_rat(*this, product(i, j), unit_vec(k));
                auto right = ring_mul_rat(*this, unit_vec(i), product(j, k));
                if (left != right) throw input_error("cohomology model: ring is not associative");
            }
    if (integration.size() != nb) throw input_error("cohomology model: bad integration vector");
    for (std::size_t b = 0; b < nb; ++b)
        if (integration[b] != 0 && degree[b] != top)
            throw input_error("cohomology model: integration supported below top degree");
    if (static_cast<int>(chern.size()) != dim())
        throw input_error("cohomology model: need Chern classes c_1..c_d");
    for (int i = 1; i <= static_cast<int>(chern.size()); ++i) {
        if (chern[i - 1].size() != nb) throw input_error("cohomology model: bad Chern class vector");
        for (std::size_t b = 0; b < nb; ++b)
            if (chern[i - 1][b] != 0 && degree[b] != 2 * i)
                throw input_error("cohomology model: c_i must be homogeneous of degree 2i");
    }
    if (divisors.size() != discrepancies.size())
        throw input_error("cohomology model: divisor/discrepancy count mismatch");
    for (const auto& e : divisors) {
        if (e.size() != nb) throw input_error("cohomology model: bad divisor class vector");
        for (std::size_t b = 0; b < nb; ++b)
            if (e[b] != 0 && degree[b] != 2)
                throw input_error("cohomology model: divisor classes must have degree 2");
    }
}

std::vector<Rat> chern_root_product(const CohomologyModel& m, const TruncSeries<Rat>& f) {
    m.validate();
    int d = m.dim();
    if (f.nvars() != 1) throw input_error("chern_root_product needs a one-variable series");
    if (f.cap() < d) throw input_error("series order below the model dimension");
    std::vector<Rat> coeffs(d + 1);
    for (int k = 0; k <= d; ++k) coeffs[k] = f.coeff({k});
    return root_product<Rat>(m, coeffs, Rat(1));
}

JacobiSeries bl_genus(const CohomologyModel& m, int order) {
    m.validate();
    if (order < 0) throw input_error("negative truncation order");
    for (const Rat& a : m.discrepancies)
        if (a <= -1) throw precondition_error("log-terminality requires every a_k > -1");

    int d = m.dim();
    Rat cap = Rat(order);
    JacobiSeries proto = JacobiSeries::constant(RatFunc(Rat(1)), cap);

    // per-root factor psi(x) = x that(x,-1) / that(x,0); the odd series
    // that(x,0) is divided by x before inversion
    auto th_m1 = theta_hat(Rat(-1), d, order);
    auto th_0 = theta_hat(Rat(0), d + 1, order);
    if (!th_0[0].is_zero()) throw internal_error("theta(x,0) must vanish at x = 0");
    std::vector<JacobiSeries> u(d + 1, JacobiSeries(cap));
    for (int k = 0; k <= d; ++k) u[k] = th_0[k + 1];
    auto psi = xpoly_mul(th_m1, xpoly_inverse(u, d, proto), d, proto);

    auto total = root_product<JacobiSeries>(m, psi, proto);

    // divisor factors that(e,-(a+1)) that(0,-1) / (that(e,-1) that(0,-(a+1)))
    JacobiSeries th0_m1 = theta_hat(Rat(-1), 0, order)[0];
    auto at_ring_element = [&](const std::vector<JacobiSeries>& th, const std::vector<Rat>& e) {
        std::vector<JacobiSeries> pw(m.basis.size(), JacobiSeries(cap)), r = pw;
        pw[0] = proto;
        for (int j = 0; j < static_cast<int>(th.size()); ++j) {
            if (j > 0) {
                std::vector<JacobiSeries> ev(m.basis.size(), JacobiSeries(cap));
                for (std::size_t b = 0; b < e.size(); ++b)
                    if (e[b] != 0) ev[b] = ScalarOps<JacobiSeries>::from_rat(e[b], proto);
                pw = ring_mul(m, pw, ev, proto);
            }
            for (std::size_t b = 0; b < r.size(); ++b) r[b] = r[b] + pw[b] * th[j];
        }
        return r;
    };
    for (std::size_t k = 0; k < m.divisors.size(); ++k) {
        Rat c = -(m.discrepancies[k] + 1);
        auto th_c = theta_hat(c, d, order);
        auto num = at_ring_element(th_c, m.divisors[k]);
        for (auto& x : num) x = x * th0_m1;
        auto den = at_ring_element(theta_hat(Rat(-1), d, order), m.divisors[k]);
        JacobiSeries th0_c = th_c[0];
        auto den_inv = ring_inverse(m, den, proto);
        JacobiSeries th0_c_inv = th0_c.invert();
        auto factor = ring_mul(m, num, den_inv, proto);
        for (auto& x : factor) x = x * th0_c_inv;
        total = ring_mul(m, total, factor, proto);
    }

    JacobiSeries out(cap);
    for (std::size_t b = 0; b < m.basis.size(); ++b)
        if (m.integration[b] != 0) out += total[b] * RatFunc(m.integration[b]);
    return out;
}

FracPoly chi_y(const CohomologyModel& m) {
    m.validate();
    if (!m.divisors.empty()) throw precondition_error("chi_y expects a model without divisors");
    int d = m.dim();
    RatFunc proto = RatFunc(Rat(1));
    FracPoly yv = FracPoly::var();
    RatFunc y(yv), s(FracPoly(Rat(1)) - yv);  // s = 1 - y

    // f(x) = x (1 - y e^{-x s}) / (1 - e^{-x s}):
    //   numerator  N_k: N_0 = s, N_k = -y (-s)^k / k!
    //   denominator/x : D_k = (-1)^k s^{k+1} / (k+1)!
    std::vector<RatFunc> N(d + 1, RatFunc()), D(d + 1, RatFunc());
    N[0] = s;
    D[0] = s;
    RatFunc spow = s;
    Rat fact = 1;
    for (int k = 1; k <= d; ++k) {
        spow = spow * s;
        fact *= k;
        Rat sign = (k % 2 == 0) ? 1 : -1;
        N[k] = y * (spow / s) * RatFunc(sign * Rat(1) / fact) * RatFunc(Rat(-1));
        D[k] = spow * RatFunc(sign / (fact * (k + 1)));
    }
    auto f = xpoly_mul(N, xpoly_inverse(D, d, proto), d, proto);
    auto total = root_product<RatFunc>(m, f, proto);
    RatFunc chi;
    for (std::size_t b = 0; b < m.basis.size(); ++b)
        if (m.integration[b] != 0) chi += total[b] * RatFunc(m.integration[b]);
    if (!chi.is_polynomial()) throw internal_error("chi_y evaluated to a non-polynomial");
    return chi.num();
}

CohomologyModel projective_space_model(int n) {
    if (n < 0) throw input_error("negative projective dimension");
    CohomologyModel m;
    for (int i = 0; i <= n; ++i) {
        m.basis.push_back(i == 0 ? "1" : "h^" + std::to_string(i));
        m.degree.push_back(2 * i);
    }
    m.top = 2 * n;
    for (int i = 0; i <= n; ++i)
        for (int j = i; i + j <= n; ++j) {
            std::vector<Rat> v(n + 1, Rat(0));
            v[i + j] = 1;
            m.products[{i, j}] = v;
        }
    m.integration.assign(n + 1, Rat(0));
    m.integration[n] = 1;
    for (int i = 1; i <= n; ++i) {
        std::vector<Rat> c(n + 1, Rat(0));
        Rat binom = 1;
        for (int t = 0; t < i; ++t) binom = binom * (n + 1 - t) / (t + 1);
        c[i] = binom;
        m.chern.push_back(c);
    }
    return m;
}

CohomologyModel blowup_p2_model() {
    CohomologyModel m;
    m.basis = {"1", "h", "e", "pt"};
    m.degree = {0, 2, 2, 4};
    m.top = 4;
    for (int j = 0; j < 4; ++j) {
        std::vector<Rat> v(4, Rat(0));
        v[j] = 1;
        m.products[{0, j}] = v;
    }
    m.products[{1, 1}] = {0, 0, 0, 1};   // h^2 = pt
    m.products[{1, 2}] = {0, 0, 0, 0};   // h e = 0
    m.products[{2, 2}] = {0, 0, 0, -1};  // e^2 = -pt
    m.integration = {0, 0, 0, 1};
    m.chern = {{0, 3, -1, 0}, {0, 0, 0, 4}};  // c_1 = 3h - e, c_2 = 4 pt
    m.divisors = {{0, 0, 1, 0}};
    m.discrepancies = {Rat(1)};
    return m;
}

}  // namespace wb
