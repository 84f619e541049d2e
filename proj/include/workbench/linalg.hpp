#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "workbench/rat.hpp"

namespace wb {

// Exact coefficient field: p == 0 is the rationals, otherwise the prime field
// F_p. Elements are stored as Rat; F_p elements are integers in [0, p).
struct LinField {
    long p = 0;

    bool is_fp() const { return p != 0; }

    Rat reduce(const Rat& x) const {
        if (p == 0) return x;
        BigInt num = numerator(x) % p;
        BigInt den = denominator(x) % p;
        if (den == 0) throw precondition_error("denominator divisible by field characteristic");
        Rat r = Rat(num) * Rat(inv_mod(den));
        BigInt v = numerator(r) % p;
        if (v < 0) v += p;
        return Rat(v);
    }
    Rat add(const Rat& a, const Rat& b) const { return reduce(a + b); }
    Rat sub(const Rat& a, const Rat& b) const { return reduce(a - b); }
    Rat mul(const Rat& a, const Rat& b) const { return reduce(a * b); }
    Rat neg(const Rat& a) const { return reduce(-a); }
    Rat inv(const Rat& a) const {
        if (a == 0) throw internal_error("inverse of zero field element");
        if (p == 0) return 1 / a;
        return Rat(inv_mod(numerator(reduce(a))));
    }

  private:
    BigInt inv_mod(BigInt a) const {
        a %= p;
        if (a < 0) a += p;
        if (a == 0) throw precondition_error("division by zero in F_p");
        // extended Euclid
        BigInt t = 0, nt = 1, r = p, nr = a;
        while (nr != 0) {
            BigInt q = r / nr;
            std::swap(t -= q * nt, nt);
            std::swap(r -= q * nr, nr);
        }
        if (t < 0) t += p;
        return t;
    }
};

// Dense matrix over Rat; all arithmetic routed through a LinField.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Rat> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Rat(0)) {}

    Rat& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool is_zero() const {
        for (const auto& x : a)
            if (x != 0) return false;
        return true;
    }

    std::vector<Rat> col(std::size_t j) const {
        std::vector<Rat> v(rows);
        for (std::size_t i = 0; i < rows; ++i) v[i] = at(i, j);
        return v;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

inline Matrix mat_mul(const LinField& f, const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw internal_error("matrix shape mismatch in product");
    Matrix r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (x.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                r.at(i, j) = f.add(r.at(i, j), f.mul(x.at(i, k), y.at(k, j)));
        }
    return r;
}

inline std::vector<Rat> mat_vec(const LinField& f, const Matrix& m, const std::vector<Rat>& v) {
    if (m.cols != v.size()) throw internal_error("matrix/vector shape mismatch");
    std::vector<Rat> r(m.rows, Rat(0));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            if (m.at(i, j) != 0) r[i] = f.add(r[i], f.mul(m.at(i, j), v[j]));
    return r;
}

// Columns of x followed by columns of y.
inline Matrix hstack(const Matrix& x, const Matrix& y) {
    if (x.cols == 0 && x.rows == 0) return y;
    if (y.cols == 0 && y.rows == 0) return x;
    if (x.rows != y.rows) throw internal_error("hstack row mismatch");
    Matrix r(x.rows, x.cols + y.cols);
    for (std::size_t i = 0; i < x.rows; ++i) {
        for (std::size_t j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
        for (std::size_t j = 0; j < y.cols; ++j) r.at(i, x.cols + j) = y.at(i, j);
    }
    return r;
}

// Row-reduced echelon form with deterministic pivoting (leftmost column,
// topmost unused row). Pivot column indices are appended to *pivots.
inline Matrix rref(const LinField& f, Matrix m, std::vector<std::size_t>* pivots = nullptr) {
    std::size_t pr = 0;
    for (std::size_t c = 0; c < m.cols && pr < m.rows; ++c) {
        std::size_t sel = pr;
        while (sel < m.rows && f.reduce(m.at(sel, c)) == 0) ++sel;
        if (sel == m.rows) continue;
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(sel, j));
        Rat piv = f.inv(m.at(pr, c));
        for (std::size_t j = 0; j < m.cols; ++j) m.at(pr, j) = f.mul(m.at(pr, j), piv);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == pr) continue;
            Rat factor = f.reduce(m.at(i, c));
            if (factor == 0) continue;
            for (std::size_t j = 0; j < m.cols; ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(pr, j)));
        }
        if (pivots) pivots->push_back(c);
        ++pr;
    }
    return m;
}

inline std::size_t rank(const LinField& f, const Matrix& m) {
    std::vector<std::size_t> piv;
    rref(f, m, &piv);
    return piv.size();
}

// Basis of the null space {x : m x = 0}, as columns; one vector per free
// column in increasing column order.
inline Matrix kernel_basis(const LinField& f, const Matrix& m) {
    std::vector<std::size_t> piv;
    Matrix r = rref(f, m, &piv);
    std::vector<bool> is_piv(m.cols, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols; ++c)
        if (!is_piv[c]) free_cols.push_back(c);
    Matrix k(m.cols, free_cols.size());
    for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
        std::size_t fc = free_cols[fi];
        k.at(fc, fi) = 1;
        for (std::size_t pi = 0; pi < piv.size(); ++pi)
            k.at(piv[pi], fi) = f.neg(r.at(pi, fc));
    }
    return k;
}

// Solves m x = b; nullopt when b is outside the column space.
inline std::optional<std::vector<Rat>> solve(const LinField& f, const Matrix& m,
                                             const std::vector<Rat>& b) {
    Matrix aug(m.rows, m.cols + 1);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    std::vector<std::size_t> piv;
    Matrix r = rref(f, aug, &piv);
    std::vector<Rat> x(m.cols, Rat(0));
    for (std::size_t pi = 0; pi < piv.size(); ++pi) {
        if (piv[pi] == m.cols) return std::nullopt;  // pivot in augmented column
        x[piv[pi]] = r.at(pi, m.cols);
    }
    return x;
}

// Columns of z that extend the column space of d to that of [d | z], chosen
// greedily in column order; returns the complement as a matrix of columns.
inline Matrix complement_in(const LinField& f, const Matrix& d, const Matrix& z) {
    Matrix w = d;
    if (w.rows == 0 && w.cols == 0) w = Matrix(z.rows, 0);
    std::size_t base_rank = rank(f, w);
    Matrix out(z.rows, 0);
    for (std::size_t j = 0; j < z.cols; ++j) {
        Matrix cand(z.rows, w.cols + 1);
        for (std::size_t i = 0; i < z.rows; ++i) {
            for (std::size_t c = 0; c < w.cols; ++c) cand.at(i, c) = w.at(i, c);
            cand.at(i, w.cols) = z.at(i, j);
        }
        if (rank(f, cand) > base_rank) {
            w = cand;
            ++base_rank;
            Matrix grown(out.rows, out.cols + 1);
            for (std::size_t i = 0; i < out.rows; ++i) {
                for (std::size_t c = 0; c < out.cols; ++c) grown.at(i, c) = out.at(i, c);
                grown.at(i, out.cols) = z.at(i, j);
            }
            out = grown;
        }
    }
    return out;
}

}  // namespace wb
