#include "workbench/fracpoly.hpp"

#include <sstream>

namespace wb {

std::vector<Rat> FracPoly::lattice_coeffs(const BigInt& N) const {
    std::vector<Rat> c;
    for (const auto& [e, co] : terms_) {
        Rat idx = e * Rat(N);
        if (!is_integer(idx) || idx < 0)
            throw internal_error("exponent " + rat_str(e) + " not on lattice 1/" + N.str());
        auto i = static_cast<size_t>(to_long(idx));
        if (c.size() <= i) c.resize(i + 1, Rat(0));
        c[i] = co;
    }
    return c;
}

FracPoly FracPoly::from_lattice(const std::vector<Rat>& c, const BigInt& N) {
    FracPoly p;
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) p.add_term(Rat(BigInt(i), N), c[i]);
    return p;
}

static void trim(std::vector<Rat>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

static void make_monic(std::vector<Rat>& a) {
    if (a.empty()) return;
    Rat lead = a.back();
    for (auto& x : a) x /= lead;
}

std::vector<Rat> poly_gcd(std::vector<Rat> a, std::vector<Rat> b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        make_monic(b);
        while (a.size() >= b.size() && !a.empty()) {
            Rat f = a.back();
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
            trim(a);
            if (!a.empty() && a.size() >= b.size() && a.back() == 0) trim(a);
        }
        std::swap(a, b);
    }
    make_monic(a);
    if (a.empty()) a = {Rat(1)};
    return a;
}

std::vector<Rat> poly_divexact(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> r = a, q;
    trim(r);
    std::vector<Rat> d = b;
    trim(d);
    if (d.empty()) throw internal_error("division by zero polynomial");
    if (r.empty()) return {};
    if (r.size() < d.size()) throw internal_error("inexact polynomial division");
    q.assign(r.size() - d.size() + 1, Rat(0));
    while (r.size() >= d.size() && !r.empty()) {
        Rat f = r.back() / d.back();
        size_t off = r.size() - d.size();
        q[off] = f;
        for (size_t i = 0; i < d.size(); ++i) r[off + i] -= f * d[i];
        trim(r);
    }
    if (!r.empty()) throw internal_error("inexact polynomial division");
    return q;
}

std::string FracPoly::str(const std::string& var) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // canonical printing: decreasing exponent
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Rat& e = it->first;
        Rat c = it->second;
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        bool unit = (c == 1);
        if (e == 0) {
            os << rat_str(c);
        } else {
            if (!unit) os << rat_str(c) << "*";
            os << var;
            if (e != 1) {
                if (is_integer(e) && e > 0)
                    os << "^" << rat_str(e);
                else
                    os << "^(" << rat_str(e) << ")";
            }
        }
    }
    return os.str();
}

}  // namespace wb
