#pragma once

#include <map>
#include <numeric>
#include <vector>

#include "workbench/rat.hpp"

namespace wb {

inline Rat inv_of(const Rat& c) {
    if (c == 0) throw precondition_error("constant term not invertible");
    return 1 / c;
}

// Truncated multivariate power series over a commutative coefficient ring C;
// terms of total degree > cap are dropped by every operation.
template <class C>
class TruncSeries {
  public:
    using Key = std::vector<int>;

    TruncSeries(int nvars, int cap) : nvars_(nvars), cap_(cap) {
        if (nvars < 1 || cap < 0) throw precondition_error("bad series shape");
    }
    static TruncSeries constant(int nvars, int cap, const C& c) {
        TruncSeries s(nvars, cap);
        s.add_term(Key(nvars, 0), c);
        return s;
    }
    static TruncSeries variable(int nvars, int cap, int which, const C& one) {
        TruncSeries s(nvars, cap);
        Key k(nvars, 0);
        k[which] = 1;
        s.add_term(k, one);
        return s;
    }

    int nvars() const { return nvars_; }
    int cap() const { return cap_; }
    const std::map<Key, C>& terms() const { return terms_; }

    static int total_degree(const Key& k) { return std::accumulate(k.begin(), k.end(), 0); }

    void add_term(const Key& k, const C& c) {
        if (static_cast<int>(k.size()) != nvars_) throw internal_error("key arity mismatch");
        if (total_degree(k) > cap_) return;
        if (c == C{}) return;
        auto [it, fresh] = terms_.emplace(k, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second == C{}) terms_.erase(it);
        }
    }

    C coeff(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? C{} : it->second;
    }
    C constant_term() const { return coeff(Key(nvars_, 0)); }
    bool is_zero() const { return terms_.empty(); }

    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) {
        a.check(b);
        for (const auto& [k, c] : b.terms_) a.add_term(k, c);
        return a;
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        a.check(b);
        TruncSeries r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k, C{} - c);
        return r;
    }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        a.check(b);
        TruncSeries r(a.nvars_, a.cap_);
        for (const auto& [k1, c1] : a.terms_) {
            int d1 = total_degree(k1);
            for (const auto& [k2, c2] : b.terms_) {
                if (d1 + total_degree(k2) > a.cap_) continue;
                Key k(a.nvars_);
                for (int i = 0; i < a.nvars_; ++i) k[i] = k1[i] + k2[i];
                r.add_term(k, c1 * c2);
            }
        }
        return r;
    }
    TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
    TruncSeries& operator-=(const TruncSeries& o) { return *this = *this - o; }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }
    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return a.nvars_ == b.nvars_ && a.cap_ == b.cap_ && a.terms_ == b.terms_;
    }

    TruncSeries scaled(const C& s) const {
        TruncSeries r(nvars_, cap_);
        for (const auto& [k, c] : terms_) r.add_term(k, c * s);
        return r;
    }

    // Multiplicative inverse modulo degrees > cap. Newton-free: peel the
    // constant term and sum the geometric series in the nilpotent remainder.
    TruncSeries invert() const {
        C c0inv = inv_of(constant_term());
        TruncSeries u = *this;
        u.add_term(Key(nvars_, 0), C{} - constant_term());  // u = s - c0, nilpotent mod cap
        TruncSeries r = constant(nvars_, cap_, c0inv);
        TruncSeries pw = constant(nvars_, cap_, C{1});
        for (int i = 1; i <= cap_; ++i) {
            pw = pw * u;
            if (pw.is_zero()) break;
            C s = (i % 2 == 0) ? c0inv : C{} - c0inv;
            for (int j = 0; j < i; ++j) s = s * c0inv;
            r += pw.scaled(s);
        }
        return r;
    }

  private:
    void check(const TruncSeries& o) const {
        if (nvars_ != o.nvars_ || cap_ != o.cap_)
            throw internal_error("series shape mismatch in arithmetic");
    }

    int nvars_;
    int cap_;
    std::map<Key, C> terms_;
};

}  // namespace wb
