#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace wb {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Error taxonomy; the CLI maps these to exit codes.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct internal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string rat_str(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

// Parses "p/q" or "p" (exactness rides on strings in input documents).
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw input_error("rational with zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw input_error("malformed rational: " + s);
    }
}

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

inline long to_long(const Rat& r) {
    if (!is_integer(r)) throw internal_error("expected integer, got " + rat_str(r));
    return static_cast<long>(numerator(r));
}

// Exact n-th root of a nonnegative integer, if it exists.
inline std::optional<BigInt> exact_iroot(const BigInt& a, unsigned n) {
    if (a < 0) return std::nullopt;
    if (a == 0 || a == 1 || n == 1) return a;
    BigInt lo = 0, hi = a;
    while (lo < hi) {
        BigInt mid = (lo + hi) / 2;
        BigInt p = 1;
        bool over = false;
        for (unsigned i = 0; i < n && !over; ++i) {
            p *= mid;
            if (p > a) over = true;
        }
        if (over)
            hi = mid;
        else if (p == a)
            return mid;
        else
            lo = mid + 1;
    }
    return std::nullopt;
}

// x^(p/q) as an exact rational; nullopt when no exact root exists.
inline std::optional<Rat> rat_pow(const Rat& base, const Rat& exp) {
    if (exp == 0) return Rat(1);
    if (base == 0) return exp > 0 ? std::optional<Rat>(Rat(0)) : std::nullopt;
    BigInt p = numerator(exp);
    unsigned q = static_cast<unsigned>(denominator(exp));
    Rat b = base;
    if (p < 0) {
        b = 1 / b;
        p = -p;
    }
    if (q > 1) {
        if (b < 0) return std::nullopt;
        auto rn = exact_iroot(numerator(b), q);
        auto rd = exact_iroot(denominator(b), q);
        if (!rn || !rd) return std::nullopt;
        b = Rat(*rn, *rd);
    }
    Rat out = 1;
    for (BigInt i = 0; i < p; ++i) out *= b;
    return out;
}

}  // namespace wb
