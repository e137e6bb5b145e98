#pragma once

// Scalar backends for the simulation code.
//
// Everything numeric is templated on a scalar S that is either `double` or
// `Rational` (GMP mpq_class). Equilibration halves sums, so the rational
// backend stays exact: denominators grow as powers of two times the initial
// denominators, and block averages additionally contribute the block size.

#include <gmpxx.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace avgdyn {

using Rational = mpq_class;

template <class S>
inline constexpr bool is_rational_v = std::is_same_v<S, Rational>;

template <class S>
inline S scalar_from_int(long v) {
    if constexpr (is_rational_v<S>) {
        return Rational(v);
    } else {
        return static_cast<S>(v);
    }
}

// p/q with q > 0.
template <class S>
inline S scalar_ratio(long p, long q) {
    if constexpr (is_rational_v<S>) {
        Rational r(p, q);
        r.canonicalize();
        return r;
    } else {
        return static_cast<S>(p) / static_cast<S>(q);
    }
}

template <class S>
inline S half_sum(const S& a, const S& b) {
    if constexpr (is_rational_v<S>) {
        return Rational(a + b) / 2;
    } else {
        return (a + b) / 2;
    }
}

inline double to_double(const Rational& v) { return v.get_d(); }
inline double to_double(double v) { return v; }

template <class S>
inline S scalar_abs(const S& v) {
    if constexpr (is_rational_v<S>) {
        return abs(v);
    } else {
        return std::fabs(v);
    }
}

// Default comparison tolerance of a backend: exact for rationals.
template <class S>
inline S backend_tolerance() {
    if constexpr (is_rational_v<S>) {
        return Rational(0);
    } else {
        return 1e-12;
    }
}

// 17 significant digits round-trips doubles; rationals print as "p/q".
inline std::string format_scalar(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_scalar(const Rational& v) { return v.get_str(); }

// Accepts "p/q", integers, and plain decimal literals (no exponent).
Rational parse_rational(const std::string& text);

// Exact integer square root (floor).
inline long isqrt_floor(long v) {
    if (v < 0) throw std::invalid_argument("isqrt_floor: negative input");
    auto x = static_cast<long>(std::sqrt(static_cast<double>(v)));
    while (x > 0 && x * x > v) --x;
    while ((x + 1) * (x + 1) <= v) ++x;
    return x;
}

}  // namespace avgdyn
