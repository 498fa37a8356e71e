#pragma once

// Exact arithmetic substrate: arbitrary-precision integers and reduced
// rationals, plus the handful of integer helpers the rest of the library
// leans on.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace osc {

using Int = boost::multiprecision::cpp_int;
// Always reduced, denominator > 0 (maintained by cpp_rational itself).
using Rational = boost::multiprecision::cpp_rational;

// Raised when a certification cannot be completed within the configured
// refinement budget.  Callers translate this into an explicit
// "precision exhausted" outcome; it must never be swallowed silently.
struct precision_exhausted : std::runtime_error {
    explicit precision_exhausted(const std::string& what) : std::runtime_error(what) {}
};

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sign(const Int& x) { return x.sign(); }
inline int sign(const Rational& q) { return q.sign(); }

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }
inline Rational abs_rat(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Int gcd_int(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline long long to_ll(const Int& x) { return x.convert_to<long long>(); }

// Largest integer <= q.
inline Int floor_rat(const Rational& q) {
    Int n = num(q), d = den(q);
    Int quo = n / d;
    if (n < 0 && quo * d != n) --quo;
    return quo;
}

inline Int ceil_rat(const Rational& q) { return -floor_rat(-q); }

// q - floor(q), in [0, 1).
inline Rational frac_mod1(const Rational& q) { return q - Rational(floor_rat(q)); }

inline Rational pow_rat(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    Rational b = e < 0 ? Rational(1) / base : base;
    unsigned long k = e < 0 ? -(unsigned long)e : (unsigned long)e;
    Rational acc(1);
    while (k) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

inline Int pow_int(Int base, unsigned long e) {
    Int acc(1);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

// floor(sqrt(x)) for x >= 0.
inline Int isqrt(const Int& x) {
    if (x < 0) throw std::invalid_argument("isqrt of negative");
    return boost::multiprecision::sqrt(x);
}

// Exact rational square root if one exists.
std::optional<Rational> exact_sqrt(const Rational& q);

// Rational enclosure [lo, hi] of sqrt(q) with hi - lo <= 2^-prec_bits, q >= 0.
std::pair<Rational, Rational> sqrt_bounds(const Rational& q, unsigned prec_bits);

// "p/q" (or "p") with arbitrary-precision parts; rejects zero denominators.
Rational parse_rational(const std::string& s);
std::string rational_str(const Rational& q);

// Euler phi for small arguments.
long euler_phi(long n);

// Extended gcd: returns g = gcd(a,b) and x,y with a*x + b*y = g.
struct egcd_result { Int g, x, y; };
egcd_result egcd(Int a, Int b);

}  // namespace osc
