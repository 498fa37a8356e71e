#pragma once

// Interval arithmetic with exact rational endpoints.  These are the
// certified numeric carriers for algebraic data: every operation returns an
// interval guaranteed to contain the exact result.

#include "osc/numeric.hpp"

#include <functional>
#include <ostream>

namespace osc {

struct RealInterval {
    Rational lo, hi;

    RealInterval() : lo(0), hi(0) {}
    RealInterval(Rational point) : lo(point), hi(point) {}
    RealInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("RealInterval endpoints out of order");
    }

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool is_point() const { return lo == hi; }

    bool certainly_positive() const { return lo > 0; }
    bool certainly_negative() const { return hi < 0; }
    // -1 / 0 / +1 when the sign is certified, nullopt when straddling zero.
    std::optional<int> certain_sign() const {
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        if (lo == 0 && hi == 0) return 0;
        return std::nullopt;
    }

    bool intersects(const RealInterval& o) const { return lo <= o.hi && o.lo <= hi; }
    bool contains_interval(const RealInterval& o) const { return lo <= o.lo && o.hi <= hi; }

    RealInterval operator-() const { return {-hi, -lo}; }
    RealInterval operator+(const RealInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    RealInterval operator-(const RealInterval& o) const { return {lo - o.hi, hi - o.lo}; }
    RealInterval operator*(const RealInterval& o) const {
        Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        Rational mn = a, mx = a;
        for (const Rational& v : {b, c, d}) {
            if (v < mn) mn = v;
            if (v > mx) mx = v;
        }
        return {mn, mx};
    }
    RealInterval operator*(const Rational& s) const {
        return s >= 0 ? RealInterval{lo * s, hi * s} : RealInterval{hi * s, lo * s};
    }
    RealInterval operator+(const Rational& s) const { return {lo + s, hi + s}; }
    RealInterval operator-(const Rational& s) const { return {lo - s, hi - s}; }

    // Requires the divisor to exclude zero.
    RealInterval operator/(const RealInterval& o) const {
        if (o.contains_zero()) throw std::domain_error("interval division by interval containing 0");
        RealInterval inv{Rational(1) / o.hi, Rational(1) / o.lo};
        return *this * inv;
    }

    RealInterval square() const {
        if (lo >= 0) return {lo * lo, hi * hi};
        if (hi <= 0) return {hi * hi, lo * lo};
        Rational m = std::max(abs_rat(lo), abs_rat(hi));
        return {Rational(0), m * m};
    }

    static RealInterval hull(const RealInterval& a, const RealInterval& b) {
        return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
    }
    std::optional<RealInterval> intersect(const RealInterval& o) const {
        Rational l = std::max(lo, o.lo), h = std::min(hi, o.hi);
        if (l > h) return std::nullopt;
        return RealInterval{l, h};
    }
};

// Enclosure of sqrt over a nonnegative interval.
RealInterval sqrt_interval(const RealInterval& x, unsigned prec_bits);

struct ComplexBox {
    RealInterval re, im;

    ComplexBox() = default;
    ComplexBox(RealInterval r, RealInterval i) : re(std::move(r)), im(std::move(i)) {}
    static ComplexBox point(const Rational& r, const Rational& i) {
        return {RealInterval(r), RealInterval(i)};
    }

    ComplexBox conj() const { return {re, -im}; }
    ComplexBox operator+(const ComplexBox& o) const { return {re + o.re, im + o.im}; }
    ComplexBox operator-(const ComplexBox& o) const { return {re - o.re, im - o.im}; }
    ComplexBox operator*(const ComplexBox& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    ComplexBox operator*(const Rational& s) const { return {re * s, im * s}; }
    ComplexBox operator/(const ComplexBox& o) const {
        RealInterval n = o.abs_square();
        if (n.contains_zero()) throw std::domain_error("complex box division by box containing 0");
        ComplexBox prod = *this * o.conj();
        RealInterval inv{Rational(1) / n.hi, Rational(1) / n.lo};
        return {prod.re * inv, prod.im * inv};
    }

    RealInterval abs_square() const { return re.square() + im.square(); }
    Rational max_width() const { return std::max(re.width(), im.width()); }
    bool contains(const Rational& x, const Rational& y) const {
        return re.contains(x) && im.contains(y);
    }
    bool intersects(const ComplexBox& o) const {
        return re.intersects(o.re) && im.intersects(o.im);
    }

    ComplexBox pow(unsigned long e) const {
        ComplexBox acc = point(1, 0), b = *this;
        while (e) {
            if (e & 1) acc = acc * b;
            b = b * b;
            e >>= 1;
        }
        return acc;
    }
};

// Refinement levels: level L targets enclosures of width about 2^-(16+12L).
inline unsigned bits_for_level(int level) { return 16u + 12u * (unsigned)std::max(level, 0); }
inline Rational eps_for_level(int level) {
    return Rational(1, pow_int(2, bits_for_level(level)));
}

// Global refinement cap.  Reads OSC_PRECISION_BUDGET once (max level).
int precision_budget();

// A refinable real quantity: level -> enclosure, monotone shrinking by
// construction of the producers (not enforced here).
using RealRefiner = std::function<RealInterval(int)>;
using ComplexRefiner = std::function<ComplexBox(int)>;

inline RealRefiner constant_refiner(const Rational& v) {
    return [v](int) { return RealInterval(v); };
}

// Refine until the sign is certified or the budget is exhausted.
int certified_sign(const RealRefiner& f, int start_level = 0);
// Same but returns nullopt instead of throwing.
std::optional<int> try_certified_sign(const RealRefiner& f, int start_level = 0);

std::ostream& operator<<(std::ostream& os, const RealInterval& iv);
std::ostream& operator<<(std::ostream& os, const ComplexBox& b);

}  // namespace osc
