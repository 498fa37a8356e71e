#include "osc/trig.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace osc {

namespace {

// Alternating-series enclosure of atan(1/x) for integer x >= 2; the partial
// sums bracket the value, so stopping after a term < 2^-prec gives an
// enclosure directly.
RealInterval atan_inv(long x, unsigned prec_bits) {
    Rational term(1, x);
    Rational x2(Int(x) * x);
    Rational lo(0), hi(0), acc(0);
    Rational cutoff(Int(1), pow_int(2, prec_bits + 2));
    long k = 0;
    while (true) {
        Rational t = term / Rational(2 * k + 1);
        if (k % 2 == 0) {
            lo = acc;          // even partial sums overshoot after adding
            acc += t;
            hi = acc;
        } else {
            hi = acc;
            acc -= t;
            lo = acc;
        }
        if (t < cutoff) break;
        term /= x2;
        ++k;
    }
    return {std::min(lo, hi), std::max(lo, hi)};
}

}  // namespace

RealInterval pi_interval(unsigned prec_bits) {
    static std::map<unsigned, RealInterval> cache;
    static std::mutex mu;
    // Round requested precision up to a bucket to keep the cache small.
    unsigned bucket = 32;
    while (bucket < prec_bits) bucket *= 2;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(bucket);
    if (it != cache.end()) return it->second;
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239).
    RealInterval a = atan_inv(5, bucket + 6);
    RealInterval b = atan_inv(239, bucket + 6);
    RealInterval pi = a * Rational(16) - b * Rational(4);
    cache.emplace(bucket, pi);
    return pi;
}

namespace {

// sin enclosure on |t| <= 1.7 by Taylor with alternating tail bound.
RealInterval sin_taylor(const RealInterval& t, unsigned prec_bits) {
    RealInterval acc(Rational(0));
    RealInterval power = t;  // t^(2k+1)
    RealInterval t2 = t.square();
    Rational cutoff(Int(1), pow_int(2, prec_bits + 2));
    Rational fact(1);
    long k = 0;
    while (true) {
        // term = (-1)^k t^(2k+1) / (2k+1)!
        fact = k == 0 ? Rational(1) : fact * Rational((2 * k) * (2 * k + 1));
        RealInterval term = power * (Rational(1) / fact);
        acc = (k % 2 == 0) ? acc + term : acc - term;
        // Tail bound: |R| <= max|t|^(2k+3)/(2k+3)! <= max|term| * (1.7)^2/((2k+2)(2k+3))
        Rational m = std::max(abs_rat(term.lo), abs_rat(term.hi));
        Rational tail = m * Rational(3) / Rational((2 * k + 2) * (2 * k + 3));
        if (tail < cutoff && k >= 2) {
            return {acc.lo - tail, acc.hi + tail};
        }
        power = power * t2;
        ++k;
    }
}

RealInterval cos_taylor(const RealInterval& t, unsigned prec_bits) {
    RealInterval acc(Rational(1));
    RealInterval t2 = t.square();
    RealInterval power = t2;  // t^(2k)
    Rational cutoff(Int(1), pow_int(2, prec_bits + 2));
    Rational fact(1);
    long k = 1;
    while (true) {
        fact = fact * Rational((2 * k - 1) * (2 * k));
        RealInterval term = power * (Rational(1) / fact);
        acc = (k % 2 == 1) ? acc - term : acc + term;
        Rational m = std::max(abs_rat(term.lo), abs_rat(term.hi));
        Rational tail = m * Rational(3) / Rational((2 * k + 1) * (2 * k + 2));
        if (tail < cutoff && k >= 2) {
            return {acc.lo - tail, acc.hi + tail};
        }
        power = power * t2;
        ++k;
    }
}

// sin/cos of x = 2 pi * turns + radians with quadrant reduction.
// Returns {sin, cos}.
std::pair<RealInterval, RealInterval> sincos(const Rational& turns, const Rational& radians,
                                             unsigned prec_bits) {
    RealInterval pi = pi_interval(prec_bits + 8);
    Rational tu = frac_mod1(turns);
    // x = 2 pi tu + radians.  Find q = round(x / (pi/2)) using the pi
    // enclosure midpoint; since we only need |x - q pi/2| <= pi/4 + slack,
    // an approximate q is fine.
    Rational pimid = pi.mid();
    Rational approx = (Rational(2) * pimid * tu + radians) / (pimid / 2);
    Int q = floor_rat(approx + Rational(1, 2));
    // t = x - q pi/2 = pi (2 tu - q/2) + radians  (interval).
    RealInterval t = pi * (Rational(2) * tu - Rational(q) / 2) + RealInterval(radians);
    // |t| should be about <= pi/4 + tiny; taylor handles up to ~1.7 fine.
    RealInterval s = sin_taylor(t, prec_bits + 4);
    RealInterval c = cos_taylor(t, prec_bits + 4);
    switch (((q % 4) + 4).convert_to<int>() % 4) {
        case 0: return {s, c};
        case 1: return {c, -s};
        case 2: return {-s, -c};
        default: return {-c, s};
    }
}

}  // namespace

RealInterval sin_enclosure(const Rational& turns, const Rational& radians, unsigned prec_bits) {
    return sincos(turns, radians, prec_bits).first;
}

RealInterval cos_enclosure(const Rational& turns, const Rational& radians, unsigned prec_bits) {
    return sincos(turns, radians, prec_bits).second;
}

namespace {

// atan(u) for an interval with |u| <= 1, by the alternating series on the
// endpoints (atan is increasing).
RealInterval atan_unit(const RealInterval& u, unsigned prec_bits) {
    auto atan_point_lo = [&](const Rational& v) {
        // Lower bound of atan(v).
        Rational acc(0), p = v, v2 = v * v;
        Rational cutoff(Int(1), pow_int(2, prec_bits + 2));
        long k = 0;
        Rational last_term;
        while (true) {
            Rational t = p / Rational(2 * k + 1);
            if (k % 2 == 0) acc += t; else acc -= t;
            last_term = abs_rat(t);
            if (last_term < cutoff && k >= 1) break;
            p *= v2;
            ++k;
        }
        return std::pair<Rational, Rational>(acc - last_term, acc + last_term);
    };
    auto lo = atan_point_lo(u.lo);
    auto hi = atan_point_lo(u.hi);
    return {lo.first, hi.second};
}

}  // namespace

RealInterval arg_over_2pi(const ComplexBox& z, unsigned prec_bits) {
    const RealInterval& x = z.re;
    const RealInterval& y = z.im;
    if (x.contains_zero() && y.contains_zero())
        throw std::domain_error("arg_over_2pi: box contains 0");
    RealInterval pi = pi_interval(prec_bits + 8);
    RealInterval twopi = pi * Rational(2);
    auto div2pi = [&](const RealInterval& v) { return v / twopi; };
    // Half-plane cases; atan(u) with |u| <= 1 after choosing the axis.
    auto atan_ratio = [&](const RealInterval& nume, const RealInterval& deno) {
        return atan_unit(nume / deno, prec_bits);
    };
    RealInterval theta(Rational(0));
    bool ok = false;
    if (x.certainly_positive() && !y.contains_zero()) {
        if ((y.certainly_positive() ? y.lo : -y.hi) <= x.lo) {
            theta = atan_ratio(y, x);  // |y/x| could exceed 1 slightly; fall through otherwise
            ok = abs_rat(theta.lo) <= Rational(4) && true;
        }
    }
    if (!ok) {
        // Robust general case: reduce by quadrant using signs.
        if (x.certainly_positive() && y.square().hi <= x.square().lo) {
            theta = atan_ratio(y, x);
        } else if (y.certainly_positive() && x.square().hi <= y.square().lo) {
            theta = pi * Rational(1, 2) - atan_ratio(x, y);
        } else if (x.certainly_negative() && y.square().hi <= x.square().lo) {
            theta = pi + atan_ratio(y, x);
        } else if (y.certainly_negative() && x.square().hi <= y.square().lo) {
            theta = -(pi * Rational(1, 2)) - atan_ratio(x, y);
        } else {
            // Box spans an octant boundary: take the hull of the two corners'
            // quadrant estimates by falling back to a crude but safe bound.
            // Callers refine until the box lands in a definite octant.
            Rational qlo(0), qhi(1);
            return {qlo, qhi};
        }
    }
    RealInterval frac = div2pi(theta);
    // Normalize into [0, 1).
    Rational shift = Rational(floor_rat(frac.lo));
    return frac - shift;
}

// ---------------------------------------------------------------------------
// CycloNum

CycloNum::CycloNum(long L) : L_(L), poly_() {
    if (L < 1) throw std::invalid_argument("CycloNum level must be >= 1");
}

CycloNum::CycloNum(long L, RatPoly p) : L_(L), poly_(std::move(p)) {}

CycloNum CycloNum::from_rational(long L, const Rational& q) {
    return CycloNum(L, RatPoly::constant(q).divmod(cyclotomic(L)).second);
}

CycloNum CycloNum::root_power(long L, long k) {
    k %= L;
    if (k < 0) k += L;
    return CycloNum(L, RatPoly::monomial(1, (size_t)k).divmod(cyclotomic(L)).second);
}

CycloNum CycloNum::cosine(long L, long a, long b) {
    if (b <= 0 || L % b != 0) throw std::invalid_argument("CycloNum::cosine: b must divide L");
    long j = ((a % b) + b) % b * (L / b);
    CycloNum z = root_power(L, j), zc = root_power(L, L - j);
    return (z + zc) * Rational(1, 2);
}

CycloNum CycloNum::sine(long L, long a, long b) {
    if (b <= 0 || L % b != 0) throw std::invalid_argument("CycloNum::sine: b must divide L");
    if (L % 4 != 0) throw std::invalid_argument("CycloNum::sine: need 4 | L");
    long j = ((a % b) + b) % b * (L / b);
    CycloNum z = root_power(L, j), zc = root_power(L, L - j);
    // (z - z^-1) / (2i) = (z - z^-1) * (-i) / 2, and -i = zeta^(3L/4).
    CycloNum minus_i = root_power(L, 3 * L / 4);
    return (z - zc) * minus_i * Rational(1, 2);
}

Rational CycloNum::rational_value() const {
    if (!is_rational()) throw std::logic_error("CycloNum::rational_value on non-rational element");
    return poly_.is_zero() ? Rational(0) : poly_.coeff(0);
}

CycloNum CycloNum::operator+(const CycloNum& o) const {
    if (L_ != o.L_) throw std::invalid_argument("CycloNum level mismatch");
    return CycloNum(L_, poly_ + o.poly_);
}
CycloNum CycloNum::operator-(const CycloNum& o) const {
    if (L_ != o.L_) throw std::invalid_argument("CycloNum level mismatch");
    return CycloNum(L_, poly_ - o.poly_);
}
CycloNum CycloNum::operator*(const CycloNum& o) const {
    if (L_ != o.L_) throw std::invalid_argument("CycloNum level mismatch");
    return CycloNum(L_, (poly_ * o.poly_).divmod(cyclotomic(L_)).second);
}
CycloNum CycloNum::operator*(const Rational& s) const { return CycloNum(L_, poly_ * s); }
bool CycloNum::operator==(const CycloNum& o) const { return L_ == o.L_ && poly_ == o.poly_; }

ComplexBox CycloNum::enclosure(unsigned prec_bits) const {
    // Sum over coefficients of q_j * zeta^j with certified sin/cos values.
    unsigned work = prec_bits + 8;
    ComplexBox acc = ComplexBox::point(0, 0);
    for (long j = 0; j <= poly_.degree(); ++j) {
        Rational q = poly_.coeff((size_t)j);
        if (q == 0) continue;
        Rational turns(j, L_);
        RealInterval c = cos_enclosure(turns, Rational(0), work);
        RealInterval s = sin_enclosure(turns, Rational(0), work);
        acc = acc + ComplexBox{c * q, s * q};
    }
    return acc;
}

int CycloNum::sign_of_real() const {
    if (is_zero()) return 0;
    if (is_rational()) return sign(poly_.coeff(0));
    // Nonzero element: the real part enclosure eventually excludes 0 if the
    // element is real and nonzero; if the element is not real this loops to
    // the budget, which indicates misuse.
    for (int level = 0; level <= precision_budget(); ++level) {
        ComplexBox b = enclosure(bits_for_level(level));
        if (!b.im.contains_zero())
            throw std::logic_error("CycloNum::sign_of_real on non-real element");
        if (auto s = b.re.certain_sign()) return *s;
    }
    throw precision_exhausted("sign_of_real: nonzero cyclotomic value too close to 0");
}

RealInterval CycloNum::real_enclosure(unsigned prec_bits) const {
    ComplexBox b = enclosure(prec_bits);
    if (!b.im.contains_zero())
        throw std::logic_error("CycloNum::real_enclosure on non-real element");
    return b.re;
}

}  // namespace osc
