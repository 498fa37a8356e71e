#pragma once

// Certified enclosures of pi, sin, cos and atan2, plus exact arithmetic in
// cyclotomic fields.  The cyclotomic layer is what lets rational-angle sign
// questions (is  sum w_k sin(2 pi n a_k/b_k + phi_k)  zero? negative?) be
// decided exactly instead of numerically.

#include "osc/interval.hpp"
#include "osc/poly.hpp"

namespace osc {

// Enclosure of pi with width <= 2^-prec_bits (Machin's formula, cached).
RealInterval pi_interval(unsigned prec_bits);

// Enclosure of sin/cos of x = 2*pi*turns + radians, both exact rationals.
RealInterval sin_enclosure(const Rational& turns, const Rational& radians, unsigned prec_bits);
RealInterval cos_enclosure(const Rational& turns, const Rational& radians, unsigned prec_bits);

// Enclosure of atan2(y, x) / (2 pi), normalized to [0, 1), for a box not
// containing 0.  Widens gracefully; refine the box for a tighter answer.
RealInterval arg_over_2pi(const ComplexBox& z, unsigned prec_bits);

// An element of Q(zeta_L) written as a polynomial in zeta_L reduced modulo
// the L-th cyclotomic polynomial.  Supports exact zero tests and certified
// sign evaluation of real elements.
class CycloNum {
  public:
    explicit CycloNum(long L);  // zero element
    static CycloNum from_rational(long L, const Rational& q);
    // zeta_L^k
    static CycloNum root_power(long L, long k);
    // cos(2 pi a / b) resp. sin(2 pi a / b) as elements of Q(zeta_L);
    // requires b | L and 4 | L.
    static CycloNum cosine(long L, long a, long b);
    static CycloNum sine(long L, long a, long b);

    long level() const { return L_; }
    bool is_zero() const { return poly_.is_zero(); }
    bool is_rational() const { return poly_.degree() <= 0; }
    Rational rational_value() const;  // requires is_rational()

    CycloNum operator+(const CycloNum& o) const;
    CycloNum operator-(const CycloNum& o) const;
    CycloNum operator*(const CycloNum& o) const;
    CycloNum operator*(const Rational& s) const;
    bool operator==(const CycloNum& o) const;

    // Complex enclosure of the element under zeta_L = e^(2 pi i / L).
    ComplexBox enclosure(unsigned prec_bits) const;
    // For real elements: exact sign (-1/0/+1).  Throws precision_exhausted
    // only if the imaginary part fails to vanish (i.e. misuse).
    int sign_of_real() const;
    // Certified real enclosure (imaginary part verified to straddle 0).
    RealInterval real_enclosure(unsigned prec_bits) const;

  private:
    CycloNum(long L, RatPoly p);
    long L_;
    RatPoly poly_;  // reduced mod cyclotomic(L)
};

}  // namespace osc
