#pragma once

// Univariate polynomials over the rationals: arithmetic, gcd, square-free
// decomposition, Sturm sequences, resultants and cyclotomic polynomials.
// Coefficients are stored lowest degree first.

#include "osc/interval.hpp"
#include "osc/numeric.hpp"

#include <memory>
#include <string>
#include <vector>

namespace osc {

class RatPoly {
  public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }
    static RatPoly zero() { return RatPoly(); }
    static RatPoly constant(const Rational& a) { return RatPoly({a}); }
    // x^k with coefficient a.
    static RatPoly monomial(const Rational& a, size_t k);
    static RatPoly from_int_coeffs(std::vector<long long> coeffs);

    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is -1 by convention here.
    long degree() const { return (long)c_.size() - 1; }
    const Rational& operator[](size_t i) const { return c_[i]; }
    Rational coeff(size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    Rational leading() const;
    Rational constant_term() const { return coeff(0); }

    RatPoly operator+(const RatPoly& o) const;
    RatPoly operator-(const RatPoly& o) const;
    RatPoly operator-() const;
    RatPoly operator*(const RatPoly& o) const;
    RatPoly operator*(const Rational& s) const;
    bool operator==(const RatPoly& o) const { return c_ == o.c_; }

    // Field division: returns (quotient, remainder).
    std::pair<RatPoly, RatPoly> divmod(const RatPoly& d) const;
    RatPoly div_exact(const RatPoly& d) const;

    RatPoly derivative() const;
    RatPoly monic() const;
    // Reverse of coefficients: z^deg * p(1/z).
    RatPoly reversed() const;
    // p(s*x) for rational s.
    RatPoly scale_arg(const Rational& s) const;
    // p(x + t) for rational t.
    RatPoly shift_arg(const Rational& t) const;

    Rational eval(const Rational& x) const;
    RealInterval eval(const RealInterval& x) const;
    ComplexBox eval(const ComplexBox& z) const;
    // Sign of p(x) by pure integer arithmetic (no rational normalization).
    int sign_at(const Rational& x) const;

    // Multiply through by the lcm of denominators: integer-coefficient,
    // content-free version (primitive part up to sign).
    RatPoly primitive_integer() const;

    std::string str(const std::string& var = "z") const;

  private:
    void normalize();
    std::vector<Rational> c_;
};

RatPoly gcd(const RatPoly& a, const RatPoly& b);  // monic gcd
RatPoly squarefree_part(const RatPoly& p);

// Yun's algorithm: p = prod factors[i].first ^ factors[i].second, with
// square-free pairwise-coprime factors (constant factor dropped).
std::vector<std::pair<RatPoly, int>> squarefree_decomposition(const RatPoly& p);

// Number of distinct real roots of squarefree p in the half-open interval
// ]a, b].  Endpoints must satisfy a < b.
struct SturmChain {
    explicit SturmChain(const RatPoly& p);
    int variations(const Rational& x) const;
    int count_roots(const Rational& a, const Rational& b) const;  // in ]a, b]
    std::vector<RatPoly> seq;
};

// Shared, memoized chains (construction dominates isolation cost otherwise).
std::shared_ptr<const SturmChain> cached_sturm(const RatPoly& p);

// Isolating intervals [lo, hi] for every distinct real root of p (p need not
// be squarefree; roots are reported once).  Exact rational roots come back as
// point intervals.  All intervals are pairwise disjoint.
std::vector<RealInterval> isolate_real_roots(const RatPoly& p);
// Refine an isolating interval of squarefree p down to the given width.
RealInterval refine_real_root(const RatPoly& p, RealInterval iv, const Rational& eps);

// Resultant of two rational polynomials (Sylvester determinant; exact).
Rational resultant(const RatPoly& a, const RatPoly& b);

// q(t) = Res_x(p(x), p(t*x)) up to a nonzero rational factor; its roots are
// exactly the ratios alpha_i / alpha_j of roots of p.  Requires p squarefree
// with p(0) != 0.
RatPoly quotient_of_roots_poly(const RatPoly& p);

// q(t) = Res_x(p(x), x^deg(p) * p(t/x)) up to a factor; roots are the pair
// products alpha_i * alpha_j (so the |alpha|^2 values for conjugate pairs).
// Requires p(0) != 0.
RatPoly pair_product_poly(const RatPoly& p);

// Characteristic polynomial (monic, in t) of the multiplication-by-a map on
// Q[z]/(h), where a is given as a polynomial representative.  Every power or
// polynomial expression of a root of h is a root of this.
RatPoly charpoly_of_multiplication(const RatPoly& a, const RatPoly& h);

// z^e mod h (e >= 0), by square and multiply.
RatPoly pow_mod(const RatPoly& base, unsigned long e, const RatPoly& h);

const RatPoly& cyclotomic(long n);  // cached

// Lagrange interpolation through distinct sample points.
RatPoly interpolate(const std::vector<std::pair<Rational, Rational>>& points);

// All n >= 1 with euler_phi(n) <= bound.
std::vector<long> orders_with_phi_at_most(long bound);

// Real/imaginary decomposition of p(a + b t + i (c + d t)) for rational
// a, b, c, d: returns (U, V) with p(...) = U(t) + i V(t).
std::pair<RatPoly, RatPoly> restrict_to_line(const RatPoly& p, const Rational& a,
                                             const Rational& b, const Rational& c,
                                             const Rational& d);

}  // namespace osc
