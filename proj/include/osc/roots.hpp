#pragma once

// Certified complex root isolation for rational polynomials.  Roots are
// carried as (square-free defining factor, isolating box) pairs; boxes are
// refined by certified bisection.  The root counter inside a box is an exact
// winding-number computation built on Sturm sequences — no floating point
// anywhere in a certificate.

#include "osc/interval.hpp"
#include "osc/poly.hpp"

#include <optional>
#include <vector>

namespace osc {

struct AlgebraicRoot {
    RatPoly defining;      // square-free; the root is a root of this factor
    ComplexBox box;        // isolates exactly one root of `defining`
    int multiplicity = 1;  // multiplicity in the polynomial it came from
    bool real = false;     // real roots have a point imaginary interval
    // Set when |root| = 1 is known by construction (e.g. ratios alpha/conj).
    bool unit_circle_certified = false;

    bool is_rational_point() const { return box.re.is_point() && box.im.is_point(); }
};

// Thrown internally when a root lies on (or a factor vanishes along) the
// boundary of a candidate box; callers perturb and retry.
struct boundary_root_error : std::runtime_error {
    boundary_root_error() : std::runtime_error("root on box boundary") {}
};

// Number of roots of squarefree f strictly inside `box` (counted once each).
// Throws boundary_root_error if a root lies on the boundary.
int count_roots_in_box(const RatPoly& f, const ComplexBox& box);

// All deg(p) roots counted with multiplicity; pairwise disjoint boxes;
// conjugate roots appear as mirror-image boxes.  Requires p nonzero.
std::vector<AlgebraicRoot> isolate_roots(const RatPoly& p);

// Same root, box width <= eps in both coordinates; the refined box is
// contained in the original.
AlgebraicRoot refine(const AlgebraicRoot& r, const Rational& eps);
// Level -1 (or below) returns the root unchanged.
AlgebraicRoot refine_to_level(const AlgebraicRoot& r, int level);

// Exact decision: is the root on the unit circle?
bool is_unit_modulus(const AlgebraicRoot& r);

// If r (|r| = 1 required, certified) is a primitive n-th root of unity
// e^(2 pi i k/n), returns (k, n) with gcd(k, n) = 1; empty if the argument
// is an irrational multiple of pi.
std::optional<std::pair<long, long>> root_of_unity_order(const AlgebraicRoot& r);

// Exact equality of algebraic numbers given as roots of known polynomials
// together with shrinking enclosures (the value must really be a root of its
// polynomial; refiners take a refinement level).
bool complex_alg_equal(const RatPoly& pa, const ComplexRefiner& ra,
                       const RatPoly& pb, const ComplexRefiner& rb);
bool real_alg_equal(const RatPoly& pa, const RealRefiner& ra,
                    const RatPoly& pb, const RealRefiner& rb);

// Given a refinable complex value known to be a root of `poly`, identify the
// isolated root of `poly` it equals.
AlgebraicRoot locate_root(const RatPoly& poly, const ComplexRefiner& value);

// Is the isolated root A also a root of g?  Exact; g must divide a
// polynomial whose roots A.box isolates (callers guarantee this).
bool root_satisfies(const RatPoly& g, const AlgebraicRoot& a);

// Conjugate root (mirror box).
AlgebraicRoot conj_root(const AlgebraicRoot& r);

// Isolating box for e^(2 pi i k/n) among the n-th roots of unity, valid for
// any polynomial dividing z^n - 1.
ComplexBox unit_root_box(long n, long k);

// Exact comparison |a|^2 vs |b|^2 for two roots: -1, 0, +1.
int compare_modulus(const AlgebraicRoot& a, const AlgebraicRoot& b);

// Incremental refinement helper: caches the deepest refinement seen.
// Level -1 means "as constructed" (no refinement).
class RootRefiner {
  public:
    explicit RootRefiner(AlgebraicRoot r) : root_(std::move(r)) {}
    const AlgebraicRoot& at(int level) {
        if (level > level_) {
            root_ = refine_to_level(root_, level);
            level_ = level;
        }
        return root_;
    }
    ComplexBox box(int level) { return at(level).box; }

  private:
    AlgebraicRoot root_;
    int level_ = -2;
};

}  // namespace osc
