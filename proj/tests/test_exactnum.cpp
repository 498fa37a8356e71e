#include "doctest.h"

#include "osc/numeric.hpp"
#include "osc/poly.hpp"
#include "osc/roots.hpp"
#include "osc/trig.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace osc;

namespace {

RatPoly from_roots(const std::vector<Rational>& roots) {
    RatPoly p = RatPoly::constant(1);
    for (const auto& r : roots) p = p * RatPoly({-r, Rational(1)});
    return p;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-4/2") == Rational(-2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(rational_str(Rational(-1, 3)) == "-1/3");
    CHECK(rational_str(Rational(5)) == "5");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("x"));
    CHECK(den(parse_rational("10/4")) == 2);  // always reduced
}

TEST_CASE("sqrt bounds and exact squares") {
    auto [lo, hi] = sqrt_bounds(Rational(2), 30);
    CHECK(lo * lo <= Rational(2));
    CHECK(hi * hi >= Rational(2));
    CHECK(hi - lo <= Rational(1, 1 << 30));
    CHECK(exact_sqrt(Rational(49, 64)) == Rational(7, 8));
    CHECK(!exact_sqrt(Rational(2)).has_value());
}

TEST_CASE("polynomial arithmetic and division") {
    RatPoly a = RatPoly::from_int_coeffs({-1, 0, 1});       // z^2 - 1
    RatPoly b = RatPoly::from_int_coeffs({1, 1});           // z + 1
    CHECK(a.div_exact(b) == RatPoly::from_int_coeffs({-1, 1}));
    auto [q, r] = a.divmod(RatPoly::from_int_coeffs({2, 1}));
    CHECK((q * RatPoly::from_int_coeffs({2, 1}) + r) == a);
    CHECK(a.eval(Rational(3)) == Rational(8));
    CHECK(a.shift_arg(Rational(1)).eval(Rational(2)) == a.eval(Rational(3)));
    CHECK(a.scale_arg(Rational(2)).eval(Rational(1)) == a.eval(Rational(2)));
}

TEST_CASE("squarefree decomposition") {
    RatPoly p = from_roots({Rational(2), Rational(2), Rational(2)});  // (z-2)^3
    auto dec = squarefree_decomposition(p);
    REQUIRE(dec.size() == 1);
    CHECK(dec[0].second == 3);
    CHECK(dec[0].first == RatPoly::from_int_coeffs({-2, 1}));

    RatPoly q = from_roots({Rational(1), Rational(1), Rational(3)});
    auto dq = squarefree_decomposition(q);
    REQUIRE(dq.size() == 2);
}

TEST_CASE("sturm isolation finds all real roots") {
    RatPoly p = from_roots({Rational(-3), Rational(0), Rational(1, 2), Rational(5)});
    auto ivs = isolate_real_roots(p);
    REQUIRE(ivs.size() == 4);
    std::vector<Rational> expect = {Rational(-3), Rational(0), Rational(1, 2), Rational(5)};
    for (size_t i = 0; i < 4; ++i) CHECK(ivs[i].contains(expect[i]));
}

TEST_CASE("resultant basics") {
    // Res(z^2 - 1, z - 2) = p(2) up to sign with monic p: (4 - 1) = 3.
    RatPoly a = RatPoly::from_int_coeffs({-1, 0, 1});
    RatPoly b = RatPoly::from_int_coeffs({-2, 1});
    CHECK(abs_rat(resultant(a, b)) == Rational(3));
    // Common root => resultant 0.
    CHECK(resultant(a, RatPoly::from_int_coeffs({-1, 1})) == Rational(0));
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic(1) == RatPoly::from_int_coeffs({-1, 1}));
    CHECK(cyclotomic(4) == RatPoly::from_int_coeffs({1, 0, 1}));
    CHECK(cyclotomic(10) == RatPoly::from_int_coeffs({1, -1, 1, -1, 1}));
    // prod_{d | n} Phi_d = z^n - 1 for all n <= 50.
    for (long n = 1; n <= 50; ++n) {
        RatPoly prod = RatPoly::constant(1);
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) prod = prod * cyclotomic(d);
        std::vector<Rational> v((size_t)n + 1, Rational(0));
        v[0] = -1;
        v[(size_t)n] = 1;
        CHECK(prod == RatPoly(std::move(v)));
    }
}

TEST_CASE("root isolation: rational roots") {
    RatPoly p = RatPoly::from_int_coeffs({-1, 0, 1});  // z^2 - 1
    auto roots = isolate_roots(p);
    REQUIRE(roots.size() == 2);
    std::set<Rational> vals;
    for (auto& r : roots) {
        CHECK(r.multiplicity == 1);
        CHECK(r.real);
        REQUIRE(r.is_rational_point());
        vals.insert(r.box.re.lo);
    }
    CHECK(vals == std::set<Rational>{Rational(-1), Rational(1)});
}

TEST_CASE("root isolation: cyclotomic quintic factor") {
    // z^4 + z^3 + z^2 + z + 1: four roots on the unit circle, two conjugate
    // pairs.
    RatPoly p = RatPoly::from_int_coeffs({1, 1, 1, 1, 1});
    auto roots = isolate_roots(p);
    REQUIRE(roots.size() == 4);
    int upper = 0, lower = 0;
    for (auto& r : roots) {
        CHECK(!r.real);
        CHECK(is_unit_modulus(r));
        if (r.box.im.lo > 0) ++upper;
        if (r.box.im.hi < 0) ++lower;
    }
    CHECK(upper == 2);
    CHECK(lower == 2);
    // Mirror symmetry of boxes.
    for (auto& r : roots) {
        bool found = false;
        for (auto& s : roots)
            if (s.box.re.lo == r.box.re.lo && s.box.im.lo == -r.box.im.hi &&
                s.box.im.hi == -r.box.im.lo)
                found = true;
        CHECK(found);
    }
}

TEST_CASE("root isolation: repeated root") {
    RatPoly p = from_roots({Rational(2), Rational(2), Rational(2)});
    auto roots = isolate_roots(p);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].multiplicity == 3);
    CHECK(roots[0].box.re.contains(Rational(2)));
}

TEST_CASE("root isolation: multiplicity sum equals degree (random)") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> coeff(-6, 6);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Rational> c;
        int deg = 1 + trial % 5;
        for (int i = 0; i <= deg; ++i) c.emplace_back(coeff(rng));
        if (c.back() == 0) c.back() = 1;
        RatPoly p(std::move(c));
        auto roots = isolate_roots(p);
        long total = 0;
        for (auto& r : roots) total += r.multiplicity;
        CHECK(total == p.degree());
        // Boxes pairwise disjoint (by a conservative check on distinct roots).
        for (size_t i = 0; i < roots.size(); ++i)
            for (size_t j = i + 1; j < roots.size(); ++j)
                if (!roots[i].is_rational_point() || !roots[j].is_rational_point())
                    CHECK(!(roots[i].box.re.lo == roots[j].box.re.lo &&
                            roots[i].box.im.lo == roots[j].box.im.lo));
    }
}

TEST_CASE("refine: sqrt2 to width 1/1000") {
    RatPoly p = RatPoly::from_int_coeffs({-2, 0, 1});
    auto roots = isolate_roots(p);
    REQUIRE(roots.size() == 2);
    for (auto& r : roots) {
        AlgebraicRoot fine = refine(r, Rational(1, 1000));
        CHECK(fine.box.max_width() <= Rational(1, 1000));
        // Containment: refinement never loses the root.
        CHECK(r.box.re.contains_interval(fine.box.re));
        AlgebraicRoot finer = refine(fine, Rational(1, 2000));
        CHECK(fine.box.re.contains_interval(finer.box.re));
    }
    auto pos = std::find_if(roots.begin(), roots.end(),
                            [](const AlgebraicRoot& r) { return r.box.re.hi > 0; });
    AlgebraicRoot fine = refine(*pos, Rational(1, 1000));
    auto [lo, hi] = sqrt_bounds(Rational(2), 40);
    CHECK(fine.box.re.lo <= hi);
    CHECK(fine.box.re.hi >= lo);
}

TEST_CASE("refine: root of z^2+1 in upper half plane") {
    RatPoly p = RatPoly::from_int_coeffs({1, 0, 1});
    auto roots = isolate_roots(p);
    REQUIRE(roots.size() == 2);
    for (auto& r : roots) {
        if (r.box.im.lo <= 0) continue;
        AlgebraicRoot fine = refine(r, Rational(1, 100));
        CHECK(fine.box.re.contains(Rational(0)));
        CHECK(fine.box.im.contains_interval(RealInterval(Rational(1))));
    }
}

TEST_CASE("quotient_of_roots_poly: examples") {
    // p = z^2 + 1: quotients of {i, -i} are {1, -1}.
    RatPoly q1 = quotient_of_roots_poly(RatPoly::from_int_coeffs({1, 0, 1}));
    CHECK(q1.eval(Rational(1)) == 0);
    CHECK(q1.eval(Rational(-1)) == 0);
    auto roots1 = isolate_roots(squarefree_part(q1));
    CHECK(roots1.size() == 2);

    // p = z - 2: single root, quotient set {1}.
    RatPoly q2 = quotient_of_roots_poly(RatPoly::from_int_coeffs({-2, 1}));
    auto roots2 = isolate_roots(squarefree_part(q2));
    REQUIRE(roots2.size() == 1);
    CHECK(roots2[0].box.re.contains(Rational(1)));

    // p = z^2 - 3z + 2 (roots 1, 2): quotients {1, 2, 1/2}.
    RatPoly q3 = quotient_of_roots_poly(RatPoly::from_int_coeffs({2, -3, 1}));
    auto roots3 = isolate_roots(squarefree_part(q3));
    std::set<Rational> vals;
    for (auto& r : roots3) {
        REQUIRE(r.is_rational_point());
        vals.insert(r.box.re.lo);
    }
    CHECK(vals == std::set<Rational>{Rational(1), Rational(2), Rational(1, 2)});
}

TEST_CASE("quotient_of_roots_poly: brute-force oracle on rational-rooted polynomials") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pick(-4, 4);
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<Rational> roots;
        int deg = 2 + trial % 3;
        for (int i = 0; i < deg; ++i) {
            Rational r(pick(rng));
            if (r == 0) r = Rational(trial + 1);
            roots.push_back(r);
        }
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        RatPoly p = from_roots(roots);
        RatPoly q = quotient_of_roots_poly(p);
        std::set<Rational> expected;
        for (const auto& a : roots)
            for (const auto& b : roots) expected.insert(a / b);
        for (const auto& v : expected) CHECK(q.eval(v) == 0);
        CHECK((long)expected.size() <= squarefree_part(q).degree());
        // And every rational root of q is one of the expected quotients.
        RatPoly sq = squarefree_part(q);
        for (auto& root : isolate_roots(sq))
            if (root.is_rational_point()) CHECK(expected.count(root.box.re.lo) == 1);
    }
}

TEST_CASE("pair_product_poly contains |alpha|^2 values") {
    // z^2 - 2z + 5 has roots 1 +- 2i with |alpha|^2 = 5.
    RatPoly pp = pair_product_poly(RatPoly::from_int_coeffs({5, -2, 1}));
    CHECK(pp.eval(Rational(5)) == 0);
}

TEST_CASE("root_of_unity_order: examples") {
    auto roots_i = isolate_roots(RatPoly::from_int_coeffs({1, 0, 1}));
    for (auto& r : roots_i) {
        if (r.box.im.lo <= 0) continue;
        auto kn = root_of_unity_order(r);
        REQUIRE(kn.has_value());
        CHECK(kn->first == 1);
        CHECK(kn->second == 4);
    }
    auto roots_w = isolate_roots(RatPoly::from_int_coeffs({1, 1, 1}));
    for (auto& r : roots_w) {
        if (r.box.im.lo <= 0) continue;
        auto kn = root_of_unity_order(r);
        REQUIRE(kn.has_value());
        CHECK(kn->first == 1);
        CHECK(kn->second == 3);
    }
    // (3+4i)/(3-4i): defining polynomial 25 t^2 - 14 t + 25, not cyclotomic.
    auto roots_q = isolate_roots(RatPoly::from_int_coeffs({25, -14, 25}));
    for (auto& r : roots_q) {
        CHECK(is_unit_modulus(r));
        CHECK(!root_of_unity_order(r).has_value());
    }
    // Not on the unit circle: precondition violation.
    auto roots_two = isolate_roots(RatPoly::from_int_coeffs({-2, 1}));
    CHECK_THROWS_AS((void)root_of_unity_order(roots_two[0]), std::invalid_argument);
}

TEST_CASE("root_of_unity_order: all n <= 30 with k coprime to n") {
    // Full sweep through constructed isolating boxes (valid AlgebraicRoots by
    // the separation argument in unit_root_box).
    for (long n = 1; n <= 30; ++n) {
        for (long k = 0; k < n; ++k) {
            if (std::gcd(k, n) != 1 && !(n == 1 && k == 0)) continue;
            AlgebraicRoot r;
            r.defining = cyclotomic(n);
            if (n <= 2) {
                r.box = ComplexBox::point(n == 1 ? 1 : -1, 0);
                r.real = true;
            } else {
                r.box = unit_root_box(n, k);
            }
            auto kn = root_of_unity_order(r);
            REQUIRE(kn.has_value());
            CHECK(kn->first == (n == 1 ? 0 : k));
            CHECK(kn->second == n);
        }
    }
    // Cross-check against winding-number isolation (independent of the
    // constructed boxes) on the smaller orders.
    for (long n = 3; n <= 21; ++n) {
        auto roots = isolate_roots(cyclotomic(n));
        for (long k = 1; k < n; ++k) {
            if (std::gcd(k, n) != 1) continue;
            std::vector<const AlgebraicRoot*> hits;
            for (unsigned prec = 24; prec <= 512; prec *= 2) {
                RealInterval c = cos_enclosure(Rational(k, n), Rational(0), prec);
                RealInterval s = sin_enclosure(Rational(k, n), Rational(0), prec);
                hits.clear();
                for (const auto& r : roots)
                    if (r.box.re.intersects(c) && r.box.im.intersects(s)) hits.push_back(&r);
                if (hits.size() == 1) break;
            }
            REQUIRE(hits.size() == 1);
            auto kn = root_of_unity_order(*hits[0]);
            REQUIRE(kn.has_value());
            CHECK(kn->first == k);
            CHECK(kn->second == n);
        }
    }
}

TEST_CASE("algebraic equality through different defining polynomials") {
    // sqrt(2) as root of z^2-2 and of (z^2-2)(z-5)/... use z^3-5z^2-2z+10.
    RatPoly a = RatPoly::from_int_coeffs({-2, 0, 1});
    RatPoly b = RatPoly::from_int_coeffs({10, -2, -5, 1});  // (z^2-2)(z-5)
    auto ra = isolate_roots(a), rb = isolate_roots(b);
    auto pos_a = std::find_if(ra.begin(), ra.end(),
                              [](const AlgebraicRoot& r) { return r.box.re.hi > 0; });
    auto near_sqrt2 = std::find_if(rb.begin(), rb.end(), [](const AlgebraicRoot& r) {
        return r.box.re.hi > 0 && r.box.re.lo < 2;
    });
    auto ref_of = [](AlgebraicRoot r) {
        auto rr = std::make_shared<RootRefiner>(r);
        return ComplexRefiner([rr](int level) { return rr->box(level); });
    };
    CHECK(complex_alg_equal(a, ref_of(*pos_a), b, ref_of(*near_sqrt2)));
    auto five = std::find_if(rb.begin(), rb.end(), [](const AlgebraicRoot& r) {
        return r.box.re.contains(Rational(5));
    });
    CHECK(!complex_alg_equal(a, ref_of(*pos_a), b, ref_of(*five)));
}

TEST_CASE("trig enclosures") {
    RealInterval pi = pi_interval(64);
    CHECK(pi.lo > Rational(314159, 100000));
    CHECK(pi.hi < Rational(314160, 100000));
    CHECK(pi.width() < Rational(1, Int(1) << 60));
    // sin(2 pi * 1/4) = 1, cos = 0.
    RealInterval s = sin_enclosure(Rational(1, 4), Rational(0), 40);
    CHECK(s.contains(Rational(1)));
    CHECK(s.width() < Rational(1, 1 << 30));
    RealInterval c = cos_enclosure(Rational(1, 4), Rational(0), 40);
    CHECK(c.contains(Rational(0)));
    // sin(pi/6) = 1/2.
    RealInterval s6 = sin_enclosure(Rational(1, 12), Rational(0), 40);
    CHECK(s6.contains(Rational(1, 2)));
    // Plain radian offset: sin(1/2) = 0.4794255386...
    RealInterval sr = sin_enclosure(Rational(0), Rational(1, 2), 40);
    CHECK(sr.lo > Rational(4794255, 10000000));
    CHECK(sr.hi < Rational(4794256, 10000000));
}

TEST_CASE("cyclotomic field exact values") {
    // cos(2 pi /5) = (sqrt(5)-1)/4: check 4*cos + 1 squared equals 5.
    CycloNum c = CycloNum::cosine(20, 1, 5);
    CycloNum v = c * Rational(4) + CycloNum::from_rational(20, Rational(1));
    CycloNum v2 = v * v;
    CHECK(v2.is_rational());
    CHECK(v2.rational_value() == Rational(5));
    // sin(2 pi /4) = 1 exactly.
    CycloNum s = CycloNum::sine(4, 1, 4);
    CHECK(s.is_rational());
    CHECK(s.rational_value() == Rational(1));
    // sign decisions.
    CHECK(CycloNum::cosine(20, 1, 5).sign_of_real() == 1);
    CHECK(CycloNum::cosine(20, 2, 5).sign_of_real() == -1);
    CHECK((CycloNum::cosine(20, 1, 5) - CycloNum::cosine(20, 1, 5)).sign_of_real() == 0);
    // cos(2pi/5) + cos(4pi/5) = -1/2 exactly.
    CycloNum sum = CycloNum::cosine(20, 1, 5) + CycloNum::cosine(20, 2, 5);
    CHECK(sum.is_rational());
    CHECK(sum.rational_value() == Rational(-1, 2));
}

TEST_CASE("compare_modulus exact ties") {
    // Roots of z^2+1 and of z^2+z+1 all have modulus 1.
    auto a = isolate_roots(RatPoly::from_int_coeffs({1, 0, 1}));
    auto b = isolate_roots(RatPoly::from_int_coeffs({1, 1, 1}));
    CHECK(compare_modulus(a[0], b[0]) == 0);
    auto two = isolate_roots(RatPoly::from_int_coeffs({-2, 1}));
    CHECK(compare_modulus(a[0], two[0]) == -1);
    CHECK(compare_modulus(two[0], b[0]) == 1);
}
