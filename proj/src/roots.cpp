#include "osc/roots.hpp"

#include "osc/trig.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace osc {

namespace {

// ---------------------------------------------------------------------------
// Winding number machinery

int quadrant_of(int su, int sv) {
    // (+,+) -> 0, (-,+) -> 1, (-,-) -> 2, (+,-) -> 3
    if (su > 0 && sv > 0) return 0;
    if (su < 0 && sv > 0) return 1;
    if (su < 0 && sv < 0) return 2;
    if (su > 0 && sv < 0) return 3;
    throw std::logic_error("quadrant_of: zero sign");
}

RatPoly deflate_at(RatPoly p, const Rational& r) {
    RatPoly lin({-r, Rational(1)});
    while (p.degree() > 0 && p.eval(r) == 0) p = p.div_exact(lin);
    return p;
}

// Isolating intervals for the distinct roots of `poly` inside ]0, 1[,
// refined until strictly interior.  `poly` must not vanish at 0 or 1.
std::vector<RealInterval> roots_in_unit_interval(const RatPoly& poly) {
    std::vector<RealInterval> out;
    if (poly.degree() <= 0) return out;
    RatPoly sf = squarefree_part(poly);
    auto chain_ptr = cached_sturm(sf);
    const SturmChain& chain = *chain_ptr;
    for (RealInterval iv : isolate_real_roots(sf)) {
        if (iv.hi <= 0 || iv.lo >= 1) continue;
        if (!iv.is_point()) {
            Rational lo = std::max(iv.lo, Rational(0));
            Rational hi = std::min(iv.hi, Rational(1));
            if (!(lo < hi)) continue;
            if (chain.count_roots(lo, hi) == 0) continue;
            iv = RealInterval{lo, hi};
            // Pull strictly inside ]0,1[ (the root is interior since the
            // endpoints are not roots).
            while (iv.lo <= 0 || iv.hi >= 1) iv = refine_real_root(sf, iv, iv.width() / 4);
        } else {
            if (iv.lo <= 0 || iv.lo >= 1) continue;
        }
        out.push_back(iv);
    }
    return out;
}

// Refine until all intervals (roots of su resp. sv) are pairwise disjoint.
void separate_events(const RatPoly& su, std::vector<RealInterval>& us, const RatPoly& sv,
                     std::vector<RealInterval>& vs) {
    auto shrink = [](const RatPoly& p, RealInterval& iv) {
        if (!iv.is_point()) iv = refine_real_root(p, iv, iv.width() / 4);
    };
    for (int guard = 0;; ++guard) {
        if (guard > 4096) throw std::logic_error("separate_events failed to converge");
        bool again = false;
        for (auto& a : us)
            for (auto& b : vs)
                if (a.intersects(b)) {
                    shrink(su, a);
                    shrink(sv, b);
                    again = true;
                }
        auto self = [&](const RatPoly& p, std::vector<RealInterval>& list) {
            for (size_t i = 0; i < list.size(); ++i)
                for (size_t j = i + 1; j < list.size(); ++j)
                    if (list[i].intersects(list[j])) {
                        shrink(p, list[i]);
                        shrink(p, list[j]);
                        again = true;
                    }
        };
        self(su, us);
        self(sv, vs);
        if (!again) return;
    }
}

// Quadrant sample sequence along one edge (t from 0 to 1).
std::vector<int> walk_edge(const RatPoly& U_in, const RatPoly& V_in) {
    if (U_in.is_zero() && V_in.is_zero())
        throw std::logic_error("walk_edge: polynomial vanishes on an edge");
    if (U_in.is_zero() || V_in.is_zero()) {
        // The image of this edge lies on a coordinate axis (the box edge sits
        // on a symmetry line of f).  If f has no zero on the closed edge, a
        // small perturbation pushing the arc off the axis leaves the winding
        // number unchanged, so treat the vanishing component as +0.
        RatPoly w = (V_in.is_zero() ? U_in : V_in).primitive_integer();
        if (w.sign_at(Rational(0)) == 0 || w.sign_at(Rational(1)) == 0)
            throw boundary_root_error();
        if (w.degree() > 0 && cached_sturm(squarefree_part(w))->count_roots(0, 1) > 0)
            throw boundary_root_error();
        int s = w.sign_at(Rational(1, 2));
        return {V_in.is_zero() ? quadrant_of(s, +1) : quadrant_of(+1, s)};
    }
    // Positive rescaling keeps signs and shrinks coefficients.
    RatPoly U = U_in.primitive_integer();
    RatPoly V = V_in.primitive_integer();
    RatPoly g = gcd(U, V);
    if (g.degree() > 0) {
        if (g.eval(Rational(0)) == 0 || g.eval(Rational(1)) == 0) throw boundary_root_error();
        if (cached_sturm(squarefree_part(g))->count_roots(0, 1) > 0) throw boundary_root_error();
    }
    // Events strictly inside the edge; zeros at the corners (of one of U, V
    // alone) are handled by the inter-edge transition logic.
    RatPoly ue = deflate_at(deflate_at(U, Rational(0)), Rational(1));
    RatPoly ve = deflate_at(deflate_at(V, Rational(0)), Rational(1));
    RatPoly su = ue.degree() > 0 ? squarefree_part(ue) : ue;
    RatPoly sv = ve.degree() > 0 ? squarefree_part(ve) : ve;
    std::vector<RealInterval> us = roots_in_unit_interval(ue);
    std::vector<RealInterval> vs = roots_in_unit_interval(ve);
    separate_events(su, us, sv, vs);
    std::vector<RealInterval> events;
    events.insert(events.end(), us.begin(), us.end());
    events.insert(events.end(), vs.begin(), vs.end());
    std::sort(events.begin(), events.end(),
              [](const RealInterval& a, const RealInterval& b) { return a.lo < b.lo; });
    std::vector<Rational> samples;
    Rational prev(0);
    for (const auto& e : events) {
        samples.push_back((prev + e.lo) / 2);
        prev = e.hi;
    }
    samples.push_back((prev + 1) / 2);
    std::vector<int> quadrants;
    for (const Rational& s : samples) {
        int a = sign(U.eval(s));
        int b = sign(V.eval(s));
        if (a == 0 || b == 0) throw std::logic_error("edge walk sampled a root");
        quadrants.push_back(quadrant_of(a, b));
    }
    return quadrants;
}

}  // namespace

int count_roots_in_box(const RatPoly& f, const ComplexBox& box) {
    const Rational x1 = box.re.lo, x2 = box.re.hi, y1 = box.im.lo, y2 = box.im.hi;
    if (!(x1 < x2 && y1 < y2))
        throw std::invalid_argument("count_roots_in_box: box must have positive area");
    for (const auto& [cx, cy] : {std::pair{x1, y1}, {x2, y1}, {x2, y2}, {x1, y2}}) {
        ComplexBox corner = ComplexBox::point(cx, cy);
        ComplexBox val = f.eval(corner);
        if (val.re.lo == 0 && val.re.hi == 0 && val.im.lo == 0 && val.im.hi == 0)
            throw boundary_root_error();
    }
    // Counterclockwise boundary.
    struct Seg { Rational a, b, c, d; };
    const Seg segs[4] = {
        {x1, x2 - x1, y1, Rational(0)},
        {x2, Rational(0), y1, y2 - y1},
        {x2, x1 - x2, y2, Rational(0)},
        {x1, Rational(0), y2, y1 - y2},
    };
    std::vector<int> circle;
    for (const auto& s : segs) {
        auto [U, V] = restrict_to_line(f, s.a, s.b, s.c, s.d);
        std::vector<int> q = walk_edge(U, V);
        circle.insert(circle.end(), q.begin(), q.end());
    }
    long total = 0;
    for (size_t i = 0; i < circle.size(); ++i) {
        int q1 = circle[i], q2 = circle[(i + 1) % circle.size()];
        int d = (q2 - q1 + 4) % 4;
        if (d == 0) continue;
        if (d == 1) ++total;
        else if (d == 3) --total;
        else throw std::logic_error("winding walk jumped two quadrants");
    }
    if (total % 4 != 0) throw std::logic_error("winding total not divisible by 4");
    return (int)(total / 4);
}

namespace {

// ---------------------------------------------------------------------------
// Isolation

Rational dyadic_ceil_pow2(const Rational& x) {
    Rational p(1);
    while (p < x) p *= 2;
    return p;
}

Rational dyadic_floor_pos(const Rational& x) {
    Rational p(1);
    if (p <= x) {
        while (p * 2 <= x) p *= 2;
        return p;
    }
    Rational tiny(Int(1), pow_int(2, 1024));
    while (p > x && p > tiny) p /= 2;
    return p;
}

Rational cauchy_root_bound(const RatPoly& p) {
    Rational m(0);
    Rational lead = abs_rat(p.leading());
    for (long i = 0; i < p.degree(); ++i) m = std::max(m, abs_rat(p.coeff((size_t)i)) / lead);
    return m + 1;
}

// Strict positive lower bound for |Im| of every non-real root of squarefree g
// (Mahler's root-separation bound: conjugate pairs are roots 2|Im| apart).
Rational min_imag_lower_bound(const RatPoly& g) {
    RatPoly gi = g.primitive_integer();
    Rational res = abs_rat(resultant(gi, gi.derivative()));
    if (res == 0) throw std::logic_error("min_imag_lower_bound: polynomial not squarefree");
    Rational disc = res / abs_rat(gi.leading());
    long d = gi.degree();
    Rational norm2(0);
    for (const auto& c : gi.coeffs()) norm2 += c * c;
    Rational x = Rational(3) * disc / (pow_rat(Rational(d), d + 2) * pow_rat(norm2, d - 1));
    return dyadic_floor_pos(std::min(x, Rational(1)) / 4);
}

// Split coordinate near the middle of [lo, hi] whose grid line across the box
// avoids all roots of f.
Rational safe_split(const RatPoly& f, bool vertical, const Rational& lo, const Rational& hi,
                    const RealInterval& cross) {
    Rational w = hi - lo;
    const Rational mid = (lo + hi) / 2;
    const Rational candidates[9] = {
        mid,
        mid + w / 8,  mid - w / 8,
        mid + w / 16, mid - w / 16,
        mid + w / 32, mid - w / 32,
        lo + w * Rational(7, 24), hi - w * Rational(7, 24),
    };
    for (const Rational& s : candidates) {
        auto [U, V] = vertical
                          ? restrict_to_line(f, s, Rational(0), cross.lo, cross.width())
                          : restrict_to_line(f, cross.lo, cross.width(), s, Rational(0));
        RatPoly g = U.is_zero() ? V : (V.is_zero() ? U : gcd(U, V));
        if (g.degree() <= 0) return s;
        if (g.eval(Rational(0)) != 0 && g.eval(Rational(1)) != 0 &&
            cached_sturm(squarefree_part(g))->count_roots(0, 1) == 0)
            return s;
    }
    throw std::logic_error("safe_split: no root-free grid line found");
}

// Isolate all roots of squarefree g strictly above the real axis.
std::vector<ComplexBox> isolate_upper(const RatPoly& g, long expected) {
    std::vector<ComplexBox> out;
    if (expected == 0) return out;
    Rational bound = dyadic_ceil_pow2(cauchy_root_bound(g));
    // Lower the bottom edge until all upper-half roots are inside.  The
    // Mahler separation bound guarantees termination but is far too small to
    // start from.
    std::optional<Rational> floor_delta;
    Rational delta = bound / 4;
    ComplexBox initial;
    while (true) {
        initial = ComplexBox{RealInterval{-bound, bound}, RealInterval{delta, bound}};
        int n = -1;
        try {
            n = count_roots_in_box(g, initial);
        } catch (const boundary_root_error&) {
            delta = delta * 3 / 4;  // still a dyadic-denominator rational
            continue;
        }
        if (n == expected) break;
        delta /= 2;
        if (!floor_delta && delta < Rational(1, 1 << 16)) floor_delta = min_imag_lower_bound(g);
        if (floor_delta && delta < *floor_delta)
            throw std::logic_error("isolate_upper: count never reached expected");
    }
    std::vector<ComplexBox> queue = {initial};
    while (!queue.empty()) {
        ComplexBox box = queue.back();
        queue.pop_back();
        int n = count_roots_in_box(g, box);
        if (n == 0) continue;
        if (n == 1) {
            out.push_back(box);
            continue;
        }
        Rational sx = safe_split(g, true, box.re.lo, box.re.hi, box.im);
        Rational sy = safe_split(g, false, box.im.lo, box.im.hi, box.re);
        queue.push_back({RealInterval{box.re.lo, sx}, RealInterval{box.im.lo, sy}});
        queue.push_back({RealInterval{sx, box.re.hi}, RealInterval{box.im.lo, sy}});
        queue.push_back({RealInterval{box.re.lo, sx}, RealInterval{sy, box.im.hi}});
        queue.push_back({RealInterval{sx, box.re.hi}, RealInterval{sy, box.im.hi}});
    }
    if ((long)out.size() != expected)
        throw std::logic_error("isolate_upper: lost or duplicated roots");
    return out;
}

// Smallest-denominator rational in [lo, hi].
Rational simplest_rational_in(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw std::invalid_argument("simplest_rational_in: empty interval");
    if (lo <= 0 && 0 <= hi) return Rational(0);
    if (hi < 0) return -simplest_rational_in(-hi, -lo);
    Int c = ceil_rat(lo);
    if (Rational(c) <= hi) return Rational(c);
    Int fl = floor_rat(lo);
    // lo, hi strictly between fl and fl+1.
    Rational inner = simplest_rational_in(Rational(1) / (hi - Rational(fl)),
                                          Rational(1) / (lo - Rational(fl)));
    return Rational(fl) + Rational(1) / inner;
}

// Exact rational roots of squarefree g (removed from g as they are found).
std::vector<Rational> extract_rational_roots(RatPoly& g) {
    std::vector<Rational> out;
    if (g.degree() <= 0) return out;
    RatPoly gi = g.primitive_integer();
    Int lead = abs_int(num(gi.leading()));
    for (RealInterval iv : isolate_real_roots(g)) {
        if (iv.is_point()) {
            out.push_back(iv.lo);
            continue;
        }
        RealInterval cur = iv;
        while (true) {
            Rational cand = simplest_rational_in(cur.lo, cur.hi);
            if (g.eval(cand) == 0) {
                out.push_back(cand);
                break;
            }
            // A rational root here would have denominator dividing the
            // leading coefficient; once even the simplest candidate exceeds
            // it the root is irrational.
            if (den(cand) > lead) break;
            cur = refine_real_root(g, cur, cur.width() / 16);
            if (cur.is_point()) {
                out.push_back(cur.lo);
                break;
            }
        }
    }
    for (const Rational& r : out) g = g.div_exact(RatPoly({-r, Rational(1)}));
    return out;
}

}  // namespace

std::vector<AlgebraicRoot> isolate_roots(const RatPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("isolate_roots of the zero polynomial");
    std::vector<AlgebraicRoot> out;
    if (p.degree() == 0) return out;
    size_t zero_mult = 0;
    while (zero_mult < p.coeffs().size() && p.coeffs()[zero_mult] == 0) ++zero_mult;
    RatPoly q = p;
    if (zero_mult > 0) {
        std::vector<Rational> v(p.coeffs().begin() + (long)zero_mult, p.coeffs().end());
        q = RatPoly(std::move(v));
        AlgebraicRoot zr;
        zr.defining = RatPoly({Rational(0), Rational(1)});
        zr.box = ComplexBox::point(0, 0);
        zr.multiplicity = (int)zero_mult;
        zr.real = true;
        out.push_back(zr);
    }
    if (q.degree() > 0) {
        for (auto& [factor, mult] : squarefree_decomposition(q)) {
            RatPoly g = factor;
            for (const Rational& r : extract_rational_roots(g)) {
                AlgebraicRoot ar;
                ar.defining = RatPoly({-r, Rational(1)});
                ar.box = ComplexBox::point(r, 0);
                ar.multiplicity = mult;
                ar.real = true;
                out.push_back(ar);
            }
            if (g.degree() <= 0) continue;
            std::vector<RealInterval> real_ivs = isolate_real_roots(g);
            for (const auto& iv : real_ivs) {
                AlgebraicRoot ar;
                ar.defining = g;
                ar.box = ComplexBox{iv, RealInterval(Rational(0))};
                ar.multiplicity = mult;
                ar.real = true;
                out.push_back(ar);
            }
            long rem = g.degree() - (long)real_ivs.size();
            if (rem % 2 != 0) throw std::logic_error("isolate_roots: odd non-real root count");
            if (rem == 0) continue;
            for (const auto& box : isolate_upper(g, rem / 2)) {
                AlgebraicRoot ar;
                ar.defining = g;
                ar.box = box;
                ar.multiplicity = mult;
                ar.real = false;
                out.push_back(ar);
                out.push_back(conj_root(ar));
            }
        }
    }
    long total = 0;
    for (const auto& r : out) total += r.multiplicity;
    if (total != p.degree()) throw std::logic_error("isolate_roots: multiplicity sum mismatch");
    std::sort(out.begin(), out.end(), [](const AlgebraicRoot& a, const AlgebraicRoot& b) {
        if (a.box.re.lo != b.box.re.lo) return a.box.re.lo < b.box.re.lo;
        return a.box.im.lo < b.box.im.lo;
    });
    return out;
}

AlgebraicRoot conj_root(const AlgebraicRoot& r) {
    AlgebraicRoot c = r;
    c.box = r.box.conj();
    return c;
}

AlgebraicRoot refine(const AlgebraicRoot& r, const Rational& eps) {
    if (eps <= 0) throw std::invalid_argument("refine: eps must be positive");
    AlgebraicRoot out = r;
    if (r.is_rational_point()) return out;
    if (r.real) {
        out.box.re = refine_real_root(r.defining, r.box.re, eps);
        if (out.box.re.is_point()) out.box.im = RealInterval(Rational(0));
        return out;
    }
    bool lower = r.box.im.hi <= 0;
    ComplexBox box = lower ? r.box.conj() : r.box;
    while (box.max_width() > eps) {
        Rational sx = safe_split(r.defining, true, box.re.lo, box.re.hi, box.im);
        Rational sy = safe_split(r.defining, false, box.im.lo, box.im.hi, box.re);
        const ComplexBox quads[4] = {
            {RealInterval{box.re.lo, sx}, RealInterval{box.im.lo, sy}},
            {RealInterval{sx, box.re.hi}, RealInterval{box.im.lo, sy}},
            {RealInterval{box.re.lo, sx}, RealInterval{sy, box.im.hi}},
            {RealInterval{sx, box.re.hi}, RealInterval{sy, box.im.hi}},
        };
        bool found = false;
        for (const auto& quad : quads) {
            if (count_roots_in_box(r.defining, quad) == 1) {
                box = quad;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("refine: root vanished during subdivision");
    }
    out.box = lower ? box.conj() : box;
    return out;
}

AlgebraicRoot refine_to_level(const AlgebraicRoot& r, int level) {
    if (level < 0) return r;
    return refine(r, eps_for_level(level));
}

// ---------------------------------------------------------------------------
// Identification and equality

namespace {

const std::vector<AlgebraicRoot>& isolated_cache(const RatPoly& poly) {
    static std::map<std::vector<Rational>, std::vector<AlgebraicRoot>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(poly.coeffs());
    if (it == cache.end()) it = cache.emplace(poly.coeffs(), isolate_roots(poly)).first;
    return it->second;
}

}  // namespace

AlgebraicRoot locate_root(const RatPoly& poly, const ComplexRefiner& value) {
    std::vector<AlgebraicRoot> roots = isolated_cache(poly);
    for (int level = -1; level <= precision_budget(); ++level) {
        ComplexBox v = value(level);
        std::vector<size_t> hits;
        for (size_t i = 0; i < roots.size(); ++i)
            if (roots[i].box.intersects(v)) hits.push_back(i);
        if (hits.size() == 1) return roots[hits[0]];
        if (hits.empty())
            throw std::logic_error("locate_root: value is not a root of the polynomial");
        for (size_t i : hits) roots[i] = refine_to_level(roots[i], level);
    }
    throw precision_exhausted("locate_root: could not separate candidate roots");
}

bool root_satisfies(const RatPoly& g, const AlgebraicRoot& a) {
    if (g.degree() <= 0) return false;
    if (g.monic() == a.defining.monic()) return true;
    if (a.is_rational_point()) {
        if (!a.real) throw std::logic_error("root_satisfies: complex rational point unsupported");
        return g.eval(a.box.re.lo) == 0;
    }
    if (a.real) {
        // The interval endpoints are never roots of the defining factor, and
        // g divides a polynomial containing the defining factor's roots.
        RatPoly gs = squarefree_part(g);
        if (gs.eval(a.box.re.lo) == 0 || gs.eval(a.box.re.hi) == 0)
            throw std::logic_error("root_satisfies: root of g at interval endpoint");
        return cached_sturm(gs)->count_roots(a.box.re.lo, a.box.re.hi) == 1;
    }
    return count_roots_in_box(squarefree_part(g), a.box) == 1;
}

namespace {

// Index of the isolated root of g that a (a certified root of g) equals.
size_t index_among_roots(const RatPoly& g, const AlgebraicRoot& a) {
    std::vector<AlgebraicRoot> roots = isolated_cache(g);
    AlgebraicRoot cur = a;
    for (int level = -1; level <= precision_budget(); ++level) {
        std::vector<size_t> hits;
        for (size_t i = 0; i < roots.size(); ++i)
            if (roots[i].box.intersects(cur.box)) hits.push_back(i);
        if (hits.size() == 1) return hits[0];
        if (hits.empty()) throw std::logic_error("index_among_roots: value lost");
        for (size_t i : hits) roots[i] = refine_to_level(roots[i], level);
        cur = refine_to_level(cur, level);
    }
    throw precision_exhausted("index_among_roots: could not pin the root");
}

}  // namespace

bool complex_alg_equal(const RatPoly& pa, const ComplexRefiner& ra, const RatPoly& pb,
                       const ComplexRefiner& rb) {
    RatPoly sa = squarefree_part(pa), sb = squarefree_part(pb);
    RatPoly g = gcd(sa, sb);
    if (g.degree() <= 0) return false;  // no common root at all
    AlgebraicRoot a = locate_root(sa, ra);
    AlgebraicRoot b = locate_root(sb, rb);
    if (!root_satisfies(g, a) || !root_satisfies(g, b)) return false;
    return index_among_roots(g, a) == index_among_roots(g, b);
}

bool real_alg_equal(const RatPoly& pa, const RealRefiner& ra, const RatPoly& pb,
                    const RealRefiner& rb) {
    auto ca = [ra](int level) { return ComplexBox{ra(level), RealInterval(Rational(0))}; };
    auto cb = [rb](int level) { return ComplexBox{rb(level), RealInterval(Rational(0))}; };
    return complex_alg_equal(pa, ca, pb, cb);
}

namespace {

RatPoly modulus_square_poly(const RatPoly& defining) {
    static std::map<std::vector<Rational>, RatPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(defining.coeffs());
    if (it != cache.end()) return it->second;
    RatPoly f = defining;
    // Strip a root at zero if present so the pair-product polynomial exists.
    while (f.degree() > 0 && f.constant_term() == 0)
        f = f.div_exact(RatPoly::monomial(1, 1));
    RatPoly result = f.degree() == 0 ? RatPoly({Rational(0), Rational(1)})
                                     : pair_product_poly(f);
    return cache.emplace(defining.coeffs(), std::move(result)).first->second;
}

}  // namespace

int compare_modulus(const AlgebraicRoot& a, const AlgebraicRoot& b) {
    bool a_zero = a.is_rational_point() && a.box.re.lo == 0;
    bool b_zero = b.is_rational_point() && b.box.re.lo == 0;
    if (a_zero || b_zero) {
        if (a_zero && b_zero) return 0;
        return a_zero ? -1 : 1;
    }
    {
        RootRefiner rra(a), rrb(b);
        for (int level = -1; level <= 3; ++level) {
            RealInterval ma = rra.box(level).abs_square(), mb = rrb.box(level).abs_square();
            if (ma.hi < mb.lo) return -1;
            if (mb.hi < ma.lo) return 1;
        }
    }
    RatPoly pa_poly = modulus_square_poly(a.defining);
    RatPoly pb_poly = modulus_square_poly(b.defining);
    auto mod_ref = [](const AlgebraicRoot& r) {
        auto rr = std::make_shared<RootRefiner>(r);
        return RealRefiner([rr](int level) { return rr->box(level).abs_square(); });
    };
    if (real_alg_equal(pa_poly, mod_ref(a), pb_poly, mod_ref(b))) return 0;
    RootRefiner rra(a), rrb(b);
    for (int level = -1; level <= precision_budget(); ++level) {
        RealInterval ma = rra.box(level).abs_square(), mb = rrb.box(level).abs_square();
        if (ma.hi < mb.lo) return -1;
        if (mb.hi < ma.lo) return 1;
    }
    throw precision_exhausted("compare_modulus: unequal moduli failed to separate");
}

// ---------------------------------------------------------------------------
// Unit circle / roots of unity

bool is_unit_modulus(const AlgebraicRoot& r) {
    if (r.unit_circle_certified) return true;
    if (r.real) {
        // The box isolates one root of `defining`; if 1 or -1 is a root of
        // `defining` inside the box, that root is ours.
        for (Rational v : {Rational(1), Rational(-1)})
            if (r.defining.eval(v) == 0 && r.box.re.contains(v)) return true;
        return false;
    }
    RatPoly pp = modulus_square_poly(r.defining);
    auto rr = std::make_shared<RootRefiner>(r);
    RealRefiner mod_ref([rr](int level) { return rr->box(level).abs_square(); });
    if (pp.eval(Rational(1)) != 0) {
        // |r|^2 is a root of pp, and 1 is not: the enclosure must separate.
        for (int level = -1; level <= precision_budget(); ++level)
            if (!mod_ref(level).contains(Rational(1))) return false;
        throw precision_exhausted("is_unit_modulus: modulus enclosure stuck at 1");
    }
    RatPoly one({Rational(-1), Rational(1)});
    return real_alg_equal(pp, mod_ref, one, constant_refiner(Rational(1)));
}

// An isolating box for e^(2 pi i k/n) among roots of any divisor of z^n - 1,
// built from certified trig enclosures: distinct n-th roots of unity are at
// distance >= 2 sin(pi/n) >= 4/n apart, so half-width 1/(4n) isolates.
ComplexBox unit_root_box(long n, long k) {
    unsigned prec = 8;
    while ((1L << prec) < 16 * n) ++prec;
    RealInterval c = cos_enclosure(Rational(k, n), Rational(0), prec);
    RealInterval s = sin_enclosure(Rational(k, n), Rational(0), prec);
    Rational h(1, 4 * n);
    return {RealInterval{c.lo - h, c.hi + h}, RealInterval{s.lo - h, s.hi + h}};
}

namespace {

// Fast necessary test for gcd(a, b) nonconstant: gcd over GF(p).  A common
// factor over Q survives reduction mod p when p divides neither leading
// coefficient, so "degree 0 mod p" proves coprimality.
bool maybe_common_factor(const RatPoly& a, const RatPoly& b) {
    constexpr long P = 1073741789;
    auto reduce = [&](const RatPoly& q) {
        RatPoly qi = q.primitive_integer();
        std::vector<long> v(qi.coeffs().size());
        for (size_t i = 0; i < v.size(); ++i) {
            Int m = num(qi.coeffs()[i]) % P;
            if (m < 0) m += P;
            v[i] = m.convert_to<long>();
        }
        while (!v.empty() && v.back() == 0) v.pop_back();
        return v;
    };
    std::vector<long> x = reduce(a), y = reduce(b);
    if (x.size() != a.coeffs().size() || y.size() != b.coeffs().size()) return true;
    auto mulmod = [](long u, long v) { return (long)((__int128)u * v % P); };
    auto powmod = [&](long base, long e) {
        long acc = 1;
        while (e) {
            if (e & 1) acc = mulmod(acc, base);
            base = mulmod(base, base);
            e >>= 1;
        }
        return acc;
    };
    while (!y.empty()) {
        // x mod y over GF(p)
        long inv = powmod(y.back(), P - 2);
        for (long i = (long)x.size() - 1; i >= (long)y.size() - 1; --i) {
            long f = mulmod(x[(size_t)i], inv);
            if (f == 0) continue;
            for (size_t j = 0; j < y.size(); ++j) {
                size_t idx = (size_t)i - (y.size() - 1) + j;
                x[idx] = (x[idx] - mulmod(f, y[j])) % P;
                if (x[idx] < 0) x[idx] += P;
            }
        }
        while (!x.empty() && x.back() == 0) x.pop_back();
        std::swap(x, y);
    }
    return x.size() > 1;
}

}  // namespace

std::optional<std::pair<long, long>> root_of_unity_order(const AlgebraicRoot& r) {
    if (r.real) {
        if (!is_unit_modulus(r))
            throw std::invalid_argument("root_of_unity_order: root is not on the unit circle");
        if (r.defining.eval(Rational(1)) == 0 && r.box.re.contains(Rational(1)))
            return std::make_pair(0L, 1L);
        return std::make_pair(1L, 2L);
    }
    // Cheap rejection when the box already excludes the unit circle.
    if (!r.box.abs_square().contains(Rational(1)))
        throw std::invalid_argument("root_of_unity_order: root is not on the unit circle");
    long dcap = std::max(r.defining.degree(), 1L);
    for (long n : orders_with_phi_at_most(dcap)) {
        if (n <= 2) continue;
        if (!maybe_common_factor(r.defining, cyclotomic(n))) continue;
        RatPoly g = gcd(r.defining.monic(), cyclotomic(n));
        if (g.degree() <= 0) continue;
        if (!root_satisfies(g, r)) continue;
        // Our root is a primitive n-th root of unity; pin k against the
        // constructed boxes (refining only our root).
        RootRefiner rr(r);
        std::vector<std::pair<long, ComplexBox>> candidates;
        for (long k = 1; k < n; ++k)
            if (std::gcd(k, n) == 1) candidates.emplace_back(k, unit_root_box(n, k));
        for (int level = -1; level <= precision_budget(); ++level) {
            ComplexBox cur = rr.box(level);
            std::vector<long> hits;
            for (auto& [k, box] : candidates)
                if (box.intersects(cur)) hits.push_back(k);
            if (hits.size() == 1) return std::make_pair(hits[0], n);
            if (hits.empty()) throw std::logic_error("root_of_unity_order: lost the root");
        }
        throw precision_exhausted("root_of_unity_order: could not pin k");
    }
    if (!is_unit_modulus(r))
        throw std::invalid_argument("root_of_unity_order: root is not on the unit circle");
    return std::nullopt;
}

}  // namespace osc
