#include "osc/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace osc {

// ---------------------------------------------------------------------------
// numeric.hpp helpers that need a translation unit

std::optional<Rational> exact_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    if (q == 0) return Rational(0);
    Int n = num(q), d = den(q);
    Int sn = isqrt(n), sd = isqrt(d);
    if (sn * sn == n && sd * sd == d) return Rational(sn, sd);
    return std::nullopt;
}

std::pair<Rational, Rational> sqrt_bounds(const Rational& q, unsigned prec_bits) {
    if (q < 0) throw std::invalid_argument("sqrt_bounds of negative");
    if (q == 0) return {Rational(0), Rational(0)};
    // sqrt(n/d) = sqrt(n*d)/d; bound floor(sqrt(n*d*4^k))/(d*2^k).
    Int n = num(q), d = den(q);
    Int scale = pow_int(2, prec_bits);
    Int s = isqrt(n * d * scale * scale);
    Rational lo(s, d * scale);
    Rational hi(s + 1, d * scale);
    return {lo, hi};
}

Rational parse_rational(const std::string& s) {
    auto bad = [&]() { return std::invalid_argument("bad rational literal: '" + s + "'"); };
    std::string t;
    for (char ch : s)
        if (!isspace((unsigned char)ch)) t += ch;
    if (t.empty()) throw bad();
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(t));
        Int p(t.substr(0, slash)), q(t.substr(slash + 1));
        if (q == 0) throw bad();
        return Rational(p, q);
    } catch (const std::invalid_argument&) {
        throw;
    } catch (...) {
        throw bad();
    }
}

std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << num(q);
    if (den(q) != 1) os << "/" << den(q);
    return os.str();
}

long euler_phi(long n) {
    long result = n, m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

egcd_result egcd(Int a, Int b) {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    return {old_r, old_s, old_t};
}

// ---------------------------------------------------------------------------
// interval.hpp pieces

RealInterval sqrt_interval(const RealInterval& x, unsigned prec_bits) {
    if (x.lo < 0) throw std::invalid_argument("sqrt_interval of interval with negative part");
    auto lo = sqrt_bounds(x.lo, prec_bits);
    auto hi = sqrt_bounds(x.hi, prec_bits);
    return {lo.first, hi.second};
}

int precision_budget() {
    static int budget = [] {
        if (const char* e = std::getenv("OSC_PRECISION_BUDGET")) {
            int v = std::atoi(e);
            if (v >= 1) return v;
        }
        return 24;
    }();
    return budget;
}

std::optional<int> try_certified_sign(const RealRefiner& f, int start_level) {
    for (int level = start_level; level <= precision_budget(); ++level) {
        RealInterval iv = f(level);
        if (auto s = iv.certain_sign()) return *s;
    }
    return std::nullopt;
}

int certified_sign(const RealRefiner& f, int start_level) {
    if (auto s = try_certified_sign(f, start_level)) return *s;
    throw precision_exhausted("sign could not be certified within the precision budget");
}

std::ostream& operator<<(std::ostream& os, const RealInterval& iv) {
    return os << "[" << rational_str(iv.lo) << ", " << rational_str(iv.hi) << "]";
}
std::ostream& operator<<(std::ostream& os, const ComplexBox& b) {
    return os << b.re << " + i*" << b.im;
}

// ---------------------------------------------------------------------------
// RatPoly basics

void RatPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RatPoly RatPoly::monomial(const Rational& a, size_t k) {
    std::vector<Rational> v(k + 1, Rational(0));
    v[k] = a;
    return RatPoly(std::move(v));
}

RatPoly RatPoly::from_int_coeffs(std::vector<long long> coeffs) {
    std::vector<Rational> v;
    v.reserve(coeffs.size());
    for (long long x : coeffs) v.emplace_back(x);
    return RatPoly(std::move(v));
}

Rational RatPoly::leading() const {
    if (is_zero()) throw std::logic_error("leading coefficient of zero polynomial");
    return c_.back();
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
    std::vector<Rational> v(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator-(const RatPoly& o) const { return *this + (-o); }

RatPoly RatPoly::operator-() const {
    std::vector<Rational> v = c_;
    for (auto& x : v) x = -x;
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
    if (is_zero() || o.is_zero()) return zero();
    std::vector<Rational> v(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    }
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator*(const Rational& s) const {
    std::vector<Rational> v = c_;
    for (auto& x : v) x *= s;
    return RatPoly(std::move(v));
}

std::pair<RatPoly, RatPoly> RatPoly::divmod(const RatPoly& d) const {
    if (d.is_zero()) throw std::invalid_argument("polynomial division by zero");
    std::vector<Rational> rem = c_;
    long dd = d.degree();
    if (degree() < dd) return {zero(), *this};
    std::vector<Rational> quo(degree() - dd + 1, Rational(0));
    Rational lead = d.leading();
    for (long i = degree(); i >= dd; --i) {
        Rational f = rem[i] / lead;
        if (f == 0) continue;
        quo[i - dd] = f;
        for (long j = 0; j <= dd; ++j) rem[i - dd + j] -= f * d.c_[j];
    }
    return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

RatPoly RatPoly::div_exact(const RatPoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw std::logic_error("div_exact with nonzero remainder");
    return q;
}

RatPoly RatPoly::derivative() const {
    if (c_.size() <= 1) return zero();
    std::vector<Rational> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rational((long)i);
    return RatPoly(std::move(v));
}

RatPoly RatPoly::monic() const {
    if (is_zero()) return *this;
    return *this * (Rational(1) / leading());
}

RatPoly RatPoly::reversed() const {
    std::vector<Rational> v(c_.rbegin(), c_.rend());
    return RatPoly(std::move(v));
}

RatPoly RatPoly::scale_arg(const Rational& s) const {
    std::vector<Rational> v = c_;
    Rational p(1);
    for (size_t i = 0; i < v.size(); ++i) {
        v[i] *= p;
        p *= s;
    }
    return RatPoly(std::move(v));
}

RatPoly RatPoly::shift_arg(const Rational& t) const {
    // Horner: p(x+t) built from the top down.
    RatPoly res = zero();
    RatPoly lin({t, Rational(1)});
    for (long i = degree(); i >= 0; --i) res = res * lin + constant(c_[i]);
    return res;
}

Rational RatPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (long i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
}

int RatPoly::sign_at(const Rational& x) const {
    if (is_zero()) return 0;
    // sign(sum a_i x^i) = sign(sum (l*a_i) p^i q^(d-i)) for x = p/q, where l
    // clears denominators.
    Int l(1);
    for (const auto& q : c_) l = lcm_int(l, den(q));
    const Int p = num(x), q = den(x);
    long d = degree();
    Int acc = num(c_[(size_t)d]) * (l / den(c_[(size_t)d]));
    Int qk(1);
    for (long i = d - 1; i >= 0; --i) {
        qk *= q;
        acc = acc * p + num(c_[(size_t)i]) * (l / den(c_[(size_t)i])) * qk;
    }
    return sign(acc);
}

RealInterval RatPoly::eval(const RealInterval& x) const {
    RealInterval acc{Rational(0), Rational(0)};
    for (long i = degree(); i >= 0; --i) acc = acc * x + RealInterval(c_[i]);
    return acc;
}

ComplexBox RatPoly::eval(const ComplexBox& z) const {
    ComplexBox acc = ComplexBox::point(0, 0);
    for (long i = degree(); i >= 0; --i) acc = acc * z + ComplexBox::point(c_[i], 0);
    return acc;
}

RatPoly RatPoly::primitive_integer() const {
    if (is_zero()) return *this;
    Int l(1);
    for (const auto& q : c_) l = lcm_int(l, den(q));
    std::vector<Rational> v = c_;
    for (auto& q : v) q *= Rational(l);
    Int g(0);
    for (const auto& q : v) g = gcd_int(g, num(q));
    if (g > 1)
        for (auto& q : v) q /= Rational(g);
    return RatPoly(std::move(v));
}

std::string RatPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        if (c_[i] == 0) continue;
        Rational a = c_[i];
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        first = false;
        Rational mag = abs_rat(a);
        if (i == 0 || mag != 1) os << rational_str(mag);
        if (i > 0) {
            if (mag != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// gcd / squarefree

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
    // Primitive PRS: removing the content after every remainder step keeps
    // coefficient sizes polynomial instead of exponential.
    RatPoly x = a.is_zero() ? a : a.primitive_integer();
    RatPoly y = b.is_zero() ? b : b.primitive_integer();
    while (!y.is_zero()) {
        RatPoly r = x.divmod(y).second;
        x = y;
        y = r.is_zero() ? r : r.primitive_integer();
    }
    return x.is_zero() ? x : x.monic();
}

RatPoly squarefree_part(const RatPoly& p) {
    if (p.degree() <= 0) return p;
    static std::map<std::vector<Rational>, RatPoly> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(p.coeffs());
        if (it != cache.end()) return it->second;
    }
    RatPoly g = gcd(p, p.derivative());
    RatPoly result = g.degree() == 0 ? p.monic() : p.div_exact(g).monic();
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(p.coeffs(), std::move(result)).first->second;
}

std::vector<std::pair<RatPoly, int>> squarefree_decomposition(const RatPoly& p) {
    std::vector<std::pair<RatPoly, int>> out;
    if (p.degree() <= 0) return out;
    // Yun's algorithm.
    RatPoly d = p.derivative();
    RatPoly a = gcd(p, d);
    RatPoly b = p.div_exact(a);
    RatPoly c = d.div_exact(a);
    int i = 1;
    while (true) {
        RatPoly diff = c - b.derivative();
        if (diff.is_zero()) {
            if (b.degree() > 0) out.emplace_back(b.monic(), i);
            break;
        }
        RatPoly g = gcd(b, diff);
        if (g.degree() > 0) out.emplace_back(g.monic(), i);
        b = b.div_exact(g);
        c = diff.div_exact(g);
        ++i;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sturm machinery

SturmChain::SturmChain(const RatPoly& p) {
    // Only positive rescaling is allowed anywhere in a Sturm sequence;
    // primitive_integer divides by the (positive) content, which also keeps
    // the coefficient growth of the remainder sequence under control.
    auto pos_scale = [](const RatPoly& q) {
        return q.is_zero() ? q : q.primitive_integer();
    };
    RatPoly a = pos_scale(p);
    seq.push_back(a);
    RatPoly b = pos_scale(a.derivative());
    while (!b.is_zero()) {
        seq.push_back(b);
        RatPoly r = -(a.divmod(b).second);
        a = b;
        b = pos_scale(r);
    }
}

int SturmChain::variations(const Rational& x) const {
    int var = 0, prev = 0;
    for (const auto& f : seq) {
        int s = f.sign_at(x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

std::shared_ptr<const SturmChain> cached_sturm(const RatPoly& p) {
    static std::map<std::vector<Rational>, std::shared_ptr<const SturmChain>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p.coeffs());
    if (it == cache.end()) {
        if (cache.size() > 8192) cache.clear();  // crude memory bound
        it = cache.emplace(p.coeffs(), std::make_shared<SturmChain>(p)).first;
    }
    return it->second;
}

int SturmChain::count_roots(const Rational& a, const Rational& b) const {
    if (!(a < b)) throw std::invalid_argument("count_roots needs a < b");
    return variations(a) - variations(b);
}

namespace {

// Cauchy root bound: every complex root has |z| < bound.
Rational cauchy_bound(const RatPoly& p) {
    Rational m(0);
    Rational lead = abs_rat(p.leading());
    for (long i = 0; i < p.degree(); ++i) m = std::max(m, abs_rat(p.coeff(i)) / lead);
    return m + 1;
}

void isolate_rec(const SturmChain& chain, const RatPoly& p, const Rational& lo, int vlo,
                 const Rational& hi, int vhi, std::vector<RealInterval>& out) {
    int n = vlo - vhi;
    if (n == 0) return;
    if (n == 1) {
        // ]lo, hi] has exactly one root.  If hi is the root itself we can
        // report the point.
        if (p.sign_at(hi) == 0) {
            out.push_back(RealInterval(hi));
            return;
        }
        out.push_back(RealInterval{lo, hi});
        return;
    }
    Rational mid = (lo + hi) / 2;
    if (p.sign_at(mid) == 0) {
        out.push_back(RealInterval(mid));
        // Exclude a root-free margin around the exact root mid and recurse.
        Rational w = (hi - lo) / 4;
        while (chain.count_roots(mid - w, mid + w) > 1) w /= 2;
        isolate_rec(chain, p, lo, vlo, mid - w, chain.variations(mid - w), out);
        isolate_rec(chain, p, mid + w, chain.variations(mid + w), hi, vhi, out);
        return;
    }
    int vmid = chain.variations(mid);
    isolate_rec(chain, p, lo, vlo, mid, vmid, out);
    isolate_rec(chain, p, mid, vmid, hi, vhi, out);
}

}  // namespace

std::vector<RealInterval> isolate_real_roots(const RatPoly& p) {
    if (p.degree() <= 0) return {};
    RatPoly sf = squarefree_part(p);
    auto chain = cached_sturm(sf);
    Rational b = cauchy_bound(sf);
    std::vector<RealInterval> out;
    isolate_rec(*chain, sf, -b, chain->variations(-b), b, chain->variations(b), out);
    std::sort(out.begin(), out.end(),
              [](const RealInterval& x, const RealInterval& y) { return x.lo < y.lo; });
    return out;
}

RealInterval refine_real_root(const RatPoly& p, RealInterval iv, const Rational& eps) {
    if (iv.is_point()) return iv;
    RatPoly sf = squarefree_part(p);
    // Invariant: the root is in ]lo, hi].
    auto chain = cached_sturm(sf);
    if (chain->count_roots(iv.lo, iv.hi) != 1)
        throw std::invalid_argument("refine_real_root: interval does not isolate one root");
    while (iv.width() > eps) {
        Rational mid = iv.mid();
        if (sf.sign_at(mid) == 0) return RealInterval(mid);
        if (chain->count_roots(iv.lo, mid) == 1)
            iv = RealInterval{iv.lo, mid};
        else
            iv = RealInterval{mid, iv.hi};
    }
    return iv;
}

// ---------------------------------------------------------------------------
// Resultants

namespace {

// Bareiss fraction-free determinant of an integer matrix.
Int bareiss_det(std::vector<std::vector<Int>> m) {
    size_t n = m.size();
    if (n == 0) return Int(1);
    Int denom(1);
    int sgn = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return Int(0);
            std::swap(m[k], m[swap_row]);
            sgn = -sgn;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / denom;
            }
            m[i][k] = 0;
        }
        denom = m[k][k];
    }
    return sgn > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

}  // namespace

Rational resultant(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return Rational(0);
    long m = a.degree(), n = b.degree();
    if (m == 0) return pow_rat(a.leading(), n);
    if (n == 0) return pow_rat(b.leading(), m);
    // Clear denominators: Res(ca*A, cb*B) = ca^n cb^m Res(A, B).
    RatPoly ai = a.primitive_integer(), bi = b.primitive_integer();
    Rational ca = a.leading() / ai.leading();
    Rational cb = b.leading() / bi.leading();
    size_t size = (size_t)(m + n);
    std::vector<std::vector<Int>> s(size, std::vector<Int>(size, Int(0)));
    for (long row = 0; row < n; ++row)
        for (long j = 0; j <= m; ++j) s[row][row + (m - j)] = num(ai.coeff(j)) / den(ai.coeff(j));
    for (long row = 0; row < m; ++row)
        for (long j = 0; j <= n; ++j) s[n + row][row + (n - j)] = num(bi.coeff(j)) / den(bi.coeff(j));
    Int det = bareiss_det(std::move(s));
    return Rational(det) * pow_rat(ca, n) * pow_rat(cb, m);
}

namespace {

// Res_x(p(x), q_t(x)) where q_t's x-coefficients are rational polynomials in
// t, computed by evaluation/interpolation.  `make_qt` produces q at a sample
// t; `tdeg_bound` bounds the t-degree of the resultant.
RatPoly resultant_by_interpolation(const RatPoly& p,
                                   const std::function<RatPoly(const Rational&)>& make_qt,
                                   long tdeg_bound,
                                   const std::function<bool(const Rational&)>& sample_ok) {
    std::vector<std::pair<Rational, Rational>> samples;
    Rational t(1);
    long taken = 0;
    while (taken <= tdeg_bound) {
        if (sample_ok(t)) {
            RatPoly q = make_qt(t);
            samples.emplace_back(t, resultant(p, q));
            ++taken;
        }
        // March through 1, -1, 2, -2, 3, ...
        t = t > 0 ? Rational(-t) : Rational(-t + 1);
    }
    return interpolate(samples);
}

}  // namespace

RatPoly quotient_of_roots_poly(const RatPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("quotient_of_roots_poly of zero polynomial");
    if (p.constant_term() == 0)
        throw std::invalid_argument("quotient_of_roots_poly requires p(0) != 0");
    long d = p.degree();
    if (d == 0) return RatPoly::constant(1);
    long bound = d * d;
    RatPoly q = resultant_by_interpolation(
        p, [&](const Rational& t) { return p.scale_arg(t); }, bound,
        [&](const Rational& t) { return t != 0; });
    return q.primitive_integer();
}

RatPoly pair_product_poly(const RatPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("pair_product_poly of zero polynomial");
    if (p.constant_term() == 0)
        throw std::invalid_argument("pair_product_poly requires p(0) != 0");
    long d = p.degree();
    if (d == 0) return RatPoly::constant(1);
    long bound = d * d;
    // q_t(x) = x^d p(t/x) = sum_k p_k t^k x^(d-k); leading x-coefficient is
    // p(0)... no: coefficient of x^d is p_0 != 0, so every t is a valid sample.
    auto make_qt = [&](const Rational& t) {
        std::vector<Rational> v((size_t)d + 1, Rational(0));
        Rational tk(1);
        for (long k = 0; k <= d; ++k) {
            v[(size_t)(d - k)] = p.coeff((size_t)k) * tk;
            tk *= t;
        }
        return RatPoly(std::move(v));
    };
    RatPoly q = resultant_by_interpolation(p, make_qt, bound,
                                           [](const Rational&) { return true; });
    return q.primitive_integer();
}

RatPoly pow_mod(const RatPoly& base, unsigned long e, const RatPoly& h) {
    RatPoly acc = RatPoly::constant(1);
    RatPoly b = base.divmod(h).second;
    while (e) {
        if (e & 1) acc = (acc * b).divmod(h).second;
        b = (b * b).divmod(h).second;
        e >>= 1;
    }
    return acc;
}

RatPoly charpoly_of_multiplication(const RatPoly& a, const RatPoly& h) {
    long d = h.degree();
    if (d <= 0) throw std::invalid_argument("charpoly_of_multiplication: modulus must be nonconstant");
    // Multiplication matrix M: column j = (a * z^j) mod h.
    std::vector<std::vector<Rational>> M((size_t)d, std::vector<Rational>((size_t)d, Rational(0)));
    RatPoly cur = a.divmod(h).second;
    for (long j = 0; j < d; ++j) {
        for (long i = 0; i < d; ++i) M[(size_t)i][(size_t)j] = cur.coeff((size_t)i);
        cur = (cur * RatPoly::monomial(1, 1)).divmod(h).second;
    }
    // det(tI - M) by interpolation at d+1 points (Gaussian elimination over Q).
    auto det_at = [&](const Rational& t) {
        std::vector<std::vector<Rational>> m = M;
        for (long i = 0; i < d; ++i) {
            m[(size_t)i][(size_t)i] = t - m[(size_t)i][(size_t)i];
            for (long j = 0; j < d; ++j)
                if (j != i) m[(size_t)i][(size_t)j] = -m[(size_t)i][(size_t)j];
        }
        Rational det(1);
        for (long col = 0; col < d; ++col) {
            long piv = -1;
            for (long r = col; r < d; ++r)
                if (m[(size_t)r][(size_t)col] != 0) { piv = r; break; }
            if (piv < 0) return Rational(0);
            if (piv != col) { std::swap(m[(size_t)piv], m[(size_t)col]); det = -det; }
            det *= m[(size_t)col][(size_t)col];
            Rational inv = Rational(1) / m[(size_t)col][(size_t)col];
            for (long r = col + 1; r < d; ++r) {
                Rational f = m[(size_t)r][(size_t)col] * inv;
                if (f == 0) continue;
                for (long cc = col; cc < d; ++cc)
                    m[(size_t)r][(size_t)cc] -= f * m[(size_t)col][(size_t)cc];
            }
        }
        return det;
    };
    std::vector<std::pair<Rational, Rational>> samples;
    Rational t(0);
    for (long k = 0; k <= d; ++k) {
        samples.emplace_back(t, det_at(t));
        t = t >= 0 ? Rational(-t - 1) : Rational(-t);
    }
    return interpolate(samples);
}

const RatPoly& cyclotomic(long n) {
    static std::map<long, RatPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw std::invalid_argument("cyclotomic index must be >= 1");
    // Phi_n = (z^n - 1) / prod_{d | n, d < n} Phi_d  (recursive, memoized).
    std::function<const RatPoly&(long)> get = [&](long m) -> const RatPoly& {
        auto jt = cache.find(m);
        if (jt != cache.end()) return jt->second;
        std::vector<Rational> xn((size_t)m + 1, Rational(0));
        xn[0] = -1;
        xn[(size_t)m] = 1;
        RatPoly p(std::move(xn));
        for (long d = 1; d < m; ++d)
            if (m % d == 0) p = p.div_exact(get(d));
        return cache.emplace(m, std::move(p)).first->second;
    };
    return get(n);
}

RatPoly interpolate(const std::vector<std::pair<Rational, Rational>>& points) {
    RatPoly acc = RatPoly::zero();
    for (size_t i = 0; i < points.size(); ++i) {
        RatPoly basis = RatPoly::constant(1);
        Rational denom(1);
        for (size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            basis = basis * RatPoly({-points[j].first, Rational(1)});
            denom *= points[i].first - points[j].first;
        }
        acc = acc + basis * (points[i].second / denom);
    }
    return acc;
}

std::vector<long> orders_with_phi_at_most(long bound) {
    static std::map<long, std::vector<long>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(bound);
    if (it != cache.end()) return it->second;
    // phi(n) >= sqrt(n/2), so n <= 2*bound^2 + 1 suffices.
    std::vector<long> out;
    long limit = 2 * bound * bound + 2;
    for (long n = 1; n <= limit; ++n)
        if (euler_phi(n) <= bound) out.push_back(n);
    return cache.emplace(bound, std::move(out)).first->second;
}

std::pair<RatPoly, RatPoly> restrict_to_line(const RatPoly& p, const Rational& a,
                                             const Rational& b, const Rational& c,
                                             const Rational& d) {
    // Horner with complex polynomial coefficients: (U + iV) <- (U + iV)*(L) + p_k
    // where L(t) = (a + b t) + i (c + d t).
    RatPoly lr({a, b}), li({c, d});
    RatPoly U = RatPoly::zero(), V = RatPoly::zero();
    for (long k = p.degree(); k >= 0; --k) {
        RatPoly nu = U * lr - V * li + RatPoly::constant(p.coeff((size_t)k));
        RatPoly nv = U * li + V * lr;
        U = std::move(nu);
        V = std::move(nv);
    }
    return {U, V};
}

}  // namespace osc
