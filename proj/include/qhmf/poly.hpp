// Dense univariate polynomials over Q: arithmetic, gcd, Sturm sequences,
// real root isolation, and irreducibility certificates for the degrees the
// field tower needs.
#pragma once

#include <qhmf/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>

namespace qhmf {

class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static QPoly zero() { return QPoly(); }
    static QPoly constant(const Rat& a) { return QPoly({a}); }
    static QPoly x() { return QPoly({Rat(0), Rat(1)}); }
    // x^n with coefficient a
    static QPoly monomial(const Rat& a, int n) {
        std::vector<Rat> v(static_cast<size_t>(n) + 1, Rat(0));
        v.back() = a;
        return QPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& operator[](size_t i) const { return c_[i]; }
    const Rat& lead() const { return c_.back(); }

    Rat coeff(size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }

    bool operator==(const QPoly& o) const { return c_ == o.c_; }

    QPoly operator-() const {
        std::vector<Rat> v(c_);
        for (auto& a : v) a = -a;
        return QPoly(std::move(v));
    }

    QPoly operator+(const QPoly& o) const {
        std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
        for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
        return QPoly(std::move(v));
    }

    QPoly operator-(const QPoly& o) const { return *this + (-o); }

    QPoly operator*(const QPoly& o) const {
        if (is_zero() || o.is_zero()) return QPoly();
        std::vector<Rat> v(c_.size() + o.c_.size() - 1, Rat(0));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
        return QPoly(std::move(v));
    }

    QPoly operator*(const Rat& a) const {
        std::vector<Rat> v(c_);
        for (auto& x : v) x *= a;
        return QPoly(std::move(v));
    }

    // Euclidean division; divisor must be nonzero.
    std::pair<QPoly, QPoly> divrem(const QPoly& d) const {
        if (d.is_zero()) throw std::invalid_argument("QPoly::divrem: division by zero");
        std::vector<Rat> r(c_);
        int dd = d.degree();
        int rd = static_cast<int>(r.size()) - 1;
        if (rd < dd) return {QPoly(), *this};
        std::vector<Rat> q(static_cast<size_t>(rd - dd) + 1, Rat(0));
        const Rat inv_lead = Rat(1) / d.lead();
        for (int k = rd; k >= dd; --k) {
            if (sgn(r[static_cast<size_t>(k)]) == 0) continue;
            Rat f = r[static_cast<size_t>(k)] * inv_lead;
            q[static_cast<size_t>(k - dd)] = f;
            for (int j = 0; j <= dd; ++j) r[static_cast<size_t>(k - dd + j)] -= f * d[static_cast<size_t>(j)];
        }
        return {QPoly(std::move(q)), QPoly(std::move(r))};
    }

    QPoly mod(const QPoly& d) const { return divrem(d).second; }

    QPoly derivative() const {
        if (c_.size() <= 1) return QPoly();
        std::vector<Rat> v(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rat(static_cast<long>(i));
        return QPoly(std::move(v));
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    QPoly monic() const {
        if (is_zero()) return *this;
        return *this * (Rat(1) / lead());
    }

    // Scale to integer coefficients with content 1 and positive lead.
    QPoly primitive_integer() const {
        if (is_zero()) return *this;
        Int den(1);
        for (const auto& a : c_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.get_den_mpz_t());
        Int g(0);
        std::vector<Rat> v(c_);
        for (auto& a : v) {
            a *= den;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_num_mpz_t());
        }
        if (g == 0) g = 1;
        for (auto& a : v) a /= g;
        if (sgn(v.back()) < 0)
            for (auto& a : v) a = -a;
        return QPoly(std::move(v));
    }

    std::string str(const std::string& var = "x") const;

private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

inline QPoly poly_gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

inline QPoly squarefree_part(const QPoly& f) {
    if (f.degree() <= 1) return f.monic();
    QPoly g = poly_gcd(f, f.derivative());
    return f.divrem(g).first.monic();
}

inline std::string QPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = c_.size(); i-- > 0;) {
        if (sgn(c_[i]) == 0) continue;
        Rat a = c_[i];
        std::string term;
        if (i == 0) {
            term = to_string(a);
        } else {
            std::string pow = (i == 1) ? var : var + "^" + std::to_string(i);
            if (a == 1)
                term = pow;
            else if (a == -1)
                term = "-" + pow;
            else
                term = to_string(a) + "*" + pow;
        }
        if (out.empty()) {
            out = term;
        } else if (!term.empty() && term[0] == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rational interval arithmetic, just enough to bound a polynomial on a box.

struct RatInterval {
    Rat lo, hi;
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    int sign() const {
        if (sgn(lo) > 0) return 1;
        if (sgn(hi) < 0) return -1;
        return 0;  // undetermined
    }
};

inline RatInterval iv_add(const RatInterval& a, const RatInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

inline RatInterval iv_mul(const RatInterval& a, const RatInterval& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)), std::max(std::max(p1, p2), std::max(p3, p4))};
}

// Horner evaluation of f over [lo,hi].
inline RatInterval eval_interval(const QPoly& f, const Rat& lo, const Rat& hi) {
    RatInterval acc{Rat(0), Rat(0)};
    RatInterval x{lo, hi};
    const auto& c = f.coeffs();
    for (size_t i = c.size(); i-- > 0;) {
        acc = iv_mul(acc, x);
        acc = iv_add(acc, RatInterval{c[i], c[i]});
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Sturm sequences and real root isolation.

class SturmChain {
public:
    explicit SturmChain(const QPoly& f) {
        QPoly g = squarefree_part(f);
        chain_.push_back(g);
        chain_.push_back(g.derivative());
        while (!chain_.back().is_zero()) {
            QPoly r = chain_[chain_.size() - 2].mod(chain_.back());
            chain_.push_back(-r);
        }
        chain_.pop_back();
    }

    const QPoly& squarefree() const { return chain_.front(); }

    int variations_at(const Rat& x) const {
        int v = 0, prev = 0;
        for (const auto& p : chain_) {
            int s = sgn(p.eval(x));
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    }

    // Number of real roots in (a, b], for a < b with f(a), f(b) != 0.
    int count_roots(const Rat& a, const Rat& b) const { return variations_at(a) - variations_at(b); }

private:
    std::vector<QPoly> chain_;
};

struct RootInterval {
    Rat lo, hi;  // open-closed bookkeeping is internal; lo < root <= hi and f(lo), f(hi) != 0
};

// Cauchy bound: all real roots lie in (-M, M).
inline Rat root_bound(const QPoly& f) {
    Rat m(0);
    const Rat lead = f.lead();
    for (int i = 0; i < f.degree(); ++i) m = std::max(m, Rat(abs(f[static_cast<size_t>(i)] / lead)));
    return m + 1;
}

// Isolating intervals for the distinct real roots of f, in ascending order.
// Interval endpoints are never roots.
inline std::vector<RootInterval> isolate_real_roots(const QPoly& f) {
    std::vector<RootInterval> out;
    if (f.degree() < 1) return out;
    SturmChain sturm(f);
    const QPoly& sf = sturm.squarefree();
    Rat bound = root_bound(sf);
    // Nudge endpoints off roots if needed (possible for rational roots).
    Rat lo = -bound, hi = bound;
    while (sgn(sf.eval(lo)) == 0) lo -= 1;
    while (sgn(sf.eval(hi)) == 0) hi += 1;

    std::vector<RootInterval> work;
    int total = sturm.count_roots(lo, hi);
    if (total > 0) work.push_back({lo, hi});
    while (!work.empty()) {
        RootInterval iv = work.back();
        work.pop_back();
        int n = sturm.count_roots(iv.lo, iv.hi);
        if (n == 0) continue;
        if (n == 1) {
            out.push_back(iv);
            continue;
        }
        Rat mid = (iv.lo + iv.hi) / 2;
        while (sgn(sf.eval(mid)) == 0) mid = (iv.lo + mid) / 2;  // mid must avoid roots
        work.push_back({iv.lo, mid});
        work.push_back({mid, iv.hi});
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    return out;
}

// One bisection step on an isolating interval of the squarefree poly sf.
inline RootInterval refine_once(const QPoly& sf, const RootInterval& iv) {
    Rat mid = (iv.lo + iv.hi) / 2;
    while (sgn(sf.eval(mid)) == 0) mid = (iv.lo + mid) / 2;
    int slo = sgn(sf.eval(iv.lo));
    int smid = sgn(sf.eval(mid));
    if (slo != smid) return {iv.lo, mid};
    return {mid, iv.hi};
}

// ---------------------------------------------------------------------------
// Irreducibility over Q.
//
// The certificate combines: rational root search (complete for degree <= 3),
// factorisation patterns modulo small primes, and for quartics an exact
// search for quadratic factors via divisors of the constant term. Fields
// built as square-root towers never call this (irreducibility is structural
// there), so this only has to certify directly-presented polynomials.

namespace detail {

// Polynomials over F_p (p < 2^32), coefficients stored little-endian.
struct FpPolyCtx {
    std::uint64_t p;
    using P = std::vector<std::uint64_t>;

    std::uint64_t inv(std::uint64_t a) const {
        std::uint64_t r = 1, base = a % p, e = p - 2;
        while (e) {
            if (e & 1) r = (__uint128_t)r * base % p;
            base = (__uint128_t)base * base % p;
            e >>= 1;
        }
        return r;
    }
    static void trim(P& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    }
    P monic(P a) const {
        trim(a);
        if (a.empty()) return a;
        std::uint64_t iv = inv(a.back());
        for (auto& x : a) x = (__uint128_t)x * iv % p;
        return a;
    }
    P mul(const P& a, const P& b) const {
        if (a.empty() || b.empty()) return {};
        P r(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + (__uint128_t)a[i] * b[j]) % p;
        return r;
    }
    // a mod m, m monic nonconstant
    P rem(P a, const P& m) const {
        trim(a);
        while (a.size() >= m.size()) {
            std::uint64_t lead = a.back();
            size_t shift = a.size() - m.size();
            if (lead)
                for (size_t j = 0; j < m.size(); ++j) {
                    std::uint64_t sub = (__uint128_t)lead * m[j] % p;
                    a[shift + j] = (a[shift + j] + p - sub) % p;
                }
            a.pop_back();
            trim(a);
        }
        return a;
    }
    // quotient a / m for monic m dividing... works generally (discards remainder)
    P quot(P a, const P& m) const {
        trim(a);
        if (a.size() < m.size()) return {};
        P q(a.size() - m.size() + 1, 0);
        for (size_t k = a.size(); k >= m.size(); --k) {
            std::uint64_t lead = a[k - 1];
            size_t pos = k - m.size();
            q[pos] = lead;
            if (lead)
                for (size_t j = 0; j < m.size(); ++j) {
                    std::uint64_t sub = (__uint128_t)lead * m[j] % p;
                    a[pos + j] = (a[pos + j] + p - sub) % p;
                }
        }
        trim(q);
        return q;
    }
    P gcd(P a, P b) const {
        a = monic(std::move(a));
        b = monic(std::move(b));
        while (!b.empty()) {
            P r = rem(a, b);
            a = std::move(b);
            b = monic(std::move(r));
        }
        return a;
    }
    P powmod(P base, std::uint64_t e, const P& m) const {
        P r = {1};
        base = rem(std::move(base), m);
        while (e) {
            if (e & 1) r = rem(mul(r, base), m);
            base = rem(mul(base, base), m);
            e >>= 1;
        }
        return r;
    }
    P derivative(const P& a) const {
        if (a.size() <= 1) return {};
        P d(a.size() - 1);
        for (size_t i = 1; i < a.size(); ++i) d[i - 1] = (__uint128_t)a[i] * (i % p) % p;
        trim(d);
        return d;
    }
};

// Distinct-degree factorisation pattern of f mod p (sorted degrees of the
// irreducible factors), or nullopt if f mod p drops degree or is not
// squarefree.
inline std::optional<std::vector<int>> factor_pattern_mod_p(const QPoly& f, std::uint64_t p) {
    FpPolyCtx F{p};
    int n = f.degree();
    FpPolyCtx::P fp(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const Rat& c = f[static_cast<size_t>(i)];
        Int num = c.get_num(), den = c.get_den();
        std::uint64_t dm = mpz_fdiv_ui(den.get_mpz_t(), p);
        if (dm == 0) return std::nullopt;
        std::uint64_t nm = mpz_fdiv_ui(num.get_mpz_t(), p);
        fp[static_cast<size_t>(i)] = (__uint128_t)nm * F.inv(dm) % p;
    }
    if (fp.back() == 0) return std::nullopt;
    fp = F.monic(std::move(fp));

    if (F.gcd(fp, F.derivative(fp)).size() != 1) return std::nullopt;  // not squarefree mod p

    std::vector<int> pattern;
    FpPolyCtx::P remaining = fp;
    FpPolyCtx::P xq = {0, 1};  // x^(p^d) mod remaining, starting at d = 0
    int d = 0;
    while (remaining.size() > 1) {
        ++d;
        int rdeg = static_cast<int>(remaining.size()) - 1;
        if (rdeg < 2 * d) {
            pattern.push_back(rdeg);
            break;
        }
        xq = F.powmod(xq, p, remaining);
        FpPolyCtx::P diff = xq;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;  // x^(p^d) - x
        FpPolyCtx::P g = F.gcd(remaining, diff);
        int gd = static_cast<int>(g.size()) - 1;
        if (gd > 0) {
            for (int i = 0; i < gd / d; ++i) pattern.push_back(d);
            remaining = F.quot(remaining, g);
            if (remaining.size() > 1) xq = F.rem(std::move(xq), remaining);
        }
    }
    std::sort(pattern.begin(), pattern.end());
    return pattern;
}

inline std::set<int> subset_sums(const std::vector<int>& pattern) {
    std::set<int> sums = {0};
    for (int d : pattern) {
        std::set<int> next = sums;
        for (int s : sums) next.insert(s + d);
        sums = next;
    }
    return sums;
}

}  // namespace detail

inline bool has_rational_root(const QPoly& f) {
    QPoly g = f.primitive_integer();
    if (g.degree() < 1) return false;
    if (sgn(g[0]) == 0) return true;  // root at 0
    // root p/q with p | c0, q | lead; bounded search via divisors
    Int c0 = g[0].get_num();
    Int lead = g.lead().get_num();
    if (c0 < 0) c0 = -c0;
    if (lead < 0) lead = -lead;
    std::vector<Int> ps, qs;
    for (Int d(1); d * d <= c0; ++d)
        if (c0 % d == 0) {
            ps.push_back(d);
            ps.push_back(c0 / d);
        }
    for (Int d(1); d * d <= lead; ++d)
        if (lead % d == 0) {
            qs.push_back(d);
            qs.push_back(lead / d);
        }
    for (const auto& pn : ps)
        for (const auto& qn : qs) {
            Rat r = make_rat(pn, qn);
            if (sgn(g.eval(r)) == 0 || sgn(g.eval(-r)) == 0) return true;
        }
    return false;
}

// Exact test for a monic quadratic factor of a monic integer quartic, by
// enumerating divisor pairs of the constant term. Returns nullopt when the
// constant term is too large to factor quickly.
inline std::optional<bool> quartic_has_quadratic_factor(const QPoly& f) {
    QPoly g = f.primitive_integer();
    if (g.degree() != 4 || g.lead() != 1) return std::nullopt;
    Int d = g[0].get_num();
    if (d == 0) return true;
    Int ad = d < 0 ? Int(-d) : d;
    if (ad > Int("1000000000000")) return std::nullopt;
    std::vector<Int> divs;
    for (Int t(1); t * t <= ad; ++t) {
        if (ad % t == 0) {
            divs.push_back(t);
            divs.push_back(ad / t);
        }
        if (t > 2000000) return std::nullopt;  // too many candidates
    }
    Rat a = g[3], b = g[2], c = g[1];
    // f = (x^2 + p x + q)(x^2 + r x + s), q s = d, p + r = a, pr = b - q - s, ps + qr = c
    for (const Int& q0 : divs)
        for (int sq = -1; sq <= 1; sq += 2) {
            Int q = q0 * sq;
            if (d % q != 0) continue;
            Int s = d / q;
            Rat sum = a;                  // p + r
            Rat prod = b - Rat(q) - Rat(s);  // p r
            // p, r are roots of y^2 - sum*y + prod
            Rat disc = sum * sum - 4 * prod;
            auto root = rat_sqrt(disc);
            if (!root) continue;
            for (int pm = -1; pm <= 1; pm += 2) {
                Rat p = (sum + Rat(pm) * (*root)) / 2;
                Rat r = sum - p;
                if (p * Rat(s) + Rat(q) * r == c) return true;
            }
        }
    return false;
}

struct IrreducibilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Certified irreducibility over Q. Throws IrreducibilityError when neither
// reducibility nor irreducibility can be certified.
inline bool is_irreducible_q(const QPoly& f) {
    int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    if (has_rational_root(f)) return false;
    if (n <= 3) return true;

    static const std::uint64_t primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                                           47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103};
    std::vector<std::vector<int>> patterns;
    for (std::uint64_t p : primes) {
        auto pat = detail::factor_pattern_mod_p(f, p);
        if (!pat) continue;
        if (pat->size() == 1) return true;  // irreducible mod p
        patterns.push_back(*pat);
        if (patterns.size() >= 12) break;
    }
    if (!patterns.empty()) {
        // a proper factor of degree d must be a subset sum of every pattern
        std::set<int> feasible = detail::subset_sums(patterns[0]);
        for (size_t i = 1; i < patterns.size(); ++i) {
            std::set<int> next;
            for (int s : detail::subset_sums(patterns[i]))
                if (feasible.count(s)) next.insert(s);
            feasible = next;
        }
        bool proper = false;
        for (int d = 1; d < n; ++d)
            if (feasible.count(d)) proper = true;
        if (!proper) return true;
    }
    if (n == 4) {
        auto quad = quartic_has_quadratic_factor(f);
        if (quad) return !*quad;  // no rational root already established
    }
    throw IrreducibilityError("is_irreducible_q: cannot certify degree-" + std::to_string(n) + " polynomial");
}

}  // namespace qhmf
