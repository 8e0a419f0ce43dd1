// The real quadratic base field F = Q(sqrt d): integrality, fundamental
// unit, total positivity, canonical totally positive generators, prime
// levels with their residue fields, the quadratic character, and P^1.
#pragma once

#include <qhmf/field.hpp>
#include <qhmf/fp.hpp>

#include <map>

namespace qhmf {

struct ScopeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Continued-fraction expansion of (P0 + sqrt(D))/Q0 until the first repeated
// state; returns the fundamental automorph as (q, q') with unit = q*omega + q'
// for omega the quadratic irrational at the start of the cycle.
struct CFUnit {
    Int P, Q;   // state at cycle start
    Int q, q1;  // bottom row of the cycle's convergent matrix
};

inline CFUnit cf_fundamental_automorph(const Int& D, Int P0, Int Q0) {
    Int sqrtD = isqrt_floor(D);
    std::map<std::pair<std::string, std::string>, int> seen;
    std::vector<Int> Ps{P0}, Qs{Q0}, as;
    for (int k = 0;; ++k) {
        auto key = std::make_pair(Ps.back().get_str(), Qs.back().get_str());
        auto it = seen.find(key);
        if (it != seen.end()) {
            int j = it->second;
            // convergent matrix over the cycle a_j .. a_{k-1}
            Int p = 1, p1 = 0, q = 0, q1 = 1;
            for (int i = j; i < k; ++i) {
                Int np = as[static_cast<size_t>(i)] * p + p1;
                Int nq = as[static_cast<size_t>(i)] * q + q1;
                p1 = p;
                q1 = q;
                p = np;
                q = nq;
            }
            return {Ps[static_cast<size_t>(j)], Qs[static_cast<size_t>(j)], q, q1};
        }
        seen[key] = k;
        const Int& P = Ps.back();
        const Int& Q = Qs.back();
        if (Q <= 0) throw std::logic_error("cf_fundamental_automorph: nonpositive Q");
        Int a;
        mpz_fdiv_q(a.get_mpz_t(), Int(P + sqrtD).get_mpz_t(), Q.get_mpz_t());
        as.push_back(a);
        Int Pn = a * Q - P;
        Int Qn = (D - Pn * Pn) / Q;
        Ps.push_back(Pn);
        Qs.push_back(Qn);
    }
}

}  // namespace detail

class QuadField {
public:
    // narrow_class_one is an assertion from configuration, sanity-checked
    // against the norm of the fundamental unit when set.
    explicit QuadField(long d, bool narrow_class_one = false) : d_(d), narrow_class_one_(narrow_class_one) {
        if (d <= 1) throw std::invalid_argument("QuadField: d must be > 1");
        for (long p = 2; p * p <= d; ++p)
            if (d % (p * p) == 0) throw std::invalid_argument("QuadField: d must be squarefree");
        FieldPtr QQ = FieldSpec::rationals();
        F_ = adjoin_square_root(QQ, QQ->from_rat(Rat(d)), "Q(sqrt" + std::to_string(d) + ")", "w");
        // ascending real roots: index 0 carries sqrtd -> -sqrt(d)
        sigma2_root_ = 0;
        sigma1_root_ = 1;
        fundamental_unit_ = compute_fundamental_unit();
        unit_norm_ = static_cast<int>(norm(fundamental_unit_).get_num().get_si());
        if (narrow_class_one_ && unit_norm_ != -1)
            throw ScopeError("QuadField: narrow class number 1 asserted but the fundamental unit has norm +1");
    }

    long d() const { return d_; }
    const FieldPtr& field() const { return F_; }
    bool narrow_class_one() const { return narrow_class_one_; }
    int unit_norm() const { return unit_norm_; }
    const AlgElem& fundamental_unit() const { return fundamental_unit_; }
    size_t sigma1_root() const { return sigma1_root_; }
    size_t sigma2_root() const { return sigma2_root_; }

    AlgElem sqrt_d() const { return F_->generator(); }
    AlgElem elem(const Rat& a, const Rat& b) const { return F_->element({a, b}); }
    AlgElem from_rat(const Rat& a) const { return F_->from_rat(a); }

    AlgElem conj(const AlgElem& x) const { return F_->element({x.coeff(0), -x.coeff(1)}); }
    Rat norm(const AlgElem& x) const { return (x * conj(x)).rational_value(); }
    Rat trace(const AlgElem& x) const { return x.coeff(0) * 2; }

    // integral basis is {1, sqrtd} or {1, (1+sqrtd)/2}
    bool half_integer_basis() const { return (d_ - 1) % 4 == 0; }
    std::pair<AlgElem, AlgElem> integral_basis() const {
        if (half_integer_basis()) return {F_->one(), F_->element({Rat(1, 2), Rat(1, 2)})};
        return {F_->one(), F_->generator()};
    }

    bool is_integral(const AlgElem& x) const {
        Rat a = x.coeff(0), b = x.coeff(1);
        if (half_integer_basis()) {
            Rat two_b = b * 2, diff = a - b;
            return two_b.get_den() == 1 && diff.get_den() == 1;
        }
        return a.get_den() == 1 && b.get_den() == 1;
    }

    bool is_unit(const AlgElem& x) const {
        if (!is_integral(x)) return false;
        Rat n = norm(x);
        return n == 1 || n == -1;
    }

    bool is_totally_positive(const AlgElem& x) const {
        return embed_sign(x, sigma1_root_) > 0 && embed_sign(x, sigma2_root_) > 0;
    }

    int sign_sigma1(const AlgElem& x) const { return embed_sign(x, sigma1_root_); }
    int sign_sigma2(const AlgElem& x) const { return embed_sign(x, sigma2_root_); }

    // exact comparison sigma1(x) < sigma1(y)
    bool less_sigma1(const AlgElem& x, const AlgElem& y) const { return sign_sigma1(y - x) > 0; }

    // The canonical totally positive generator of (x): the unique totally
    // positive associate y = x * (+-1) * u^m with
    //   1 <= sigma1(y) / |Nm(y)|^(1/2) < sigma1(u)^2,
    // i.e. |Nm y| <= sigma1(y)^2 < sigma1(u)^4 |Nm y|.
    AlgElem totally_positive_generator(const AlgElem& x) const {
        if (x.is_zero()) throw std::invalid_argument("totally_positive_generator: x must be nonzero");
        if (!narrow_class_one_)
            throw ScopeError("totally_positive_generator: narrow class number 1 must be asserted");
        AlgElem y = x;
        if (sign_sigma1(y) < 0) y = -y;
        if (sign_sigma2(y) < 0) {
            if (unit_norm_ != -1)
                throw ScopeError("totally_positive_generator: no totally positive associate (config inconsistent)");
            y = y * fundamental_unit_;  // unit of norm -1 flips exactly the sigma2 sign
            if (sign_sigma2(y) < 0) y = -y;
            if (sign_sigma1(y) < 0 || sign_sigma2(y) < 0)
                throw std::logic_error("totally_positive_generator: sign fix failed");
        }
        AlgElem u2 = fundamental_unit_ * fundamental_unit_;
        if (unit_norm_ == -1 && !is_totally_positive(u2))
            throw std::logic_error("totally_positive_generator: u^2 not totally positive");
        Rat absnorm = abs(norm(y));
        // want |Nm y| <= sigma1(y)^2 < sigma1(u^2)^2 |Nm y|
        auto too_small = [&](const AlgElem& v) { return sign_sigma1(v * v - from_rat(absnorm)) < 0; };
        auto too_large = [&](const AlgElem& v) {
            return sign_sigma1(v * v - u2 * u2 * from_rat(absnorm)) >= 0;
        };
        while (too_small(y)) y = y * u2;
        while (too_large(y)) y = y / u2;
        return y;
    }

private:
    AlgElem compute_fundamental_unit() const {
        Int D = half_integer_basis() ? Int(d_) : Int(4 * d_);
        Int P0 = half_integer_basis() ? Int(1) : Int(0);
        Int Q0 = 2;
        auto cf = detail::cf_fundamental_automorph(D, P0, Q0);
        // unit = q * (P + sqrt(D))/Q + q1, with sqrt(D) = sqrt(4d) = 2w or sqrt(d) = w
        Rat sqrtD_coeff = half_integer_basis() ? Rat(1) : Rat(2);
        AlgElem omega = F_->element({Rat(cf.P) / Rat(cf.Q), sqrtD_coeff / Rat(cf.Q)});
        AlgElem u = omega * Rat(cf.q) + F_->from_rat(Rat(cf.q1));
        if (!is_unit(u)) throw std::logic_error("fundamental unit computation produced a non-unit");
        if (sign_sigma1(u) < 0) u = -u;
        if (sign_sigma1(u - F_->one()) < 0) u = u.inverse();  // ensure u > 1 under sigma1
        if (sign_sigma1(u - F_->one()) <= 0) throw std::logic_error("fundamental unit not > 1");
        return u;
    }

    long d_;
    bool narrow_class_one_;
    FieldPtr F_;
    AlgElem fundamental_unit_;
    int unit_norm_ = 0;
    size_t sigma1_root_ = 1, sigma2_root_ = 0;
};

// convenience: the fundamental unit of Q(sqrt d)
inline AlgElem fundamental_unit(long d) { return QuadField(d).fundamental_unit(); }

// ---------------------------------------------------------------------------
// Prime levels and the quadratic character.

// A degree-one prime (N) = (generator) with residue field F_q, q prime.
class FPrimeLevel {
public:
    FPrimeLevel(const QuadField& F, AlgElem generator) : F_(&F), gen_(std::move(generator)) {
        if (!F.is_integral(gen_)) throw std::invalid_argument("FPrimeLevel: generator must be integral");
        if (!F.is_totally_positive(gen_)) throw std::invalid_argument("FPrimeLevel: generator must be totally positive");
        Rat n = F.norm(gen_);
        Int q = n.get_num();
        if (q <= 1 || mpz_probab_prime_p(q.get_mpz_t(), 40) == 0)
            throw std::invalid_argument("FPrimeLevel: generator norm must be a rational prime (degree-one prime)");
        if (!q.fits_ulong_p()) throw std::invalid_argument("FPrimeLevel: residue field too large");
        q_ = q.get_ui();
        fq_ = Fq{q_};
        // generator a + b*w: sqrt(d) reduces to s = -a/b mod q (b is a unit mod q,
        // else q^2 would divide the norm)
        Rat a = gen_.coeff(0), b = gen_.coeff(1);
        std::uint64_t br = fq_.reduce(b);
        if (br == 0) throw std::invalid_argument("FPrimeLevel: generator is a rational multiple mod q");
        sqrt_d_image_ = fq_.mul(fq_.neg(fq_.reduce(a)), fq_.inv(br));
        if (fq_.mul(sqrt_d_image_, sqrt_d_image_) != fq_.reduce(Rat(F.d())))
            throw std::logic_error("FPrimeLevel: residue image of sqrt(d) inconsistent");
    }

    const QuadField& base() const { return *F_; }
    const AlgElem& generator() const { return gen_; }
    std::uint64_t q() const { return q_; }
    const Fq& fq() const { return fq_; }
    std::uint64_t sqrt_d_image() const { return sqrt_d_image_; }

    // reduction O_F -> F_q (denominators must be prime to q)
    std::uint64_t reduce(const AlgElem& x) const {
        return fq_.add(fq_.reduce(x.coeff(0)), fq_.mul(fq_.reduce(x.coeff(1)), sqrt_d_image_));
    }

    bool is_coprime(const AlgElem& x) const { return reduce(x) != 0; }

private:
    const QuadField* F_;
    AlgElem gen_;
    std::uint64_t q_ = 0;
    Fq fq_{};
    std::uint64_t sqrt_d_image_ = 0;
};

// The quadratic character of (O_F/N)^x (or the trivial one), evaluated by
// the Euler criterion in the residue field.
class EpsilonChar {
public:
    EpsilonChar() = default;
    EpsilonChar(const FPrimeLevel& level, bool nontrivial) : level_(&level), nontrivial_(nontrivial) {
        if (nontrivial && level.q() < 3)
            throw std::invalid_argument("EpsilonChar: no nontrivial quadratic character for q < 3");
    }

    bool nontrivial() const { return nontrivial_; }
    const FPrimeLevel& level() const { return *level_; }

    int operator()(const AlgElem& x) const {
        std::uint64_t r = level_->reduce(x);
        if (r == 0) throw std::domain_error("EpsilonChar: argument not coprime to the level");
        if (!nontrivial_) return 1;
        std::uint64_t e = level_->fq().pow(r, (level_->q() - 1) / 2);
        return e == 1 ? 1 : -1;
    }

    int at_residue(std::uint64_t r) const {
        r %= level_->q();
        if (r == 0) throw std::domain_error("EpsilonChar: residue not coprime to the level");
        if (!nontrivial_) return 1;
        return level_->fq().pow(r, (level_->q() - 1) / 2) == 1 ? 1 : -1;
    }

private:
    const FPrimeLevel* level_ = nullptr;
    bool nontrivial_ = false;
};

// ---------------------------------------------------------------------------
// P^1(O_F/N).

struct P1Point {
    // normalized: [x:1] for x in F_q, or [1:0]
    std::uint64_t x, y;
    bool operator==(const P1Point& o) const { return x == o.x && y == o.y; }
};

inline P1Point p1_normalize(const Fq& F, std::uint64_t x, std::uint64_t y) {
    x %= F.p;
    y %= F.p;
    if (x == 0 && y == 0) throw std::invalid_argument("p1_normalize: (0,0) is not projective");
    if (y != 0) return {F.mul(x, F.inv(y)), 1};
    return {1, 0};
}

inline std::vector<P1Point> p1_points(const FPrimeLevel& level) {
    std::vector<P1Point> pts;
    for (std::uint64_t x = 0; x < level.q(); ++x) pts.push_back({x, 1});
    pts.push_back({1, 0});
    return pts;
}

// ---------------------------------------------------------------------------
// The unit-sign compatibility gate (necessary for nonzero spaces): for every
// unit u, eps(u) must equal prod_sigma sign(sigma(u))^{k_sigma}, and (k, t)
// must be reasonable.

inline bool check_sign_condition(const QuadField& F, const std::pair<int, int>& k,
                                 const std::pair<Rat, Rat>& t, const EpsilonChar& chi) {
    if (Rat(k.first) + 2 * t.first != Rat(k.second) + 2 * t.second) return false;  // not reasonable
    for (const AlgElem& u : {-F.field()->one(), F.fundamental_unit()}) {
        int rhs = 1;
        if ((k.first % 2 != 0) && F.sign_sigma1(u) < 0) rhs = -rhs;
        if ((k.second % 2 != 0) && F.sign_sigma2(u) < 0) rhs = -rhs;
        if (chi(u) != rhs) return false;
    }
    return true;
}

}  // namespace qhmf
